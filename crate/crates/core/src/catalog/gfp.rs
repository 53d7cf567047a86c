//! Linear matroids over prime fields.

use crate::error::{MatroidError, Result};
use crate::mask::MAX_GROUND;
use crate::matroid::Matroid;

/// A matrix over GF(p), row-major, entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGFp {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl MatrixGFp {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(MatroidError::NotPrime(p));
        }
        if entries.len() != rows * cols {
            return Err(MatroidError::Precondition(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&v| v >= p) {
            return Err(MatroidError::Precondition(format!(
                "entry {bad} is not a residue mod {p}"
            )));
        }
        Ok(MatrixGFp {
            p,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatroidError::Precondition("ragged matrix rows".into()));
        }
        Self::new(p, rows.len(), cols, rows.concat())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.cols + col]
    }

    fn column(&self, col: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, col) as u64).collect()
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Row-echelon basis of a column span, grown one vector at a time.
#[derive(Clone)]
struct Echelon {
    p: u64,
    basis: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    /// Adds `v` to the span; returns whether the dimension grew.
    fn push(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (pivot, b) in &self.basis {
            let c = v[*pivot];
            if c != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + (p - c) * bi) % p;
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inverse_mod(v[pivot], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        // keep the basis fully reduced so that pivots stay unique
        for (_, b) in self.basis.iter_mut() {
            let c = b[pivot];
            if c != 0 {
                for (bi, vi) in b.iter_mut().zip(&v) {
                    *bi = (*bi + (p - c) * vi) % p;
                }
            }
        }
        self.basis.push((pivot, v));
        true
    }
}

/// Column matroid of `a`: `r(X)` is the rank over GF(p) of the columns in `X`.
pub fn from_matrix(a: &MatrixGFp) -> Result<Matroid> {
    let m = a.cols();
    if m == 0 {
        return Err(MatroidError::EmptyGround);
    }
    if m > MAX_GROUND {
        return Err(MatroidError::GroundTooLarge(m));
    }
    let columns: Vec<Vec<u64>> = (0..m).map(|c| a.column(c)).collect();
    let mut table = vec![0u8; 1 << m];
    // Depth-first over subsets, adding elements in increasing order, so each
    // set extends the echelon form of its parent.
    fn walk(
        set: u32,
        next: usize,
        ech: &Echelon,
        columns: &[Vec<u64>],
        table: &mut [u8],
    ) {
        for e in next..columns.len() {
            let mut child = ech.clone();
            child.push(columns[e].clone());
            let x = set | 1 << e;
            table[x as usize] = child.basis.len() as u8;
            walk(x, e + 1, &child, columns, table);
        }
    }
    let root = Echelon {
        p: a.p() as u64,
        basis: Vec::new(),
    };
    walk(0, 0, &root, &columns, &mut table);
    Matroid::from_table(m, table, format!("GF({})-matrix", a.p()))
}

/// The 3x7 matrix whose GF(2) column matroid is the Fano plane and whose
/// GF(3) column matroid is the non-Fano matroid.
pub fn fano_matrix(p: u32) -> MatrixGFp {
    MatrixGFp::from_rows(
        p,
        &[
            vec![1, 0, 0, 1, 1, 0, 1],
            vec![0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 1],
        ],
    )
    .expect("fixed matrix is valid")
}

/// `(F7, F7^-)`, both from [`fano_matrix`].
pub fn fano_pair() -> (Matroid, Matroid) {
    let f7 = from_matrix(&fano_matrix(2)).expect("Fano matrix").with_label("F7");
    let f7m = from_matrix(&fano_matrix(3))
        .expect("non-Fano matrix")
        .with_label("F7-");
    (f7, f7m)
}
