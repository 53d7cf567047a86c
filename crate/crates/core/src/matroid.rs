//! The rank-table matroid and the predicates derived from it.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::axioms::{self, check_rank, check_rank_sampled, RankTable, EXHAUSTIVE_CAP};
use crate::error::{Axiom, MatroidError, Result, Violation};
use crate::layout::PartLayout;
use crate::mask::{SubsetMask, MAX_GROUND};

/// Number of local submodularity instances sampled when a table is too large
/// for the exhaustive scan.
const SAMPLED_CHECKS: usize = 1 << 20;

/// A matroid on `{0, .., m-1}` stored as its full rank table.
#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    m: usize,
    rank: usize,
    table: Vec<u8>,
    label: String,
    layout: Option<PartLayout>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("label", &self.label)
            .field("m", &self.m)
            .field("rank", &self.rank)
            .finish_non_exhaustive()
    }
}

/// Flags describing how a set sits inside a matroid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SetClass {
    pub independent: bool,
    pub dependent: bool,
    pub spanning: bool,
    pub basis: bool,
    pub flat: bool,
    pub circuit: bool,
    pub hyperplane: bool,
    pub circuit_hyperplane: bool,
    pub loop_: bool,
    pub coloop: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnumKind {
    Flats,
    Circuits,
    Bases,
    CircuitHyperplanes,
    Hyperplanes,
}

impl std::str::FromStr for EnumKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "flats" => EnumKind::Flats,
            "circuits" => EnumKind::Circuits,
            "bases" => EnumKind::Bases,
            "circuit_hyperplanes" | "circuit-hyperplanes" => EnumKind::CircuitHyperplanes,
            "hyperplanes" => EnumKind::Hyperplanes,
            other => return Err(format!("unknown enumeration kind `{other}`")),
        })
    }
}

impl Matroid {
    /// Builds a matroid from a rank table, validating R1-R3. Tables on more
    /// than 16 elements are validated on a deterministic sample of R3
    /// instances.
    pub fn from_table(m: usize, table: Vec<u8>, label: impl Into<String>) -> Result<Self> {
        let table = RankTable::new(m, table)?.into_values();
        let verdict = if m <= EXHAUSTIVE_CAP {
            check_rank(m, &table)
        } else {
            check_rank_sampled(m, &table, SAMPLED_CHECKS)
        };
        verdict.map_err(MatroidError::NotAMatroid)?;
        Ok(Self::from_table_unchecked(m, table, label))
    }

    /// Skips validation; callers must guarantee the table is a rank function.
    pub(crate) fn from_table_unchecked(m: usize, table: Vec<u8>, label: impl Into<String>) -> Self {
        debug_assert_eq!(table.len(), 1 << m);
        let rank = table[(1usize << m) - 1] as usize;
        Matroid {
            m,
            rank,
            table,
            label: label.into(),
            layout: None,
        }
    }

    /// Builds a table by evaluating `f` on every subset, then validates it.
    pub fn from_rank_fn(
        m: usize,
        label: impl Into<String>,
        f: impl FnMut(SubsetMask) -> u8,
    ) -> Result<Self> {
        check_ground(m)?;
        let table = (0..1u32 << m).map(SubsetMask).map(f).collect();
        Self::from_table(m, table, label)
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    /// `r(E)`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> SubsetMask {
        SubsetMask::full(self.m)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn layout(&self) -> Option<&PartLayout> {
        self.layout.as_ref()
    }

    pub fn with_layout(mut self, layout: Option<PartLayout>) -> Self {
        self.layout = layout;
        self
    }

    /// Looks up a named part of the layout.
    pub fn part(&self, name: &str) -> Option<SubsetMask> {
        self.layout.as_ref()?.get(name)
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn rank_table(&self) -> RankTable {
        RankTable::new(self.m, self.table.clone()).expect("matroid tables are well formed")
    }

    /// True if the two matroids have the same ground size and rank function.
    pub fn same_table(&self, other: &Matroid) -> bool {
        self.m == other.m && self.table == other.table
    }

    pub fn check_mask(&self, x: SubsetMask) -> Result<()> {
        if x.fits(self.m) {
            Ok(())
        } else {
            Err(MatroidError::InvalidSubset { mask: x, m: self.m })
        }
    }

    pub fn check_element(&self, e: usize) -> Result<()> {
        if e < self.m {
            Ok(())
        } else {
            Err(MatroidError::ElementOutOfRange {
                element: e,
                m: self.m,
            })
        }
    }

    /// Rank of `x`, or an error if `x` leaves the ground set.
    pub fn rank_of(&self, x: SubsetMask) -> Result<usize> {
        self.check_mask(x)?;
        Ok(self.r(x))
    }

    /// Unchecked rank lookup for hot loops.
    #[inline(always)]
    pub fn r(&self, x: SubsetMask) -> usize {
        self.table[x.index()] as usize
    }

    pub fn closure(&self, x: SubsetMask) -> Result<SubsetMask> {
        self.check_mask(x)?;
        Ok(self.cl(x))
    }

    #[inline]
    pub(crate) fn cl(&self, x: SubsetMask) -> SubsetMask {
        let rx = self.table[x.index()];
        let mut out = x;
        for e in x.complement(self.m).elements() {
            if self.table[x.insert(e).index()] == rx {
                out = out.insert(e);
            }
        }
        out
    }

    #[inline]
    pub fn is_independent(&self, x: SubsetMask) -> bool {
        self.r(x) == x.len()
    }

    #[inline]
    pub fn is_flat(&self, x: SubsetMask) -> bool {
        let rx = self.table[x.index()];
        x.complement(self.m)
            .elements()
            .all(|e| self.table[x.insert(e).index()] > rx)
    }

    #[inline]
    pub fn is_circuit(&self, x: SubsetMask) -> bool {
        axioms::is_circuit_in(&self.table, x.index())
    }

    pub fn classify(&self, x: SubsetMask) -> Result<SetClass> {
        self.check_mask(x)?;
        let rx = self.r(x);
        let size = x.len();
        let independent = rx == size;
        let spanning = rx == self.rank;
        let flat = self.is_flat(x);
        let circuit = self.is_circuit(x);
        let hyperplane = flat && self.rank > 0 && rx == self.rank - 1;
        let single = size == 1;
        let coloop = single && {
            let e = x.elements().next().unwrap();
            self.r(self.ground().remove(e)) + 1 == self.rank
        };
        Ok(SetClass {
            independent,
            dependent: !independent,
            spanning,
            basis: independent && spanning,
            flat,
            circuit,
            hyperplane,
            circuit_hyperplane: circuit && hyperplane,
            loop_: single && rx == 0,
            coloop,
        })
    }

    /// All sets of the requested kind, ascending by mask value.
    pub fn enumerate(&self, kind: EnumKind) -> Vec<SubsetMask> {
        let all = (0..1u32 << self.m).map(SubsetMask);
        match kind {
            EnumKind::Flats => all.filter(|&x| self.is_flat(x)).collect(),
            EnumKind::Bases => all
                .filter(|&x| x.len() == self.rank && self.is_independent(x))
                .collect(),
            EnumKind::Circuits => self.circuits(),
            EnumKind::Hyperplanes => all
                .filter(|&x| self.rank > 0 && self.r(x) + 1 == self.rank && self.is_flat(x))
                .collect(),
            EnumKind::CircuitHyperplanes => all
                .filter(|&x| {
                    self.rank > 0
                        && x.len() == self.rank
                        && self.r(x) + 1 == self.rank
                        && self.is_flat(x)
                        && self.is_circuit(x)
                })
                .collect(),
        }
    }

    /// Circuits by minimality-by-removal, visiting sets in order of size and
    /// skipping supersets of circuits already found.
    fn circuits(&self) -> Vec<SubsetMask> {
        let n = 1usize << self.m;
        let mut has_circuit = vec![false; n];
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); self.m + 1];
        for x in 0..n as u32 {
            by_size[x.count_ones() as usize].push(x);
        }
        let mut found = Vec::new();
        for level in &by_size[1..] {
            for &x in level {
                let xi = x as usize;
                let mut rest = x;
                let mut covered = false;
                while rest != 0 {
                    let a = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if has_circuit[(x & !a) as usize] {
                        covered = true;
                        break;
                    }
                }
                if covered {
                    has_circuit[xi] = true;
                    continue;
                }
                // Every proper subset is independent here, so `x` is a circuit
                // exactly when it is dependent.
                if (self.table[xi] as u32) < x.count_ones() {
                    has_circuit[xi] = true;
                    found.push(SubsetMask(x));
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// Stable content digest of the ground size and rank table.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.m as u32).to_le_bytes());
        h.update(&self.table);
        hex::encode(&h.finalize()[..8])
    }
}

/// Builds the rank-`r` matroid whose non-spanning circuits are `circuits`:
/// a set is independent when it has at most `r` elements and contains none
/// of them.
pub fn matroid_from_circuits(
    m: usize,
    r: usize,
    circuits: &[SubsetMask],
    label: impl Into<String>,
) -> Result<Matroid> {
    check_ground(m)?;
    if r > m {
        return Err(MatroidError::Precondition(format!(
            "rank {r} exceeds ground size {m}"
        )));
    }
    for &c in circuits {
        if !c.fits(m) {
            return Err(MatroidError::InvalidSubset { mask: c, m });
        }
        if c.is_empty() {
            return Err(MatroidError::NotAMatroid(Violation::new(
                Axiom::C1,
                vec![c],
                "empty set listed as a circuit",
            )));
        }
        if c.len() > r + 1 {
            return Err(MatroidError::Precondition(format!(
                "circuit {c:?} has more than r + 1 = {} elements",
                r + 1
            )));
        }
    }
    for (i, &c) in circuits.iter().enumerate() {
        if let Some(&d) = circuits[i + 1..]
            .iter()
            .find(|&&d| c.is_subset_of(d) || d.is_subset_of(c))
        {
            return Err(MatroidError::NotAMatroid(Violation::new(
                Axiom::C2,
                vec![c, d],
                "circuit list is not an antichain",
            )));
        }
    }
    let mut indep = axioms::independence_from_circuits(m, circuits);
    for (x, flag) in indep.iter_mut().enumerate() {
        if x.count_ones() as usize > r {
            *flag = false;
        }
    }
    let table = axioms::rank_from_independence(m, &indep);
    Matroid::from_table(m, table, label)
}

pub(crate) fn check_ground(m: usize) -> Result<()> {
    if m == 0 {
        Err(MatroidError::EmptyGround)
    } else if m > MAX_GROUND {
        Err(MatroidError::GroundTooLarge(m))
    } else {
        Ok(())
    }
}
