//! Exhaustive checks of the rank, closure, circuit and independence axiom
//! systems.
//!
//! The rank and closure scans are local: they only compare a set with its
//! one- and two-element extensions. Together with `r(∅) = 0` and unit
//! increments, local submodularity implies the global form of R3, so the
//! scans are `O(2^m m^2)` rather than quadratic in `2^m`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Axiom, MatroidError, Result, Violation};
use crate::mask::{SubsetMask, MAX_GROUND};

/// Largest ground set for which the exhaustive axiom scans are allowed.
pub const EXHAUSTIVE_CAP: usize = 16;

/// A rank value for every subset of a ground set of size `m`, indexed by mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankTable {
    m: usize,
    values: Vec<u8>,
}

impl RankTable {
    pub fn new(m: usize, values: Vec<u8>) -> Result<Self> {
        if m == 0 {
            return Err(MatroidError::EmptyGround);
        }
        if m > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(m));
        }
        let expected = 1usize << m;
        if values.len() != expected {
            return Err(MatroidError::TableLength {
                got: values.len(),
                expected,
            });
        }
        Ok(RankTable { m, values })
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }

    #[inline]
    pub fn get(&self, x: SubsetMask) -> u8 {
        self.values[x.index()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomSystem {
    Rank,
    Closure,
    Circuits,
    Independence,
}

/// What an axiom check runs against.
#[derive(Clone, Copy, Debug)]
pub enum AxiomInput<'a> {
    Table(&'a RankTable),
    Circuits {
        m: usize,
        circuits: &'a [SubsetMask],
    },
}

/// Checks one axiom system exhaustively. The outer `Result` reports inputs
/// that cannot be checked (size cap, malformed masks); the inner one is the
/// verdict.
pub fn validate_axioms(
    input: AxiomInput<'_>,
    which: AxiomSystem,
) -> Result<std::result::Result<(), Violation>> {
    let m = match input {
        AxiomInput::Table(t) => t.m,
        AxiomInput::Circuits { m, .. } => m,
    };
    if m == 0 {
        return Err(MatroidError::EmptyGround);
    }
    if m > EXHAUSTIVE_CAP {
        return Err(MatroidError::SizeCap(format!(
            "exhaustive axiom checks are limited to ground sets of at most {EXHAUSTIVE_CAP} elements (got {m})"
        )));
    }
    if let AxiomInput::Circuits { circuits, .. } = input {
        if let Some(c) = circuits.iter().find(|c| !c.fits(m)) {
            return Err(MatroidError::InvalidSubset { mask: *c, m });
        }
    }

    Ok(match (input, which) {
        (AxiomInput::Table(t), AxiomSystem::Rank) => check_rank(m, &t.values),
        (AxiomInput::Table(t), AxiomSystem::Closure) => {
            check_closure_operator(m, &closure_table(m, &t.values))
        }
        (AxiomInput::Table(t), AxiomSystem::Independence) => {
            check_independence(m, &independence_from_table(&t.values))
        }
        (AxiomInput::Table(t), AxiomSystem::Circuits) => {
            check_circuits(m, &circuits_from_table(m, &t.values))
        }
        (AxiomInput::Circuits { circuits, .. }, AxiomSystem::Circuits) => {
            check_circuits(m, circuits)
        }
        (AxiomInput::Circuits { circuits, .. }, other) => {
            let indep = independence_from_circuits(m, circuits);
            match other {
                AxiomSystem::Independence => check_independence(m, &indep),
                AxiomSystem::Rank => check_rank(m, &rank_from_independence(m, &indep)),
                AxiomSystem::Closure => {
                    let table = rank_from_independence(m, &indep);
                    check_closure_operator(m, &closure_table(m, &table))
                }
                AxiomSystem::Circuits => unreachable!(),
            }
        }
    })
}

/// R1 over every set, then R2 and R3 in their local forms.
pub fn check_rank(m: usize, table: &[u8]) -> std::result::Result<(), Violation> {
    let n = 1usize << m;
    for x in 0..n {
        if table[x] as u32 > x.count_ones() {
            return Err(Violation::new(
                Axiom::R1,
                vec![SubsetMask(x as u32)],
                format!("rank {} exceeds cardinality {}", table[x], x.count_ones()),
            ));
        }
    }
    check_unit_increase(m, table)?;
    for x in 0..n {
        let rx = table[x] as i32;
        let free = !x & (n - 1);
        let mut rest = free;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let xa = x | 1 << a;
            let mut later = rest;
            while later != 0 {
                let b = later.trailing_zeros() as usize;
                later &= later - 1;
                let xb = x | 1 << b;
                let xab = xa | 1 << b;
                if table[xab] as i32 + rx > table[xa] as i32 + table[xb] as i32 {
                    return Err(Violation::new(
                        Axiom::R3,
                        vec![SubsetMask(xa as u32), SubsetMask(xb as u32)],
                        "r(X∪Y) + r(X∩Y) > r(X) + r(Y)",
                    ));
                }
            }
        }
    }
    Ok(())
}

fn check_unit_increase(m: usize, table: &[u8]) -> std::result::Result<(), Violation> {
    let n = 1usize << m;
    for x in 0..n {
        for a in 0..m {
            if x >> a & 1 == 1 {
                continue;
            }
            let xa = x | 1 << a;
            let (rx, rxa) = (table[x], table[xa]);
            if rxa < rx {
                return Err(Violation::new(
                    Axiom::R2,
                    vec![SubsetMask(x as u32), SubsetMask(xa as u32)],
                    format!("rank drops from {rx} to {rxa} on a superset"),
                ));
            }
            if rxa > rx + 1 {
                let single = SubsetMask::singleton(a);
                return Err(if table[1 << a] > 1 {
                    Violation::new(Axiom::R1, vec![single], "singleton of rank above 1")
                } else {
                    Violation::new(
                        Axiom::R3,
                        vec![SubsetMask(x as u32), single],
                        "adding one element raised the rank by more than one",
                    )
                });
            }
        }
    }
    Ok(())
}

/// Validation used at construction above [`EXHAUSTIVE_CAP`]: R1 and the unit
/// increase condition everywhere, local submodularity on a fixed-seed sample.
pub fn check_rank_sampled(
    m: usize,
    table: &[u8],
    samples: usize,
) -> std::result::Result<(), Violation> {
    let n = 1usize << m;
    for x in 0..n {
        if table[x] as u32 > x.count_ones() {
            return Err(Violation::new(
                Axiom::R1,
                vec![SubsetMask(x as u32)],
                "rank exceeds cardinality",
            ));
        }
    }
    check_unit_increase(m, table)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b696e73);
    for _ in 0..samples {
        let x = rng.gen_range(0..n);
        let a = rng.gen_range(0..m);
        let b = rng.gen_range(0..m);
        if a == b || x >> a & 1 == 1 || x >> b & 1 == 1 {
            continue;
        }
        let (xa, xb) = (x | 1 << a, x | 1 << b);
        if table[xa | xb] as i32 + table[x] as i32 > table[xa] as i32 + table[xb] as i32 {
            return Err(Violation::new(
                Axiom::R3,
                vec![SubsetMask(xa as u32), SubsetMask(xb as u32)],
                "r(X∪Y) + r(X∩Y) > r(X) + r(Y)",
            ));
        }
    }
    Ok(())
}

pub(crate) fn closure_table(m: usize, table: &[u8]) -> Vec<u32> {
    let n = 1usize << m;
    (0..n)
        .map(|x| {
            let rx = table[x];
            let mut cl = x as u32;
            for e in 0..m {
                if x >> e & 1 == 0 && table[x | 1 << e] == rx {
                    cl |= 1 << e;
                }
            }
            cl
        })
        .collect()
}

/// CL1-CL4 for an arbitrary closure operator given as a table.
pub fn check_closure_operator(m: usize, cl: &[u32]) -> std::result::Result<(), Violation> {
    let n = 1usize << m;
    for x in 0..n {
        let c = cl[x] as usize;
        if x & !c != 0 {
            return Err(Violation::new(
                Axiom::CL1,
                vec![SubsetMask(x as u32)],
                "set not contained in its closure",
            ));
        }
    }
    for x in 0..n {
        for a in 0..m {
            let xa = x | 1 << a;
            if cl[x] & !cl[xa] != 0 {
                return Err(Violation::new(
                    Axiom::CL2,
                    vec![SubsetMask(x as u32), SubsetMask(xa as u32)],
                    "closure not monotone",
                ));
            }
        }
    }
    for x in 0..n {
        let c = cl[x] as usize;
        if cl[c] != cl[x] {
            return Err(Violation::new(
                Axiom::CL3,
                vec![SubsetMask(x as u32)],
                "closure not idempotent",
            ));
        }
    }
    for x in 0..n {
        for e in 0..m {
            if x >> e & 1 == 1 {
                continue;
            }
            let gained = cl[x | 1 << e] & !cl[x];
            let mut rest = gained;
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if cl[x | 1 << y] >> e & 1 == 0 {
                    return Err(Violation::new(
                        Axiom::CL4,
                        vec![
                            SubsetMask(x as u32),
                            SubsetMask::singleton(e),
                            SubsetMask::singleton(y),
                        ],
                        "exchange property fails",
                    ));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn independence_from_table(table: &[u8]) -> Vec<bool> {
    table
        .iter()
        .enumerate()
        .map(|(x, &r)| r as u32 == x.count_ones())
        .collect()
}

/// Sets containing none of the given circuits.
pub(crate) fn independence_from_circuits(m: usize, circuits: &[SubsetMask]) -> Vec<bool> {
    let dep = dependent_closure(m, circuits);
    dep.into_iter().map(|d| !d).collect()
}

/// `dep[X]` is true when some listed set is contained in `X`.
pub(crate) fn dependent_closure(m: usize, sets: &[SubsetMask]) -> Vec<bool> {
    let n = 1usize << m;
    let mut dep = vec![false; n];
    for c in sets {
        dep[c.index()] = true;
    }
    for x in 0..n {
        if dep[x] {
            continue;
        }
        let mut rest = x;
        while rest != 0 {
            let a = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if dep[x & !a] {
                dep[x] = true;
                break;
            }
        }
    }
    dep
}

/// Size of the largest independent subset of every set.
pub(crate) fn rank_from_independence(m: usize, indep: &[bool]) -> Vec<u8> {
    let n = 1usize << m;
    let mut rank = vec![0u8; n];
    for x in 1..n {
        rank[x] = if indep[x] {
            x.count_ones() as u8
        } else {
            let mut best = 0;
            let mut rest = x;
            while rest != 0 {
                let a = rest & rest.wrapping_neg();
                rest &= rest - 1;
                best = best.max(rank[x & !a]);
            }
            best
        };
    }
    rank
}

/// I1-I3. I3 is checked through the equivalent statement that every
/// independent set `I` is a largest independent subset of `E - S(I)`,
/// where `S(I)` are the elements that extend `I`.
pub fn check_independence(m: usize, indep: &[bool]) -> std::result::Result<(), Violation> {
    let n = 1usize << m;
    if !indep[0] {
        return Err(Violation::new(
            Axiom::I1,
            vec![SubsetMask::EMPTY],
            "empty set is dependent",
        ));
    }
    for x in 1..n {
        if !indep[x] {
            continue;
        }
        for a in 0..m {
            if x >> a & 1 == 1 && !indep[x & !(1 << a)] {
                return Err(Violation::new(
                    Axiom::I2,
                    vec![SubsetMask(x as u32), SubsetMask((x & !(1 << a)) as u32)],
                    "subset of an independent set is dependent",
                ));
            }
        }
    }
    let rho = rank_from_independence(m, indep);
    for i in 0..n {
        if !indep[i] {
            continue;
        }
        let mut extend = 0usize;
        for e in 0..m {
            if i >> e & 1 == 0 && indep[i | 1 << e] {
                extend |= 1 << e;
            }
        }
        let y = (n - 1) & !extend;
        let size = i.count_ones() as u8;
        if rho[y] > size {
            let mut j = y;
            while !indep[j] {
                let mut rest = j;
                while rest != 0 {
                    let a = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if rho[j & !a] == rho[j] {
                        j &= !a;
                        break;
                    }
                }
            }
            while j.count_ones() > size as u32 + 1 {
                j &= j - 1;
            }
            return Err(Violation::new(
                Axiom::I3,
                vec![SubsetMask(i as u32), SubsetMask(j as u32)],
                "no element of the larger set extends the smaller",
            ));
        }
    }
    Ok(())
}

pub(crate) fn circuits_from_table(m: usize, table: &[u8]) -> Vec<SubsetMask> {
    let n = 1usize << m;
    (1..n)
        .filter(|&x| is_circuit_in(table, x))
        .map(|x| SubsetMask(x as u32))
        .collect()
}

#[inline]
pub(crate) fn is_circuit_in(table: &[u8], x: usize) -> bool {
    let size = x.count_ones();
    if size == 0 || table[x] as u32 != size - 1 {
        return false;
    }
    let mut rest = x;
    while rest != 0 {
        let a = rest & rest.wrapping_neg();
        rest &= rest - 1;
        if table[x & !a] as u32 != size - 1 {
            return false;
        }
    }
    true
}

/// C1-C3 on an explicit circuit list.
pub fn check_circuits(m: usize, circuits: &[SubsetMask]) -> std::result::Result<(), Violation> {
    if circuits.iter().any(|c| c.is_empty()) {
        return Err(Violation::new(
            Axiom::C1,
            vec![SubsetMask::EMPTY],
            "empty set listed as a circuit",
        ));
    }
    for (i, &c) in circuits.iter().enumerate() {
        for &d in &circuits[i + 1..] {
            if c.is_subset_of(d) || d.is_subset_of(c) {
                return Err(Violation::new(
                    Axiom::C2,
                    vec![c, d],
                    "one circuit contains another",
                ));
            }
        }
    }
    let dep = dependent_closure(m, circuits);
    for (i, &c) in circuits.iter().enumerate() {
        for &d in &circuits[i + 1..] {
            let u = c | d;
            for e in (c & d).elements() {
                if !dep[u.remove(e).index()] {
                    return Err(Violation::new(
                        Axiom::C3,
                        vec![c, d, SubsetMask::singleton(e)],
                        "(C ∪ D) - e contains no circuit",
                    ));
                }
            }
        }
    }
    Ok(())
}
