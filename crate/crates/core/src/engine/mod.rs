//! Kinser inequalities: evaluation, family reductions, exhaustive bad-family
//! search and class membership.
//!
//! For `n >= 4` and sets `X_1, .., X_n`, inequality `n` reads
//!
//! ```text
//!   sum_{i=3..n} r(X_i) + r(X_1 ∪ X_2) + r(X_1 ∪ X_3 ∪ X_n) + sum_{i=4..n} r(X_2 ∪ X_{i-1} ∪ X_i)
//! <= r(X_1 ∪ X_3) + r(X_1 ∪ X_n) + sum_{i=3..n} r(X_2 ∪ X_i) + sum_{i=4..n} r(X_{i-1} ∪ X_i)
//! ```
//!
//! and for `n = 4` it is Ingleton's inequality. A family violating it is a
//! bad family.

mod corank;
mod search;

use std::fmt;

use crate::error::{MatroidError, Result};
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

pub use corank::{corank_term_report, ConstantBlock, CorankReport, CorankTerm};
pub use search::{
    dual_membership, membership, search_bad_family, search_with_stats, Determinism,
    SearchConfig, SearchSpace, SearchStats, Verdict, ALL_SUBSETS_CAP,
};

pub const MIN_INDEX: usize = 4;

/// An ordered family `X_1, .., X_n`; sets may be empty or repeated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    sets: Vec<SubsetMask>,
}

impl Family {
    pub fn new(sets: Vec<SubsetMask>) -> Result<Self> {
        if sets.len() < MIN_INDEX {
            return Err(MatroidError::Precondition(format!(
                "Kinser inequalities need n >= {MIN_INDEX} sets, got {}",
                sets.len()
            )));
        }
        Ok(Family { sets })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(vec![SubsetMask::EMPTY; n])
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    /// `X_i`, 1-based.
    pub fn x(&self, i: usize) -> SubsetMask {
        self.sets[i - 1]
    }

    fn check(&self, m: &Matroid) -> Result<()> {
        self.sets.iter().try_for_each(|&x| m.check_mask(x))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.sets.iter().enumerate() {
            write!(f, "{}X{}={:?}", if i == 0 { "" } else { " " }, i + 1, x)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Single,
    Pair,
    Triple,
}

/// One rank term of the inequality: the union of the family members listed
/// in `sets` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub side: Side,
    pub kind: TermKind,
    pub sets: Vec<usize>,
    pub mask: SubsetMask,
    pub rank: usize,
}

impl Term {
    pub fn involves(&self, i: usize) -> bool {
        self.sets.contains(&i)
    }

    /// Rendering such as `r(X1 ∪ X3 ∪ X5)`.
    pub fn symbol(&self) -> String {
        let names: Vec<String> = self.sets.iter().map(|i| format!("X{i}")).collect();
        format!("r({})", names.join(" ∪ "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityValue {
    pub lhs: usize,
    pub rhs: usize,
    pub terms: Vec<Term>,
}

impl InequalityValue {
    pub fn satisfied(&self) -> bool {
        self.lhs <= self.rhs
    }

    /// `lhs - rhs`; positive for a bad family.
    pub fn margin(&self) -> i64 {
        self.lhs as i64 - self.rhs as i64
    }

    pub fn side(&self, side: Side) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(move |t| t.side == side)
    }
}

/// The index lists of every term, LHS first, in the order of the defining
/// sums.
pub(crate) fn term_shapes(n: usize) -> Vec<(Side, Vec<usize>)> {
    use Side::{Lhs, Rhs};
    let mut out = Vec::with_capacity(4 * n - 6);
    out.extend((3..=n).map(|i| (Lhs, vec![i])));
    out.push((Lhs, vec![1, 2]));
    out.push((Lhs, vec![1, 3, n]));
    out.extend((4..=n).map(|i| (Lhs, vec![2, i - 1, i])));
    out.push((Rhs, vec![1, 3]));
    out.push((Rhs, vec![1, n]));
    out.extend((3..=n).map(|i| (Rhs, vec![2, i])));
    out.extend((4..=n).map(|i| (Rhs, vec![i - 1, i])));
    out
}

/// Evaluates inequality `fam.n()` on `m`, term by term.
pub fn evaluate(m: &Matroid, fam: &Family) -> Result<InequalityValue> {
    fam.check(m)?;
    let mut value = InequalityValue {
        lhs: 0,
        rhs: 0,
        terms: Vec::new(),
    };
    for (side, sets) in term_shapes(fam.n()) {
        let mask = sets.iter().fold(SubsetMask::EMPTY, |acc, &i| acc | fam.x(i));
        let rank = m.r(mask);
        match side {
            Side::Lhs => value.lhs += rank,
            Side::Rhs => value.rhs += rank,
        }
        let kind = match sets.len() {
            1 => TermKind::Single,
            2 => TermKind::Pair,
            _ => TermKind::Triple,
        };
        value.terms.push(Term {
            side,
            kind,
            sets,
            mask,
            rank,
        });
    }
    Ok(value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReduceMode {
    /// `X_i -> cl(X_i)`.
    Closure,
    /// `X_i -> ` the greedy basis of `X_i` taken in increasing element order,
    /// which is its lexicographically least maximal independent subset.
    Basis,
}

pub fn reduce_family(m: &Matroid, fam: &Family, mode: ReduceMode) -> Result<Family> {
    fam.check(m)?;
    let sets = fam
        .sets
        .iter()
        .map(|&x| match mode {
            ReduceMode::Closure => m.cl(x),
            ReduceMode::Basis => x.elements().fold(SubsetMask::EMPTY, |b, e| {
                let grown = b.insert(e);
                if m.is_independent(grown) {
                    grown
                } else {
                    b
                }
            }),
        })
        .collect();
    Ok(Family { sets })
}

/// The `n + 1` family with `X_{n+1} = X_n`, which has the same margin.
pub fn extend_family(fam: &Family) -> Family {
    let mut sets = fam.sets.clone();
    sets.push(*sets.last().expect("families are non-empty"));
    Family { sets }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalKind {
    /// `(V1, .., Vr)` of a Kinser layout.
    Kinser,
    /// The four-set family of a relaxed spike built from the even
    /// transversal `Z`.
    Spike(SubsetMask),
}

/// Builds the standard bad family for a laid-out matroid.
pub fn canonical_family(m: &Matroid, kind: CanonicalKind) -> Result<Family> {
    let layout = m.layout().ok_or_else(|| {
        MatroidError::Precondition(format!("{} carries no part layout", m.label()))
    })?;
    let missing = |name: &str| MatroidError::Precondition(format!("layout has no part `{name}`"));
    match kind {
        CanonicalKind::Kinser => {
            let sets: Vec<SubsetMask> = (1..)
                .map_while(|i| layout.get(&format!("V{i}")))
                .collect();
            if sets.is_empty() {
                return Err(missing("V1"));
            }
            Family::new(sets)
        }
        CanonicalKind::Spike(z) => {
            m.check_mask(z)?;
            let a_set = layout.get("A").ok_or_else(|| missing("A"))?;
            let b_set = layout.get("B").ok_or_else(|| missing("B"))?;
            let r = a_set.len();
            let mut x3 = SubsetMask::EMPTY;
            let mut x4 = SubsetMask::EMPTY;
            let mut b_count = 0;
            for i in 1..=r {
                let a = layout.get(&format!("a{i}")).ok_or_else(|| missing("a_i"))?;
                let b = layout.get(&format!("b{i}")).ok_or_else(|| missing("b_i"))?;
                match (a.is_subset_of(z), b.is_subset_of(z)) {
                    (true, false) => x3 = x3 | b,
                    (false, true) => {
                        x4 = x4 | a;
                        b_count += 1;
                    }
                    _ => {
                        return Err(MatroidError::Precondition(format!(
                            "{z:?} does not meet leg {i} in exactly one element"
                        )))
                    }
                }
            }
            let (x1, x2) = (z & a_set, z & b_set);
            if b_count % 2 == 1 || z != x1 | x2 || x1.is_empty() || x2.is_empty() {
                return Err(MatroidError::Precondition(format!(
                    "{z:?} must be an even transversal meeting both A and B"
                )));
            }
            Family::new(vec![x1, x2, x3, x4])
        }
    }
}

/// A bad family bound to a matroid by content fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadFamilyCertificate {
    pub label: String,
    pub fingerprint: String,
    pub family: Family,
    pub lhs: usize,
    pub rhs: usize,
}

impl BadFamilyCertificate {
    /// Evaluates `fam` on `m`; `None` unless it is a violation.
    pub fn issue(m: &Matroid, fam: Family) -> Result<Option<Self>> {
        let value = evaluate(m, &fam)?;
        Ok((!value.satisfied()).then(|| BadFamilyCertificate {
            label: m.label().to_string(),
            fingerprint: m.fingerprint(),
            family: fam,
            lhs: value.lhs,
            rhs: value.rhs,
        }))
    }

    pub fn margin(&self) -> i64 {
        self.lhs as i64 - self.rhs as i64
    }

    /// Re-evaluates against `m`, failing unless the fingerprint and both
    /// sides match and the family is still bad.
    pub fn verify(&self, m: &Matroid) -> Result<()> {
        let stale = |msg: String| Err(MatroidError::StaleCertificate(msg));
        if self.fingerprint != m.fingerprint() {
            return stale(format!(
                "fingerprint {} does not match matroid {}",
                self.fingerprint,
                m.fingerprint()
            ));
        }
        let value = evaluate(m, &self.family)?;
        if (value.lhs, value.rhs) != (self.lhs, self.rhs) {
            return stale(format!(
                "recorded lhs {} rhs {}, re-evaluated lhs {} rhs {}",
                self.lhs, self.rhs, value.lhs, value.rhs
            ));
        }
        if value.satisfied() {
            return stale(format!("family satisfies the inequality ({} <= {})", value.lhs, value.rhs));
        }
        Ok(())
    }
}
