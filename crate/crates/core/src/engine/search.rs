//! Exhaustive bad-family search.
//!
//! Write `C = (X_3, .., X_n)` for the chain. The margin `lhs - rhs` splits as
//!
//! ```text
//! c(C) + f1(X_1) + f2(X_2) + r(X_1 ∪ X_2)
//! c(C)  = sum_{i>=3} r(X_i) - sum_{i>=4} r(X_{i-1} ∪ X_i)
//! f1(X) = r(X ∪ X_3 ∪ X_n) - r(X ∪ X_3) - r(X ∪ X_n)
//! f2(X) = sum_{i>=4} r(X ∪ X_{i-1} ∪ X_i) - sum_{i>=3} r(X ∪ X_i)
//! ```
//!
//! so for a fixed chain the search only has to pair up `X_1` and `X_2`
//! candidates. Since `r(X_1 ∪ X_2) <= r(X_1) + r(X_2)`, the quantities
//! `g1 = f1 + r(X_1)` and `g2 = f2 + r(X_2)` bound the margin from above.
//! Candidates are visited in decreasing `g` order and the scan stops as soon
//! as the bound shows no violation is left.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use super::{BadFamilyCertificate, Family, MIN_INDEX};
use crate::error::{MatroidError, Result};
use crate::mask::SubsetMask;
use crate::matroid::{EnumKind, Matroid};
use crate::transforms::dual;

/// Largest ground set for which the all-subsets space may be searched.
pub const ALL_SUBSETS_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchSpace {
    Flats,
    AllSubsets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Determinism {
    /// The lexicographically least violating tuple.
    LexFirst,
    /// The first violation found.
    Any,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchConfig {
    pub space: SearchSpace,
    pub determinism: Determinism,
    pub symmetry_pruning: bool,
    /// Worker threads; `1` searches on the calling thread.
    pub parallel_width: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            space: SearchSpace::Flats,
            determinism: Determinism::LexFirst,
            symmetry_pruning: true,
            parallel_width: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SearchStats {
    /// Candidate sets per position.
    pub candidates: u64,
    /// Chains `(X_3, .., X_n)` visited after symmetry pruning.
    pub chains: u64,
    /// Full tuples whose margin was evaluated.
    pub tuples_examined: u64,
    /// Rank-table lookups.
    pub rank_queries: u64,
}

impl SearchStats {
    fn add(mut self, other: SearchStats) -> SearchStats {
        self.chains += other.chains;
        self.tuples_examined += other.tuples_examined;
        self.rank_queries += other.rank_queries;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    InClass { n: usize, stats: SearchStats },
    NotInClass {
        certificate: BadFamilyCertificate,
        stats: SearchStats,
    },
}

impl Verdict {
    pub fn in_class(&self) -> bool {
        matches!(self, Verdict::InClass { .. })
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            Verdict::InClass { stats, .. } | Verdict::NotInClass { stats, .. } => *stats,
        }
    }

    pub fn certificate(&self) -> Option<&BadFamilyCertificate> {
        match self {
            Verdict::InClass { .. } => None,
            Verdict::NotInClass { certificate, .. } => Some(certificate),
        }
    }
}

struct Searcher<'a> {
    m: &'a Matroid,
    n: usize,
    cfg: SearchConfig,
    cands: Vec<SubsetMask>,
    cand_rank: Vec<i32>,
    full_rank: i32,
    stop: AtomicBool,
}

/// Tuples are compared by their mask sequences.
type Tuple = Vec<SubsetMask>;

#[derive(Default)]
struct Partial {
    best: Option<Tuple>,
    stats: SearchStats,
}

impl Searcher<'_> {
    #[inline(always)]
    fn r(&self, x: SubsetMask, queries: &mut u64) -> i32 {
        *queries += 1;
        self.m.r(x) as i32
    }

    /// Orbit of a tuple under the symmetries of the inequality.
    fn orbit(&self, t: &[SubsetMask]) -> Vec<Tuple> {
        let mut rev = t.to_vec();
        rev[2..].reverse();
        let mut out = vec![t.to_vec(), rev];
        if self.n == 4 {
            for i in 0..2 {
                let mut s = out[i].clone();
                s.swap(0, 1);
                out.push(s);
            }
        }
        out
    }

    fn orbit_min(&self, t: &[SubsetMask]) -> Tuple {
        self.orbit(t).into_iter().min().expect("non-empty orbit")
    }

    /// Searches every chain whose first member is candidate `first`.
    fn search_from(&self, first: usize) -> Partial {
        let k = self.cands.len();
        let len = self.n - 2;
        let mut out = Partial::default();
        let mut chain = vec![0usize; len];
        chain[0] = first;
        loop {
            if self.stop.load(Ordering::Relaxed) {
                break;
            }
            let canonical = !self.cfg.symmetry_pruning || {
                let rev = chain.iter().rev();
                chain.iter().cmp(rev) != std::cmp::Ordering::Greater
            };
            if canonical {
                self.search_chain(&chain, &mut out);
            }
            // odometer over positions 1.. of the chain
            let mut pos = len;
            loop {
                if pos == 1 {
                    return out;
                }
                pos -= 1;
                chain[pos] += 1;
                if chain[pos] < k {
                    break;
                }
                chain[pos] = 0;
            }
        }
        out
    }

    fn search_chain(&self, chain: &[usize], out: &mut Partial) {
        let n = self.n;
        let k = self.cands.len();
        let q = &mut out.stats.rank_queries;
        out.stats.chains += 1;
        let xs: Vec<SubsetMask> = chain.iter().map(|&i| self.cands[i]).collect();
        // xs[j] is X_{j+3}
        let (x3, xn) = (xs[0], xs[n - 3]);
        let mut c: i32 = chain.iter().map(|&i| self.cand_rank[i]).sum();
        let links: Vec<SubsetMask> = xs.windows(2).map(|w| w[0] | w[1]).collect();
        for &l in &links {
            c -= self.r(l, q);
        }

        let x3n = x3 | xn;
        let mut ones: Vec<(i32, i32, usize)> = (0..k)
            .map(|i| {
                let x = self.cands[i];
                let f1 = self.r(x | x3n, q) - self.r(x | x3, q) - self.r(x | xn, q);
                (f1 + self.cand_rank[i], f1, i)
            })
            .collect();
        let mut twos: Vec<(i32, i32, usize)> = (0..k)
            .map(|i| {
                let x = self.cands[i];
                let mut f2 = 0;
                for &l in &links {
                    f2 += self.r(x | l, q);
                }
                for &y in &xs {
                    f2 -= self.r(x | y, q);
                }
                (f2 + self.cand_rank[i], f2, i)
            })
            .collect();
        // decreasing bound, then increasing index, so that the scan order is
        // fixed
        ones.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)));
        twos.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)));
        let f2_max = twos.iter().map(|t| t.1).max().unwrap_or(0);
        let g2_max = twos.first().map_or(0, |t| t.0);
        let swap_symmetric = self.cfg.symmetry_pruning && n == 4;

        for &(g1, f1, i1) in &ones {
            if c + g1 + g2_max <= 0 {
                break;
            }
            if c + f1 + f2_max + self.full_rank <= 0 {
                continue;
            }
            let x1 = self.cands[i1];
            for &(g2, f2, i2) in &twos {
                if c + g1 + g2 <= 0 {
                    break;
                }
                if swap_symmetric && i2 < i1 {
                    continue;
                }
                let base = c + f1 + f2;
                if base + self.full_rank <= 0 {
                    continue;
                }
                out.stats.tuples_examined += 1;
                let x2 = self.cands[i2];
                let margin = base + self.r(x1 | x2, &mut out.stats.rank_queries);
                if margin > 0 {
                    let mut t = vec![x1, x2];
                    t.extend_from_slice(&xs);
                    let t = self.orbit_min(&t);
                    if out.best.as_ref().map_or(true, |b| t < *b) {
                        out.best = Some(t);
                    }
                    if self.cfg.determinism == Determinism::Any {
                        self.stop.store(true, Ordering::Relaxed);
                        return;
                    }
                }
            }
        }
    }
}

fn candidates(m: &Matroid, space: SearchSpace) -> Result<Vec<SubsetMask>> {
    match space {
        SearchSpace::Flats => Ok(m.enumerate(EnumKind::Flats)),
        SearchSpace::AllSubsets if m.ground_size() <= ALL_SUBSETS_CAP => {
            Ok((0..1u32 << m.ground_size()).map(SubsetMask).collect())
        }
        SearchSpace::AllSubsets => Err(MatroidError::SizeCap(format!(
            "all-subsets search needs at most {ALL_SUBSETS_CAP} elements, got {}",
            m.ground_size()
        ))),
    }
}

/// Runs the search and reports its statistics.
pub fn search_with_stats(
    m: &Matroid,
    n: usize,
    cfg: SearchConfig,
) -> Result<(Option<BadFamilyCertificate>, SearchStats)> {
    if n < MIN_INDEX {
        return Err(MatroidError::Precondition(format!(
            "Kinser inequalities need n >= {MIN_INDEX}, got {n}"
        )));
    }
    let cands = candidates(m, cfg.space)?;
    let searcher = Searcher {
        m,
        n,
        cfg,
        cand_rank: cands.iter().map(|&x| m.r(x) as i32).collect(),
        full_rank: m.rank() as i32,
        cands,
        stop: AtomicBool::new(false),
    };
    let k = searcher.cands.len();
    let merge = |a: Partial, b: Partial| Partial {
        best: match (a.best, b.best) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        },
        stats: a.stats.add(b.stats),
    };
    let total = if cfg.parallel_width <= 1 {
        let mut acc = Partial::default();
        for first in 0..k {
            acc = merge(acc, searcher.search_from(first));
            if searcher.stop.load(Ordering::Relaxed) {
                break;
            }
        }
        acc
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel_width)
            .build()
            .map_err(|e| MatroidError::Precondition(format!("thread pool: {e}")))?;
        let parts: Vec<Partial> =
            pool.install(|| (0..k).into_par_iter().map(|f| searcher.search_from(f)).collect());
        parts.into_iter().fold(Partial::default(), merge)
    };
    let mut stats = total.stats;
    stats.candidates = k as u64;
    stats.rank_queries += k as u64;
    let cert = match total.best {
        Some(t) => Some(
            BadFamilyCertificate::issue(m, Family::new(t)?)?
                .expect("search only records violating tuples"),
        ),
        None => None,
    };
    Ok((cert, stats))
}

/// A bad family for inequality `n`, or `None` once the space is exhausted.
pub fn search_bad_family(
    m: &Matroid,
    n: usize,
    cfg: SearchConfig,
) -> Result<Option<BadFamilyCertificate>> {
    Ok(search_with_stats(m, n, cfg)?.0)
}

/// Membership of `m` in the class of matroids satisfying inequality `n`.
pub fn membership(m: &Matroid, n: usize, cfg: SearchConfig) -> Result<Verdict> {
    let (cert, stats) = search_with_stats(m, n, cfg)?;
    Ok(match cert {
        None => Verdict::InClass { n, stats },
        Some(certificate) => Verdict::NotInClass { certificate, stats },
    })
}

/// Membership of the dual of `m`; certificates refer to the dual.
pub fn dual_membership(m: &Matroid, n: usize, cfg: SearchConfig) -> Result<Verdict> {
    membership(&dual(m), n, cfg)
}
