//! Term-by-term corank arithmetic: evaluating an inequality in `M*` through
//! `r*(U) = |U| + r(E - U) - r(M)` while only consulting `M`.

use super::{evaluate, Family, Side};
use crate::error::Result;
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorankTerm {
    pub side: Side,
    pub sets: Vec<usize>,
    pub mask: SubsetMask,
    /// `|U|`
    pub size: usize,
    /// `r(E - U)`
    pub complement_rank: usize,
    /// `r*(U)`
    pub corank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorankReport {
    /// `r(M)` of the primal matroid.
    pub rank: usize,
    pub terms: Vec<CorankTerm>,
}

/// The dual-side value of every term of `fam`, in evaluation order.
pub fn corank_term_report(m: &Matroid, fam: &Family) -> Result<CorankReport> {
    let value = evaluate(m, fam)?;
    let ground = m.ground();
    let terms = value
        .terms
        .into_iter()
        .map(|t| {
            let size = t.mask.len();
            let complement_rank = m.r(ground - t.mask);
            CorankTerm {
                side: t.side,
                sets: t.sets,
                mask: t.mask,
                size,
                complement_rank,
                corank: size + complement_rank - m.rank(),
            }
        })
        .collect();
    Ok(CorankReport {
        rank: m.rank(),
        terms,
    })
}

/// The known part of one side: the terms not involving any unknown set,
/// each contributing `|U| + r(E - U) - r(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantBlock {
    /// `|U|` for each known term, in order.
    pub sizes: Vec<usize>,
    /// `r(E - U)` for each known term, in order.
    pub complement_ranks: Vec<usize>,
}

impl ConstantBlock {
    /// Number of `-r(M)` summands.
    pub fn rank_multiplier(&self) -> usize {
        self.sizes.len()
    }

    pub fn constant(&self) -> usize {
        self.sizes.iter().sum::<usize>() + self.complement_ranks.iter().sum::<usize>()
    }
}

impl CorankReport {
    pub fn side(&self, side: Side) -> impl Iterator<Item = &CorankTerm> {
        self.terms.iter().filter(move |t| t.side == side)
    }

    /// Sum of `r*(U)` over one side.
    pub fn total(&self, side: Side) -> usize {
        self.side(side).map(|t| t.corank).sum()
    }

    pub fn constant_block(&self, side: Side, unknown: &[usize]) -> ConstantBlock {
        let known: Vec<&CorankTerm> = self
            .side(side)
            .filter(|t| !t.sets.iter().any(|i| unknown.contains(i)))
            .collect();
        ConstantBlock {
            sizes: known.iter().map(|t| t.size).collect(),
            complement_ranks: known.iter().map(|t| t.complement_rank).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fano_pair, kinser_relaxed};
    use crate::transforms::dual;

    #[test]
    fn coranks_match_the_dual_matroid() {
        let (_, f7m) = fano_pair();
        let d = dual(&f7m);
        let fam = Family::new(
            [0b1, 0b110, 0b1000, 0b11_0000, 0b100_0001]
                .map(SubsetMask)
                .to_vec(),
        )
        .unwrap();
        let report = corank_term_report(&f7m, &fam).unwrap();
        let direct = evaluate(&d, &fam).unwrap();
        assert_eq!(report.total(Side::Lhs), direct.lhs);
        assert_eq!(report.total(Side::Rhs), direct.rhs);
    }

    #[test]
    fn constant_block_on_kin5_minus() {
        let m = kinser_relaxed(5, None).unwrap();
        let v = |i: usize| m.part(&format!("V{i}")).unwrap();
        let fam = Family::new(vec![v(4) | v(5), v(3), v(2), v(1) | v(4), v(1) | v(5)]).unwrap();
        let report = corank_term_report(&m, &fam).unwrap();
        let lhs = report.constant_block(Side::Lhs, &[3]);
        assert_eq!(lhs.sizes, vec![6, 6, 9, 12]);
        assert_eq!(lhs.complement_ranks, vec![5, 5, 5, 2]);
        assert_eq!((lhs.constant(), lhs.rank_multiplier()), (50, 4));
    }
}
