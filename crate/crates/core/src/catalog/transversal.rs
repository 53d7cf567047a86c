//! Transversal matroids: independent sets are the partial transversals of a
//! set family, i.e. the sets that can be matched into the family.

use crate::error::{MatroidError, Result};
use crate::mask::SubsetMask;
use crate::matroid::{check_ground, Matroid};

/// An ordered family `(A_1, .., A_k)` of subsets of `{0, .., m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    m: usize,
    family: Vec<SubsetMask>,
}

impl SetSystem {
    pub fn new(m: usize, family: Vec<SubsetMask>) -> Result<Self> {
        check_ground(m)?;
        if let Some(bad) = family.iter().find(|a| !a.fits(m)) {
            return Err(MatroidError::InvalidSubset { mask: *bad, m });
        }
        Ok(SetSystem { m, family })
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn family(&self) -> &[SubsetMask] {
        &self.family
    }

    /// For each element, the mask of family indices containing it.
    fn adjacency(&self) -> Vec<u64> {
        (0..self.m)
            .map(|e| {
                self.family
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.contains(e))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect()
    }
}

const UNMATCHED: u8 = u8::MAX;

/// Kuhn augmenting path from element `e`; `owner[j]` is the element matched to
/// family member `j`.
fn augment(e: usize, adj: &[u64], owner: &mut [u8], visited: &mut u64) -> bool {
    let mut cand = adj[e] & !*visited;
    while cand != 0 {
        let j = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if *visited >> j & 1 == 1 {
            continue;
        }
        *visited |= 1 << j;
        if owner[j] == UNMATCHED || augment(owner[j] as usize, adj, owner, visited) {
            owner[j] = e as u8;
            return true;
        }
    }
    false
}

/// Size of a maximum matching between the elements of `x` and the family.
pub fn max_matching(system: &SetSystem, x: SubsetMask) -> usize {
    let adj = system.adjacency();
    let mut owner = vec![UNMATCHED; system.family.len()];
    x.elements()
        .filter(|&e| {
            let mut visited = 0u64;
            augment(e, &adj, &mut owner, &mut visited)
        })
        .count()
}

/// `M[A]`. An empty family gives the all-loops matroid.
pub fn transversal(system: &SetSystem) -> Result<Matroid> {
    let k = system.family.len();
    if k > 64 {
        return Err(MatroidError::SizeCap(format!(
            "families of more than 64 sets are not supported (got {k})"
        )));
    }
    let m = system.m;
    let adj = system.adjacency();
    let mut table = vec![0u8; 1 << m];

    // Depth-first over subsets in increasing-element order. A maximum
    // matching of X ∪ {e} is found by one augmenting search from e, because
    // any augmenting path for the larger set must start at the new element.
    fn walk(
        set: u32,
        next: usize,
        size: u8,
        owner: &[u8],
        adj: &[u64],
        table: &mut [u8],
    ) {
        for e in next..adj.len() {
            let mut child = owner.to_vec();
            let mut visited = 0u64;
            let grew = augment(e, adj, &mut child, &mut visited);
            let x = set | 1 << e;
            let rank = size + grew as u8;
            table[x as usize] = rank;
            walk(x, e + 1, rank, &child, adj, table);
        }
    }
    walk(0, 0, 0, &vec![UNMATCHED; k], &adj, &mut table);
    Matroid::from_table(m, table, "transversal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::uniform;
    use proptest::prelude::*;

    /// Brute-force matching: try every injective assignment of elements of
    /// `x` to family members, recursively.
    fn brute_matching(family: &[SubsetMask], x: SubsetMask) -> usize {
        fn go(elems: &[usize], family: &[SubsetMask], used: u64) -> usize {
            let Some((&e, rest)) = elems.split_first() else {
                return 0;
            };
            let mut best = go(rest, family, used);
            for (j, a) in family.iter().enumerate() {
                if used >> j & 1 == 0 && a.contains(e) {
                    best = best.max(1 + go(rest, family, used | 1 << j));
                }
            }
            best
        }
        let elems: Vec<usize> = x.elements().collect();
        go(&elems, family, 0)
    }

    #[test]
    fn two_overlapping_sets() {
        let s = SetSystem::new(3, vec![SubsetMask(0b011), SubsetMask(0b110)]).unwrap();
        let m = transversal(&s).unwrap();
        assert_eq!(m.r(SubsetMask(0b111)), 2);
        assert_eq!(max_matching(&s, SubsetMask(0b111)), 2);
    }

    #[test]
    fn disjoint_singletons_are_free() {
        let s = SetSystem::new(2, vec![SubsetMask(0b01), SubsetMask(0b10)]).unwrap();
        assert!(transversal(&s).unwrap().same_table(&uniform(2, 2).unwrap()));
    }

    #[test]
    fn empty_family_is_all_loops() {
        let s = SetSystem::new(3, vec![]).unwrap();
        let m = transversal(&s).unwrap();
        assert!(m.same_table(&uniform(0, 3).unwrap()));
    }

    proptest! {
        #[test]
        fn table_matches_brute_force(
            raw in proptest::collection::vec(0u32..64, 0..5),
        ) {
            let family: Vec<SubsetMask> = raw.into_iter().map(SubsetMask).collect();
            let s = SetSystem::new(6, family.clone()).unwrap();
            let m = transversal(&s).unwrap();
            for x in 0..64u32 {
                prop_assert_eq!(m.r(SubsetMask(x)), brute_matching(&family, SubsetMask(x)));
            }
        }

        #[test]
        fn rank_is_monotone_in_the_family(
            raw in proptest::collection::vec(0u32..64, 1..5),
            extra in 0u32..64,
        ) {
            let family: Vec<SubsetMask> = raw.into_iter().map(SubsetMask).collect();
            let small = transversal(&SetSystem::new(6, family.clone()).unwrap()).unwrap();
            let mut bigger = family;
            bigger.push(SubsetMask(extra));
            let large = transversal(&SetSystem::new(6, bigger).unwrap()).unwrap();
            for x in 0..64u32 {
                prop_assert!(small.r(SubsetMask(x)) <= large.r(SubsetMask(x)));
            }
        }
    }

    #[test]
    fn full_transversal_gives_family_size() {
        // A_j = {j, j+1}: {0,1,2} is a full transversal of three sets.
        let fam = (0..3).map(|j| SubsetMask(0b11 << j)).collect();
        let m = transversal(&SetSystem::new(4, fam).unwrap()).unwrap();
        assert_eq!(m.rank(), 3);
    }
}
