//! Binary spikes `Z_r`: legs `{a_i, b_i}` with `a_i = i - 1` and
//! `b_i = r + i - 1`.

use crate::error::{MatroidError, Result};
use crate::layout::PartLayout;
use crate::mask::SubsetMask;
use crate::matroid::{matroid_from_circuits, Matroid};

pub const MIN_SPIKE_RANK: usize = 4;
pub const MAX_SPIKE_RANK: usize = 8;

fn check_rank(r: usize) -> Result<()> {
    if (MIN_SPIKE_RANK..=MAX_SPIKE_RANK).contains(&r) {
        Ok(())
    } else {
        Err(MatroidError::Precondition(format!(
            "spike rank must lie in {MIN_SPIKE_RANK}..={MAX_SPIKE_RANK}, got {r}"
        )))
    }
}

/// The transversal that takes `b_i` exactly where bit `i - 1` of `choice` is set.
pub fn transversal_of(r: usize, choice: u32) -> SubsetMask {
    let low = (1u32 << r) - 1;
    SubsetMask((low & !choice) | (choice & low) << r)
}

/// Transversals `{z_1, .., z_r}` with an even number of `b` elements, in
/// ascending mask order.
pub fn even_transversals(r: usize) -> Vec<SubsetMask> {
    let mut out: Vec<SubsetMask> = (0..1u32 << r)
        .filter(|c| c.count_ones() % 2 == 0)
        .map(|c| transversal_of(r, c))
        .collect();
    out.sort_unstable();
    out
}

/// Non-spanning circuits: the even transversals and every `{a_i, b_i, a_k, b_k}`.
pub fn spike_circuits(r: usize) -> Vec<SubsetMask> {
    let mut out = even_transversals(r);
    for i in 0..r {
        for k in i + 1..r {
            out.push(SubsetMask((1 << i | 1 << k) * (1 | 1 << r)));
        }
    }
    out.sort_unstable();
    out
}

fn layout(r: usize) -> PartLayout {
    let mut out = PartLayout::new();
    for i in 1..=r {
        out.insert(format!("a{i}"), SubsetMask::singleton(i - 1));
    }
    for i in 1..=r {
        out.insert(format!("b{i}"), SubsetMask::singleton(r + i - 1));
    }
    let low = (1u32 << r) - 1;
    out.insert("A", SubsetMask(low));
    out.insert("B", SubsetMask(low << r));
    out
}

/// `Z_r` for `4 <= r <= 8`.
pub fn binary_spike(r: usize) -> Result<Matroid> {
    check_rank(r)?;
    let m = matroid_from_circuits(2 * r, r, &spike_circuits(r), format!("Z{r}"))?;
    Ok(m.with_layout(Some(layout(r))))
}

/// Circuit-hyperplanes of `m` meeting every leg in exactly one element.
pub fn transversal_circuit_hyperplanes(m: &Matroid, r: usize) -> Vec<SubsetMask> {
    let low = (1u32 << r) - 1;
    m.enumerate(crate::matroid::EnumKind::CircuitHyperplanes)
        .into_iter()
        .filter(|h| {
            let (a, b) = (h.bits() & low, h.bits() >> r);
            a ^ b == low && a & b == 0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{validate_axioms, AxiomInput, AxiomSystem};
    use crate::catalog::gfp::{from_matrix, MatrixGFp};
    use crate::matroid::EnumKind;

    /// An independent GF(2) representation: with `t` the all-ones vector,
    /// `a_1 = e_1 + t`, `b_1 = e_1`, `a_i = e_i`, `b_i = e_i + t` (i >= 2).
    /// A transversal sums to a multiple of `t` plus the sum of all `e_i`;
    /// taking `b`'s at positions `S` adds `|S| t` (with the first leg
    /// flipped), so the even-`b` transversals are exactly the dependent ones.
    fn gf2_spike(r: usize) -> Matroid {
        let mut cols: Vec<Vec<u32>> = Vec::new();
        let unit = |i: usize, plus_t: bool| -> Vec<u32> {
            (0..r).map(|j| (j == i) as u32 ^ plus_t as u32).collect()
        };
        for i in 0..r {
            cols.push(unit(i, i == 0));
        }
        for i in 0..r {
            cols.push(unit(i, i != 0));
        }
        let rows: Vec<Vec<u32>> = (0..r).map(|j| cols.iter().map(|c| c[j]).collect()).collect();
        from_matrix(&MatrixGFp::from_rows(2, &rows).unwrap()).unwrap()
    }

    #[test]
    fn z4_basics() {
        let z = binary_spike(4).unwrap();
        assert_eq!((z.ground_size(), z.rank()), (8, 4));
        let a = z.part("A").unwrap();
        assert!(z.classify(a).unwrap().circuit_hyperplane);
        let leg_pair = SubsetMask::from_elements([0, 4, 1, 5]);
        assert!(z.classify(leg_pair).unwrap().circuit);
    }

    #[test]
    fn matches_gf2_representation() {
        for r in [4, 5, 6] {
            let z = binary_spike(r).unwrap();
            assert!(z.same_table(&gf2_spike(r)), "r={r}");
        }
    }

    #[test]
    fn even_transversal_counts() {
        for r in 4..=6 {
            assert_eq!(even_transversals(r).len(), 1 << (r - 1));
        }
    }

    #[test]
    fn transversal_circuit_hyperplanes_are_the_even_ones() {
        for r in [4, 6] {
            let z = binary_spike(r).unwrap();
            assert_eq!(transversal_circuit_hyperplanes(&z, r), even_transversals(r));
        }
    }

    #[test]
    fn circuit_list_passes_circuit_axioms() {
        let circuits = binary_spike(4)
            .unwrap()
            .enumerate(EnumKind::Circuits);
        let input = AxiomInput::Circuits { m: 8, circuits: &circuits };
        assert_eq!(validate_axioms(input, AxiomSystem::Circuits).unwrap(), Ok(()));
    }

    #[test]
    fn non_spanning_circuits_round_trip() {
        for r in [4, 6] {
            let z = binary_spike(r).unwrap();
            let non_spanning: Vec<SubsetMask> = z
                .enumerate(EnumKind::Circuits)
                .into_iter()
                .filter(|c| z.r(*c) < r)
                .collect();
            assert_eq!(non_spanning, spike_circuits(r));
        }
    }

    #[test]
    fn rank_out_of_range() {
        assert!(binary_spike(3).is_err());
        assert!(binary_spike(9).is_err());
    }
}
