//! The Kinser matroids `Kin(r)` and their relaxations.
//!
//! Elements are laid out as `V1`, then `V2 = {e, f}`, then `V3, .., Vr`, each
//! part occupying a consecutive block of indices.

use super::transversal::{transversal, SetSystem};
use crate::error::{MatroidError, Result};
use crate::layout::PartLayout;
use crate::mask::SubsetMask;
use crate::matroid::Matroid;
use crate::transforms::{relax, truncate};

pub const MIN_KINSER_RANK: usize = 4;
/// Largest `r` whose ground set `r^2 - 3r + 4` fits a rank table.
pub const MAX_KINSER_RANK: usize = 6;

fn check_rank(r: usize) -> Result<()> {
    if (MIN_KINSER_RANK..=MAX_KINSER_RANK).contains(&r) {
        Ok(())
    } else {
        Err(MatroidError::Precondition(format!(
            "Kinser rank must lie in {MIN_KINSER_RANK}..={MAX_KINSER_RANK}, got {r}"
        )))
    }
}

/// Ground size `r^2 - 3r + 4`.
pub fn kinser_ground_size(r: usize) -> usize {
    r * r - 3 * r + 4
}

/// Parts `V1..Vr` as masks; index 0 holds `V1`.
fn parts(r: usize) -> Vec<SubsetMask> {
    let mut next = 0;
    (1..=r)
        .map(|i| {
            let size = if i == 2 { 2 } else { r - 2 };
            let block = SubsetMask(((1u32 << size) - 1) << next);
            next += size;
            block
        })
        .collect()
}

fn layout(r: usize) -> PartLayout {
    let v = parts(r);
    let mut out = PartLayout::new();
    for (i, &part) in v.iter().enumerate() {
        out.insert(format!("V{}", i + 1), part);
    }
    let e = v[1].elements().next().unwrap();
    out.insert("e", SubsetMask::singleton(e));
    out.insert("f", SubsetMask::singleton(e + 1));
    out
}

/// The family `(A_1, A_3, A_4, .., A_r, A, A')` presenting `M_{r+1}`.
pub fn kinser_family(r: usize) -> Result<SetSystem> {
    check_rank(r)?;
    let v = parts(r);
    let vi = |i: usize| v[i - 1];
    let m = kinser_ground_size(r);
    let w = (3..=r).fold(vi(1), |acc, i| acc | vi(i));
    let mut family = vec![w - (vi(1) | vi(r)), w - (vi(1) | vi(3))];
    family.extend((4..=r).map(|i| w - (vi(i - 1) | vi(i))));
    family.push(SubsetMask::full(m));
    family.push(vi(2));
    SetSystem::new(m, family)
}

/// `M_{r+1}`, the rank `r + 1` transversal matroid of [`kinser_family`].
pub fn kinser_base(r: usize) -> Result<Matroid> {
    let m = transversal(&kinser_family(r)?)?;
    Ok(m.with_label(format!("M{}", r + 1)).with_layout(Some(layout(r))))
}

/// `Kin(r)`, the truncation of `M_{r+1}`.
pub fn kinser(r: usize) -> Result<Matroid> {
    Ok(truncate(&kinser_base(r)?)?.with_label(format!("Kin({r})")))
}

/// `Kin(r)^-`, obtained by relaxing `V1 ∪ V2`; with `also_relax = Some(i)`,
/// additionally relaxes `V2 ∪ Vi`, giving `Kin(r)_i^=`.
pub fn kinser_relaxed(r: usize, also_relax: Option<usize>) -> Result<Matroid> {
    let base = kinser(r)?;
    let v = |i: usize| base.part(&format!("V{i}")).expect("Kinser layout");
    let minus = relax(&base, v(1) | v(2))?.with_label(format!("Kin({r})-"));
    match also_relax {
        None => Ok(minus),
        Some(i) if (3..=r).contains(&i) => {
            Ok(relax(&minus, v(2) | v(i))?.with_label(format!("Kin({r})_{i}=")))
        }
        Some(i) => Err(MatroidError::Precondition(format!(
            "second relaxation index must lie in 3..={r}, got {i}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::EnumKind;
    use crate::transforms::delete;

    fn v(m: &Matroid, i: usize) -> SubsetMask {
        m.part(&format!("V{i}")).unwrap()
    }

    #[test]
    fn ground_sizes_and_ranks() {
        for (r, size) in [(4, 8), (5, 14)] {
            let base = kinser_base(r).unwrap();
            assert_eq!(base.ground_size(), size);
            assert_eq!(base.rank(), r + 1);
            assert_eq!(kinser(r).unwrap().rank(), r);
        }
        assert_eq!(kinser_ground_size(6), 22);
    }

    #[test]
    fn parts_partition_the_ground_set() {
        for r in 4..=6 {
            let l = layout(r);
            let names: Vec<String> = (1..=r).map(|i| format!("V{i}")).collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            assert!(l.partitions(&names, SubsetMask::full(kinser_ground_size(r))));
            assert_eq!(l.get("V2").unwrap(), l.get("e").unwrap() | l.get("f").unwrap());
        }
    }

    #[test]
    fn e_f_is_a_series_pair() {
        let base = kinser_base(4).unwrap();
        let e = base.part("e").unwrap().elements().next().unwrap();
        let (del, map) = delete(&base, e).unwrap();
        let f = map[e + 1].unwrap();
        assert!(del.classify(SubsetMask::singleton(f)).unwrap().coloop);
    }

    #[test]
    fn out_of_range_rank_is_refused() {
        assert!(kinser(3).is_err());
        assert!(kinser(7).is_err());
        assert!(kinser_relaxed(5, Some(2)).is_err());
    }

    #[test]
    fn structure_of_kin_r() {
        for r in [4, 5] {
            let kin = kinser(r).unwrap();
            let minus = kinser_relaxed(r, None).unwrap();
            for i in std::iter::once(1).chain(3..=r) {
                let h = v(&kin, 2) | v(&kin, i);
                assert!(kin.classify(h).unwrap().circuit_hyperplane, "r={r} i={i}");
            }
            let hyp = |m: &Matroid, x| m.classify(x).unwrap().hyperplane;
            assert!(hyp(&minus, v(&minus, 1) | v(&minus, 3)));
            for i in 4..r {
                assert!(hyp(&minus, v(&minus, i) | v(&minus, i + 1)), "r={r} i={i}");
            }
            for i in 3..=r {
                for k in i + 2..=r {
                    assert!(minus.classify(v(&minus, i) | v(&minus, k)).unwrap().spanning);
                }
            }
            for i in 1..=r {
                assert!(minus.is_independent(v(&minus, i)));
            }
            for a in 1..=r {
                for b in a + 1..=r {
                    for c in b + 1..=r {
                        let x = v(&minus, a) | v(&minus, b) | v(&minus, c);
                        assert!(minus.classify(x).unwrap().spanning, "r={r} {a}{b}{c}");
                    }
                }
            }
        }
    }

    #[test]
    fn vamos_facts() {
        let kin = kinser(4).unwrap();
        assert!(kin.classify(v(&kin, 2) | v(&kin, 1)).unwrap().circuit_hyperplane);
        assert_eq!(kin.r(v(&kin, 3)), 2);
        let vamos = kinser_relaxed(4, None).unwrap();
        assert_eq!(vamos.r(v(&vamos, 1) | v(&vamos, 2)), 4);
        assert_eq!(vamos.enumerate(EnumKind::Flats).len(), 79);
        // Vámos: 8 elements, rank 4, exactly five 4-element circuit-hyperplanes
        assert_eq!(vamos.enumerate(EnumKind::CircuitHyperplanes).len(), 5);
    }

    #[test]
    fn relaxations_touch_only_their_sets() {
        let kin = kinser(5).unwrap();
        let minus = kinser_relaxed(5, None).unwrap();
        let h1 = v(&kin, 1) | v(&kin, 2);
        for x in 0..1u32 << 14 {
            if x != h1.bits() {
                assert_eq!(kin.table()[x as usize], minus.table()[x as usize]);
            }
        }
        let eq = kinser_relaxed(5, Some(3)).unwrap();
        assert_eq!(eq.r(v(&eq, 2) | v(&eq, 3)), 5);
        assert_eq!(eq.r(h1), 5);
    }
}
