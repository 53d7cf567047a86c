#![allow(dead_code)]

use kinser_core::catalog::{
    binary_spike, dowling, fano_pair, kinser, kinser_base, kinser_relaxed, transversal, uniform,
    GroupTable, SetSystem,
};
use kinser_core::transforms::{dual, truncate};
use kinser_core::{Matroid, SubsetMask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every catalog matroid with at most 16 elements.
pub fn catalog() -> Vec<Matroid> {
    let (f7, f7m) = fano_pair();
    let mut out = vec![
        uniform(1, 1).unwrap(),
        uniform(0, 3).unwrap(),
        uniform(1, 3).unwrap(),
        uniform(2, 4).unwrap(),
        uniform(3, 6).unwrap(),
        f7,
        f7m,
        kinser_base(4).unwrap(),
        kinser(4).unwrap(),
        kinser_relaxed(4, None).unwrap(),
        kinser_base(5).unwrap(),
        kinser(5).unwrap(),
        kinser_relaxed(5, None).unwrap(),
        kinser_relaxed(5, Some(3)).unwrap(),
    ];
    out.extend((4..=8).map(|r| binary_spike(r).unwrap()));
    for g in 1..=3 {
        out.push(dowling(&GroupTable::cyclic(g).unwrap(), 3).unwrap());
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random matroid on `m` elements: a transversal matroid of a random
/// family, possibly truncated and possibly dualised.
pub fn random_matroid(rng: &mut ChaCha8Rng, m: usize) -> Matroid {
    let k = rng.gen_range(0..=m);
    let family = (0..k)
        .map(|_| SubsetMask(rng.gen_range(0..1u32 << m)))
        .collect();
    let mut out = transversal(&SetSystem::new(m, family).unwrap()).unwrap();
    if out.rank() > 1 && rng.gen_bool(0.3) {
        out = truncate(&out).unwrap();
    }
    if rng.gen_bool(0.5) {
        out = dual(&out);
    }
    out
}

pub fn random_mask(rng: &mut ChaCha8Rng, m: usize) -> SubsetMask {
    SubsetMask(rng.gen_range(0..1u32 << m))
}
