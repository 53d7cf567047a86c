//! Constructors for the named matroids used throughout the crate.

mod dowling;
mod gfp;
mod kinser;
mod spike;
mod transversal;

pub use dowling::{bias_rank_table, dowling, dowling_circuits, GainEdge, GainGraph, GroupTable};
pub use gfp::{fano_matrix, fano_pair, from_matrix, MatrixGFp};
pub use kinser::{
    kinser, kinser_base, kinser_family, kinser_ground_size, kinser_relaxed, MAX_KINSER_RANK,
    MIN_KINSER_RANK,
};
pub use spike::{
    binary_spike, even_transversals, spike_circuits, transversal_circuit_hyperplanes, transversal_of,
};
pub use transversal::{max_matching, transversal, SetSystem};

use crate::error::{MatroidError, Result};
use crate::matroid::{check_ground, Matroid};

/// `U_{k,m}`: every set of at most `k` elements is independent.
pub fn uniform(k: usize, m: usize) -> Result<Matroid> {
    check_ground(m)?;
    if k > m {
        return Err(MatroidError::Precondition(format!(
            "uniform rank {k} exceeds ground size {m}"
        )));
    }
    let table = (0..1u32 << m)
        .map(|x| (x.count_ones() as usize).min(k) as u8)
        .collect();
    Ok(Matroid::from_table_unchecked(m, table, format!("U{k},{m}")))
}
