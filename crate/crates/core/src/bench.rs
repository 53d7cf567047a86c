//! Query-count benchmark on binary spikes: exhaustive Ingleton checks on
//! `Z_r` alongside the number of transversal circuit-hyperplanes, which
//! grows as `2^(r-1)`.

use std::time::Instant;

use crate::catalog::{binary_spike, transversal_circuit_hyperplanes};
use crate::engine::{search_with_stats, SearchConfig};
use crate::error::{MatroidError, Result};
use crate::matroid::EnumKind;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub r: usize,
    pub elements: usize,
    /// Circuit-hyperplanes meeting every leg once (the even transversals).
    pub circuit_hyperplanes: usize,
    /// All circuit-hyperplanes, including the two-leg ones of `Z_4`.
    pub all_circuit_hyperplanes: usize,
    pub flats: u64,
    pub tuples_examined: u64,
    pub rank_queries: u64,
    pub seconds: f64,
}

pub const CSV_HEADER: &str =
    "r,elements,circuit_hyperplanes,all_circuit_hyperplanes,flats,tuples_examined,rank_queries,seconds";

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3}",
            self.r,
            self.elements,
            self.circuit_hyperplanes,
            self.all_circuit_hyperplanes,
            self.flats,
            self.tuples_examined,
            self.rank_queries,
            self.seconds
        )
    }
}

/// One row per even `r` in `rs`; each runs a full `n = 4` search over flats.
pub fn bench_spike(rs: impl IntoIterator<Item = usize>, cfg: SearchConfig) -> Result<Vec<BenchRow>> {
    rs.into_iter()
        .map(|r| {
            if r % 2 == 1 {
                return Err(MatroidError::Precondition(format!(
                    "spike benchmark takes even r, got {r}"
                )));
            }
            let z = binary_spike(r)?;
            let start = Instant::now();
            let (cert, stats) = search_with_stats(&z, 4, cfg)?;
            let seconds = start.elapsed().as_secs_f64();
            if let Some(c) = cert {
                return Err(MatroidError::Precondition(format!(
                    "Z{r} unexpectedly violates Ingleton: {}",
                    c.family
                )));
            }
            Ok(BenchRow {
                r,
                elements: z.ground_size(),
                circuit_hyperplanes: transversal_circuit_hyperplanes(&z, r).len(),
                all_circuit_hyperplanes: z.enumerate(EnumKind::CircuitHyperplanes).len(),
                flats: stats.candidates,
                tuples_examined: stats.tuples_examined,
                rank_queries: stats.rank_queries,
                seconds,
            })
        })
        .collect()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv());
        out.push('\n');
    }
    out
}
