//! Exact computation with finite matroids stored as full rank tables, with
//! an exhaustive checker for the Kinser family of rank inequalities (the
//! first of which is Ingleton's).
//!
//! * [`matroid`], [`axioms`] and [`mask`]: the rank-table representation,
//!   derived predicates and axiom validators.
//! * [`catalog`]: named constructions (uniform, linear over GF(p),
//!   transversal, Kinser matroids, binary spikes, Dowling geometries).
//! * [`transforms`]: deletion, contraction, duality, direct sums,
//!   relaxation, tightening and truncation.
//! * [`engine`]: inequality evaluation, bad-family search and class
//!   membership verdicts.
//! * [`io`] and [`bench`]: text formats, certificates and the query-count
//!   benchmark.

pub mod axioms;
pub mod bench;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod io;
pub mod layout;
pub mod mask;
pub mod matroid;
pub mod transforms;

pub use axioms::{validate_axioms, AxiomInput, AxiomSystem, RankTable};
pub use error::{Axiom, MatroidError, Result, Violation};
pub use layout::PartLayout;
pub use mask::SubsetMask;
pub use matroid::{matroid_from_circuits, EnumKind, Matroid, SetClass};
