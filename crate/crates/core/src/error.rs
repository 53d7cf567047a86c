use std::fmt;

use thiserror::Error;

use crate::mask::SubsetMask;

/// Named matroid axioms, used to label a failed check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    R1,
    R2,
    R3,
    CL1,
    CL2,
    CL3,
    CL4,
    C1,
    C2,
    C3,
    I1,
    I2,
    I3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A concrete counterexample to one axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<SubsetMask>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: Axiom, witness: Vec<SubsetMask>, detail: impl Into<String>) -> Self {
        Violation {
            axiom,
            witness,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated", self.axiom)?;
        for (i, w) in self.witness.iter().enumerate() {
            write!(f, "{}{:?}", if i == 0 { " at " } else { ", " }, w)?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("subset {mask:?} is not contained in a ground set of size {m}")]
    InvalidSubset { mask: SubsetMask, m: usize },
    #[error("element {element} out of range for ground set of size {m}")]
    ElementOutOfRange { element: usize, m: usize },
    #[error("empty ground sets are not supported")]
    EmptyGround,
    #[error("ground set of size {0} exceeds the supported maximum")]
    GroundTooLarge(usize),
    #[error("not a matroid: {0}")]
    NotAMatroid(Violation),
    #[error("cannot tighten: {0}")]
    NotTightenable(Violation),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("rank table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("stale certificate: {0}")]
    StaleCertificate(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = MatroidError> = std::result::Result<T, E>;
