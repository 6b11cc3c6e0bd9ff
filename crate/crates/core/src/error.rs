use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("elements belong to different lattice instances")]
    MixedLattice,
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("unsupported ambient dimension {0}")]
    InvalidDimension(usize),
    #[error("eigenvalue {eigenvalue} lies in the ambiguity band; tolerances cannot classify it")]
    AmbiguousSpectrum { eigenvalue: f64 },
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("no refuting observable: {0}")]
    NoRefutation(&'static str),
    #[error("the two subspaces are compatible")]
    NotIncompatible,
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("a probe label set is required for an infinite label lattice")]
    ProbeRequired,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("malformed lattice: {0}")]
    MalformedLattice(String),
    #[error("invalid tolerances: {0}")]
    InvalidTolerance(&'static str),
    #[error("postcondition failed: {0}")]
    Postcondition(&'static str),
}
