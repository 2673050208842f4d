//! Error type shared by every module of the crate.
//!
//! Errors fall into three families:
//!
//! * input errors (`InvalidMatrix`, `InvalidSpec`, `InvalidSubset`, …) — the
//!   caller handed us something malformed;
//! * usage errors (`GroupMismatch`, `DimensionMismatch`, …) — operands from
//!   different groups or of different shapes were combined;
//! * theorem guards (`TheoremViolation`, `SolveFailure`) — hard assertions on
//!   structural facts the library verifies as it goes.  These must never fire
//!   on a finite Coxeter group; if one does, it means a computation disagrees
//!   with a property every other code path relies on, and aborting with a
//!   descriptive error beats silently producing garbage.

use thiserror::Error;

/// Crate-wide error enum.
#[derive(Debug, Error)]
pub enum Error {
    /// Element or root enumeration exceeded the configured size limit.
    #[error("group is not finite within the size limit of {limit} elements")]
    GroupNotFinite { limit: usize },

    /// Two enumerated roots were distinct but closer than the separation
    /// guard, so floating-point identification of roots cannot be trusted.
    #[error(
        "root separation failure: distinct roots at distance {distance:.3e} \
         (identification tolerance {tolerance:.1e}, guard {guard:.1e})"
    )]
    RootSeparationFailure {
        distance: f64,
        tolerance: f64,
        guard: f64,
    },

    /// Malformed Coxeter matrix (non-square, asymmetric, bad diagonal, …).
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    /// Unparseable group or automorphism spec string.
    #[error("invalid spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },

    /// Operands belong to different groups.
    #[error("element of group #{found} used with group #{expected}")]
    GroupMismatch { expected: u64, found: u64 },

    /// A generator permutation that does not preserve the Coxeter matrix.
    #[error("not a diagram automorphism: m({s},{t}) = {m_st} but m({ds},{dt}) = {m_image}")]
    NotAnAutomorphism {
        s: usize,
        t: usize,
        ds: usize,
        dt: usize,
        m_st: u32,
        m_image: u32,
    },

    /// A generator subset containing indices outside the generator range.
    #[error("invalid generator subset: index {index} out of range for rank {rank}")]
    InvalidSubset { index: usize, rank: usize },

    /// An element set that was expected to have a single common length.
    #[error("mixed lengths in a set expected to be length-homogeneous")]
    MixedLengths,

    /// Minimal-side and maximal-side approximation classes were combined.
    #[error("approximation classes of different kinds (min vs max) compared")]
    KindMismatch,

    /// A structural fact of finite Coxeter groups failed to hold.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// An exact linear solve that is guaranteed solvable found no solution.
    #[error("solve failure: {0}")]
    SolveFailure(String),

    /// Vectors or spaces of different ambient dimensions were combined.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Evaluation of a Laurent polynomial with negative powers at 0.
    #[error("cannot evaluate a Laurent polynomial with negative powers at q = 0")]
    ZeroDenominator,

    /// An operation the library only supports for the identity automorphism.
    #[error("operation not supported for a nontrivial diagram automorphism: {0}")]
    DeltaUnsupported(String),

    /// Word with a letter outside the generator range.
    #[error("invalid word: letter {letter} out of range for rank {rank}")]
    InvalidWord { letter: usize, rank: usize },

    /// I/O failure while reading an external matrix file.
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Short machine-readable tag for structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GroupNotFinite { .. } => "GroupNotFinite",
            Error::RootSeparationFailure { .. } => "RootSeparationFailure",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::InvalidSpec { .. } => "InvalidSpec",
            Error::GroupMismatch { .. } => "GroupMismatch",
            Error::NotAnAutomorphism { .. } => "NotAnAutomorphism",
            Error::InvalidSubset { .. } => "InvalidSubset",
            Error::MixedLengths => "MixedLengths",
            Error::KindMismatch => "KindMismatch",
            Error::TheoremViolation(_) => "TheoremViolation",
            Error::SolveFailure(_) => "SolveFailure",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::DeltaUnsupported(_) => "DeltaUnsupported",
            Error::InvalidWord { .. } => "InvalidWord",
            Error::Io { .. } => "Io",
        }
    }

    /// Whether this error is a structural (theorem-level) failure rather
    /// than an input problem.  The CLI maps these to exit code 1 and input
    /// problems to exit code 2.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::TheoremViolation(_) | Error::SolveFailure(_) | Error::DimensionMismatch { .. }
        )
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
