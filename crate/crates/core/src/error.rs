use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A size or guard parameter fell outside its supported range.
    #[error("{what} = {value} is outside the supported range {limit}")]
    Bounds {
        what: &'static str,
        value: i64,
        limit: &'static str,
    },

    /// A basis word letter outside 1..=n.
    #[error("invalid level {letter}: levels run 1..={levels}")]
    InvalidLetter { letter: u8, levels: u32 },

    /// Two operands live in different product spaces.
    #[error("state spaces do not match: (n={left_n}, N={left_particles}) vs (n={right_n}, N={right_particles})")]
    SpaceMismatch {
        left_n: u32,
        left_particles: u32,
        right_n: u32,
        right_particles: u32,
    },

    /// Structurally invalid input (mismatched lengths, bad subsets, ...).
    #[error("{0}")]
    Domain(String),

    /// A matrix or state failed a numerical validity check.
    #[error("numerical validity: {0}")]
    Numerical(String),

    /// The state is parallel to its level conjugate, so the conjugate
    /// pair collapses to zero (or to the state itself) for every phase.
    #[error("state is parallel to its level conjugate; conjugate pairing is degenerate")]
    DegeneratePair,

    /// The operation exists but not for this configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
