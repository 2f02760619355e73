use thiserror::Error;

/// Errors shared across the experiment modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A value that must be finite was NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFinite(f64),

    /// A parameter fell outside its documented range.
    #[error("parameter out of range: {0}")]
    Parameter(String),

    /// Arithmetic overflowed the native float range.
    #[error("overflow at step {step}")]
    Overflow { step: u64 },

    /// An integration produced a non-finite state.
    #[error("trajectory diverged at t = {t}")]
    Diverged { t: f64 },

    /// The direction of the zero vector is undefined.
    #[error("phase is undefined for the zero vector")]
    PhaseUndefined,

    /// Inconsistent or invalid experiment configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
