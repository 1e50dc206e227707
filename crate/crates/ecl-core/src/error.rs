//! Error type shared by every module of the core crate.

use alloc::string::String;

/// Failures reported by the core library.
///
/// The variants map onto the exit-code classes used by the command-line
/// front end: configuration and domain problems are caller mistakes, while
/// [`Error::Internal`] signals that an invariant the library relies on was
/// found to be violated.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A root-system label/rank pair outside the supported table.
    #[error("unsupported root system ({label}, rank {rank})")]
    Unsupported { label: String, rank: usize },

    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An evaluation point too close to a singular divisor.
    #[error("singularity: {what} (nearest lattice point {near_re}+{near_im}i)")]
    Singularity { what: String, near_re: f64, near_im: f64 },

    /// An index outside the range allowed by the model dimensions.
    #[error("index out of range: {0}")]
    Index(String),

    /// A request for data beyond a precomputed table.
    #[error("range error: {0}")]
    Range(String),

    /// A check that needs data the caller did not supply.
    #[error("missing capability: {0}")]
    Capability(String),

    /// A violated internal invariant.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
