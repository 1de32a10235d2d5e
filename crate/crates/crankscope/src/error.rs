use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Enumerating all partitions of `n` would exceed the configured limit.
    #[error("enumeration too large: n = {n} exceeds limit {limit}")]
    EnumerationTooLarge { n: u64, limit: u64 },

    /// A series expansion was requested past the configured truncation limit.
    #[error("truncation limit exceeded: order {requested} > limit {limit}")]
    TruncationExceeded { requested: usize, limit: usize },

    /// An argument left the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Node-doubling quadrature stopped before reaching the target tolerance.
    #[error("quadrature did not converge: achieved {achieved:.3e}, target {target:.3e}")]
    QuadratureNonConvergence { achieved: f64, target: f64 },

    /// A theta/eta product factor underflowed near a lattice zero.
    #[error("singular value: {0}")]
    Singular(String),

    /// A precision below the supported floor was requested.
    #[error("precision too low: {bits} bits (minimum 64)")]
    PrecisionTooLow { bits: u32 },

    #[error("cache file {path}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },

    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),

    /// An invalid partition representation was supplied.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
