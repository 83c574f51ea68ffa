//! Error taxonomy shared by every module.
//!
//! The distinctions matter operationally: `Domain` means the inputs violate an
//! admissibility condition (the caller asked for something mathematically
//! undefined), `Accuracy` means the inputs were legal but a quadrature failed
//! to converge, `Degenerate` marks measure-zero configurations that are
//! rejected rather than regularised, and `UnsupportedData` marks data shapes a
//! particular evaluation path deliberately does not handle.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A quadrature or series failed to reach its accuracy target.
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// Degenerate (measure-zero) configuration, e.g. parallel direction pair.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// The evaluation path does not support this data representation.
    #[error("unsupported data: {0}")]
    UnsupportedData(String),
    /// Malformed CLI input / flag combination.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
