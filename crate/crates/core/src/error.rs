use thiserror::Error;

use crate::lifting::HypothesisFailure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    /// A brute-force routine was asked to go beyond its configured bound.
    #[error("{what} is {found}, above the configured bound {bound}")]
    Capacity {
        what: &'static str,
        bound: usize,
        found: usize,
    },

    #[error("entry {value} at position {index} is not a binary digit")]
    NotBinary { index: usize, value: i64 },

    #[error("entry {value} at position {index} is negative")]
    NegativeEntry { index: usize, value: String },

    #[error("not a cycle code: bit {bit} has degree {degree}, expected 2")]
    NotCycleCode { bit: usize, degree: usize },

    #[error("Tanner graph is not bit-even: bit {bit} has degree {degree}")]
    NotBitEven { bit: usize, degree: usize },

    #[error("bit {bit} has no check neighbours")]
    IsolatedBit { bit: usize },

    #[error("vector is not a codeword (syndrome weight {syndrome_weight})")]
    NotACodeword { syndrome_weight: usize },

    #[error("vector is not in the fundamental cone ({violations} violated inequalities)")]
    NotInCone { violations: usize },

    #[error("vector fails the lifting hypotheses: {}", describe_failures(.0))]
    HypothesesFailed(Vec<HypothesisFailure>),

    #[error("series is not invertible: constant term is {constant}, expected 1")]
    NotInvertible { constant: String },

    #[error("total degree {degree} exceeds the truncation degree {truncation}")]
    DegreeOutOfRange { degree: u32, truncation: u32 },

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn describe_failures(failures: &[HypothesisFailure]) -> String {
    failures
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
