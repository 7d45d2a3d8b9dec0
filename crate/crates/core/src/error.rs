use std::fmt;

use thiserror::Error;

use crate::intervals::Interval;

pub type Result<T> = std::result::Result<T, Error>;

/// Named conditions that operations check on their inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `S ⊆ 2S`.
    S1,
    /// `1_S(2^-j ξ) -> 1`.
    S2,
    /// Integer translates of `S` tile the line.
    S3,
    /// Integer translates of `S` cover the line.
    Cover,
    /// `g(2ξ) = |m(ξ)|² g(ξ)` for a 1-periodic `m`.
    F1,
    /// `g -> 1` at the origin.
    F2,
    /// Periodization of `g` is identically 1.
    F3,
}

impl Condition {
    pub fn code(self) -> &'static str {
        match self {
            Condition::S1 => "S1",
            Condition::S2 => "S2",
            Condition::S3 => "S3",
            Condition::Cover => "cover",
            Condition::F1 => "F1",
            Condition::F2 => "F2",
            Condition::F3 => "F3",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Condition::S1 => "S ⊆ 2S",
            Condition::S2 => "lim 1_S(2^-j ξ) = 1",
            Condition::S3 => "Σ_k 1_S(ξ+k) = 1",
            Condition::Cover => "Σ_k 1_S(ξ+k) ≥ 1",
            Condition::F1 => "g(2ξ) = |m(ξ)|² g(ξ) with m 1-periodic",
            Condition::F2 => "lim g(2^-j ξ) = 1",
            Condition::F3 => "Σ_k g(ξ+k) = 1",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.code(), self.description())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("condition {condition} fails on {witness}")]
    Precondition {
        condition: Condition,
        witness: Interval,
    },

    #[error("not a scaling spectrum: {condition} fails on {witness}")]
    InvalidSpectrum {
        condition: Condition,
        witness: Interval,
    },

    #[error("inconsistent spectrum: g(ξ/2) - g(ξ) is negative on {witness}")]
    InconsistentSpectrum { witness: Interval },

    #[error("insufficient depth: need at least {required}, got {actual}")]
    InsufficientDepth { required: u32, actual: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),
}
