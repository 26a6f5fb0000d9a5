//! Crate-wide error type.
//!
//! Variants split into two families: bad input (caller's fault, exit code 3)
//! and internal-consistency failures (a counted quantity or an axiom did not
//! hold, exit code 2). The latter always indicate a bug in this crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),
    #[error("modulus has degree {got}, expected monic of degree {expected}")]
    WrongDegree { expected: u32, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("q = {0} is not 1 mod 4, there is no fourth root of unity")]
    MissingFourthRoot(u64),
    #[error("bad congruence: {0}")]
    BadCongruence(String),
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("basic block is degenerate: only {0} distinct points")]
    DegenerateBlock(usize),
    #[error("{0} is not a generator of the multiplicative group")]
    NotGenerator(String),
    #[error("field of order {0} is beyond the supported size")]
    TooLarge(u64),
    #[error("{points} points exceed --max-points {limit} (use --force)")]
    PointLimit { points: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("matrix {0} does not have determinant 1")]
    Determinant(String),
    #[error("{d} does not divide {n}")]
    NotDivisor { n: u32, d: u32 },

    #[error("count mismatch in {what}: expected {expected}, got {got}")]
    CountMismatch { what: String, expected: u64, got: u64 },
    #[error("pair {0:?} is labelled both edge and diagonal")]
    LabelClash((u32, u32)),
    #[error("coloring is not coherent at color {color}: {detail}")]
    NotCoherent { color: u32, detail: String },
    #[error("lambda is not constant on color {color}: saw {seen:?}")]
    NotEquitable { color: u32, seen: Vec<u32> },
    #[error("refinement violation: {0}")]
    RefinementViolation(String),
    #[error("orbit count is not an integer: {0}")]
    NonIntegerResult(String),
    #[error("symmetry contract failed: {0}")]
    SymmetryContract(String),
}

impl Error {
    /// True for errors that can only come from a defect in this crate.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CountMismatch { .. }
                | Error::LabelClash(_)
                | Error::NotCoherent { .. }
                | Error::NotEquitable { .. }
                | Error::RefinementViolation(_)
                | Error::NonIntegerResult(_)
                | Error::SymmetryContract(_)
                | Error::DegenerateBlock(_)
        )
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_internal() {
            2
        } else {
            3
        }
    }

    pub(crate) fn mismatch(what: impl Into<String>, expected: u64, got: u64) -> Self {
        Error::CountMismatch { what: what.into(), expected, got }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns `CountMismatch` unless `got == expected`.
pub(crate) fn ensure_eq(what: &str, expected: u64, got: u64) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::mismatch(what, expected, got))
    }
}
