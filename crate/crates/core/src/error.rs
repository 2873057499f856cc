use std::fmt;

use thiserror::Error;

/// A single violated hypothesis of the monogenic construction.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Violation {
    /// Short machine-readable tag, e.g. `"r-divides-m"`.
    pub code: String,
    /// Human-readable description naming the offending value.
    pub message: String,
}

impl Violation {
    pub fn new(code: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            code: code.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("zero input is not allowed here")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("residue class {residue} mod {modulus} contains at most one prime (gcd = {gcd})")]
    NoPrimesInClass {
        modulus: String,
        residue: String,
        gcd: String,
    },
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least {0}")]
    DegreeTooSmall(usize),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("coefficient of x^{degree} is not divisible by {divisor}; antiderivative is not integral")]
    NonIntegralAntiderivative { degree: usize, divisor: usize },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid construction parameters: {}", join(.0))]
    InvalidParams(Vec<Violation>),
    #[error("construction inconsistency: {0}")]
    Inconsistency(String),
    #[error("duplicate factor in f(x): {0}")]
    DuplicateFactor(String),
    #[error("no unit z modulo {r}^2 with f(z) nonzero")]
    NoWitness { r: String },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("{what} {requested} exceeds the configured cap {cap}")]
    LimitExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
