use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime_u64, primes_in_range, Effort};
use crate::error::{Error, Result, Violation};

/// Unchecked parameter tuple as it arrives from a caller or a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawParams {
    #[serde(with = "crate::decimal")]
    pub q0: u64,
    #[serde(with = "crate::decimal")]
    pub q1: u64,
    /// Defaults to `q₀ + q₁ − 1` when absent.
    #[serde(default, with = "crate::decimal::option", skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(with = "crate::decimal")]
    pub d: u32,
    #[serde(with = "crate::decimal")]
    pub m: u64,
    #[serde(with = "crate::decimal")]
    pub q2: u64,
    #[serde(default, with = "crate::decimal::option", skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl RawParams {
    pub fn new(q0: u64, q1: u64, d: u32, m: u64, q2: u64) -> Self {
        RawParams {
            q0,
            q1,
            q: None,
            d,
            m,
            q2,
            p: None,
        }
    }

    pub fn with_p(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }
}

/// A parameter tuple that satisfies every hypothesis of the construction.
/// Only obtainable through [`validate_params`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawParams", try_from = "RawParams")]
pub struct ConstructionParams {
    q0: u64,
    q1: u64,
    q: u64,
    d: u32,
    m: u64,
    q2: u64,
    p: Option<u64>,
    m_primes: Vec<u64>,
}

impl ConstructionParams {
    pub fn q0(&self) -> u64 {
        self.q0
    }
    pub fn q1(&self) -> u64 {
        self.q1
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn q2(&self) -> u64 {
        self.q2
    }
    pub fn p(&self) -> Option<u64> {
        self.p
    }

    /// Prime divisors of `m`, ascending.
    pub fn m_primes(&self) -> &[u64] {
        &self.m_primes
    }

    /// `d(q−1) + 1`, the upper end of the middle range of primes.
    pub fn middle_bound(&self) -> u64 {
        self.d as u64 * (self.q - 1) + 1
    }

    /// Same parameters with `p` fixed, rechecking the conditions on `p`.
    pub fn with_p(&self, p: u64) -> Result<Self> {
        let mut raw = RawParams::from(self.clone());
        raw.p = Some(p);
        validate_params(&raw)
    }

    pub fn without_p(&self) -> Self {
        ConstructionParams {
            p: None,
            ..self.clone()
        }
    }

    pub fn to_raw(&self) -> RawParams {
        self.clone().into()
    }
}

impl From<ConstructionParams> for RawParams {
    fn from(c: ConstructionParams) -> Self {
        RawParams {
            q0: c.q0,
            q1: c.q1,
            q: Some(c.q),
            d: c.d,
            m: c.m,
            q2: c.q2,
            p: c.p,
        }
    }
}

impl TryFrom<RawParams> for ConstructionParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        validate_params(&raw)
    }
}

/// Checks every hypothesis and reports all violations at once.
pub fn validate_params(raw: &RawParams) -> Result<ConstructionParams> {
    let mut v = Vec::new();
    let RawParams {
        q0,
        q1,
        d,
        m,
        q2,
        p,
        ..
    } = *raw;
    if !is_prime_u64(q0) {
        v.push(Violation::new("q0-not-prime", format!("q0 = {q0} is not prime")));
    }
    if !is_prime_u64(q1) {
        v.push(Violation::new("q1-not-prime", format!("q1 = {q1} is not prime")));
    }
    if q0 >= q1 {
        v.push(Violation::new(
            "q0-not-below-q1",
            format!("q0 = {q0} must be smaller than q1 = {q1}"),
        ));
    }
    let q = (q0 + q1).saturating_sub(1);
    if let Some(given) = raw.q {
        if given != q {
            v.push(Violation::new(
                "q-mismatch",
                format!("q = {given} differs from q0 + q1 - 1 = {q}"),
            ));
        }
    }
    if q < 3 || !is_prime_u64(q) {
        v.push(Violation::new(
            "q-not-prime",
            format!("q = q0 + q1 - 1 = {q} is not a prime >= 3"),
        ));
    }
    if d == 0 {
        v.push(Violation::new("d-zero", "d must be at least 1"));
    }
    let mut m_primes = Vec::new();
    if m == 0 {
        v.push(Violation::new("m-zero", "m must be at least 1"));
    } else {
        let fm = factorize(&BigInt::from(m), &Effort::default())?;
        m_primes = fm
            .factors()
            .keys()
            .map(|p| u64::try_from(p).expect("prime divisor of a u64"))
            .collect();
        let squares: Vec<String> = fm
            .factors()
            .iter()
            .filter(|(_, &e)| e >= 2)
            .map(|(p, _)| format!("{p}^2"))
            .collect();
        if !squares.is_empty() {
            v.push(Violation::new(
                "m-not-squarefree",
                format!("m = {m} is divisible by {}", squares.join(", ")),
            ));
        }
        if q >= 2 && m % q == 0 {
            v.push(Violation::new("q-divides-m", format!("q = {q} divides m = {m}")));
        }
        if d >= 1 && q >= 3 {
            let top = d as u64 * (q - 1) + 1;
            if top > q + 1 {
                for r in primes_in_range(q + 1, top - 1) {
                    if m % r != 0 {
                        v.push(Violation::new(
                            "r-does-not-divide-m",
                            format!("{r} ∤ m = {m} (prime strictly between {q} and {top})"),
                        ));
                    }
                }
            }
        }
    }
    if !is_prime_u64(q2) {
        v.push(Violation::new("q2-not-prime", format!("q2 = {q2} is not prime")));
    }
    if q >= 2 && (q2 + 1) % q != 0 {
        v.push(Violation::new(
            "q2-not-minus-one",
            format!("q2 = {q2} is not congruent to -1 modulo q = {q}"),
        ));
    }
    if let Some(p) = p {
        if !is_prime_u64(p) {
            v.push(Violation::new("p-not-prime", format!("p = {p} is not prime")));
        }
        if p <= m {
            v.push(Violation::new(
                "p-not-above-m",
                format!("p = {p} must exceed m = {m}"),
            ));
        }
        if p == q {
            v.push(Violation::new("p-equals-q", format!("p = {p} equals q")));
        }
    }
    if !v.is_empty() {
        return Err(Error::InvalidParams(v));
    }
    Ok(ConstructionParams {
        q0,
        q1,
        q,
        d,
        m,
        q2,
        p,
        m_primes,
    })
}

/// Product of the primes strictly between `q` and `d(q−1)+1`: the smallest
/// admissible `m`.
pub fn minimal_m(q: u64, d: u32) -> u64 {
    let top = d as u64 * (q - 1) + 1;
    if top <= q + 1 {
        return 1;
    }
    primes_in_range(q + 1, top - 1).iter().product()
}
