//! Stirling numbers of the first kind, Bernoulli numbers, regular primes,
//! and the Stirling-coefficient polynomial family.
//!
//! `s(n, k)` is the (unsigned) coefficient of `xᵏ` in the rising factorial
//! `x(x+1)⋯(x+n−1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, padic_valuation, Rational};
use crate::error::{Error, Result};
use crate::poly::IntegerPolynomial;

/// Default largest `n` for [`StirlingTable::build`].
pub const DEFAULT_TABLE_CAP: usize = 200;

/// Triangular table `s(n, k)` for `0 <= k <= n <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Builds rows `0..=n` by `s(n+1, k) = s(n, k−1) + n·s(n, k)`, refusing
    /// `n > DEFAULT_TABLE_CAP`.
    pub fn build(n: usize) -> Result<Self> {
        Self::build_capped(n, DEFAULT_TABLE_CAP)
    }

    pub fn build_capped(n: usize, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::LimitExceeded {
                what: "Stirling table size",
                requested: n,
                cap,
            });
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        rows.push(vec![BigInt::one()]);
        for m in 0..n {
            let prev = &rows[m];
            let mut next = vec![BigInt::zero(); m + 2];
            for k in 0..=m + 1 {
                let mut v = BigInt::zero();
                if k >= 1 {
                    v += &prev[k - 1];
                }
                if k <= m {
                    v += &prev[k] * BigInt::from(m);
                }
                next[k] = v;
            }
            rows.push(next);
        }
        Ok(StirlingTable { rows })
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(n, k)`, zero for `k > n`.
    ///
    /// # Panics
    /// If `n` is beyond the table.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    /// Row `n` as `[s(n,0), …, s(n,n)]`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

/// `B₀ … B_N` as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl BernoulliCache {
    /// `Σ_{j=0}^{m} C(m+1, j) B_j = 0` for `m >= 1`, seeded with `B₀ = 1`
    /// (so `B₁ = −1/2`).
    pub fn build(n: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(n + 1);
        values.push(Rational::one());
        // binomial row C(m+1, ·), updated in place
        let mut binom: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        for m in 1..=n {
            let mut next = vec![BigInt::one(); m + 2];
            for j in 1..=m {
                next[j] = &binom[j - 1] + &binom[j];
            }
            binom = next;
            let mut acc = Rational::zero();
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * Rational::from_integer(binom[j].clone());
                }
            }
            values.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
        }
        BernoulliCache { values }
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An odd prime `p` is regular when it divides none of the numerators of
/// `B₀, …, B_{p−3}`.
pub fn is_regular_prime(p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    if p == 3 {
        return Ok(true);
    }
    let bern = BernoulliCache::build((p - 3) as usize);
    let p_big = BigInt::from(p);
    Ok(bern
        .values()
        .iter()
        .all(|b| b.is_zero() || !b.numer().is_multiple_of(&p_big)))
}

fn check_odd_prime(p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p == 2 {
        return Err(Error::Hypothesis("p must be an odd prime".into()));
    }
    Ok(())
}

/// Which closed form a valuation was compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValuationRule {
    /// `a = 1`: `ν_p(s(p, p−k)) = ε_k + 1`.
    ParityPlusOne,
    /// `k ≡ ε_k (mod p−1)`: `ν_p(s(ap, ap−k)) = (ν_p(k) + 1)·ε_k`.
    CongruentToParity,
    /// No unambiguous prediction; the measured value is only reported.
    Unasserted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationEntry {
    #[serde(with = "crate::decimal")]
    pub k: u64,
    #[serde(with = "crate::decimal")]
    pub stirling: BigInt,
    #[serde(with = "crate::decimal")]
    pub measured: u32,
    #[serde(with = "crate::decimal::option")]
    pub predicted: Option<u32>,
    pub rule: ValuationRule,
}

impl ValuationEntry {
    pub fn mismatch(&self) -> bool {
        self.predicted.is_some_and(|v| v != self.measured)
    }
}

/// Measured `ν_p(s(ap, ap−k))` for `2 <= k <= ap−2` next to their
/// predictions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationReport {
    #[serde(with = "crate::decimal")]
    pub p: u64,
    #[serde(with = "crate::decimal")]
    pub a: u64,
    pub entries: Vec<ValuationEntry>,
    #[serde(with = "crate::decimal::vec")]
    pub mismatches: Vec<u64>,
}

/// `ε_k`: 1 for odd `k`, 0 for even `k`.
pub fn parity_epsilon(k: u64) -> u32 {
    (k % 2) as u32
}

/// Compares Stirling valuations with their closed forms for a regular prime
/// `p >= 5` and `1 <= a <= p−1`.
pub fn verify_stirling_valuations(p: u64, a: u64) -> Result<ValuationReport> {
    check_odd_prime(p)?;
    if p < 5 {
        return Err(Error::Hypothesis(format!("p = {p} must be at least 5")));
    }
    if !is_regular_prime(p)? {
        return Err(Error::Hypothesis(format!("p = {p} is irregular")));
    }
    if a == 0 || a >= p {
        return Err(Error::Hypothesis(format!("a = {a} must lie in [1, {}]", p - 1)));
    }
    let n = (a * p) as usize;
    let table = StirlingTable::build_capped(n, n)?;
    let mut entries = Vec::new();
    for k in 2..=(a * p - 2) {
        let value = table.get(n, n - k as usize);
        let measured = padic_valuation(&value, p)?;
        let eps = parity_epsilon(k);
        let (rule, predicted) = if a == 1 {
            (ValuationRule::ParityPlusOne, Some(eps + 1))
        } else if k % (p - 1) == eps as u64 {
            let vk = padic_valuation(&BigInt::from(k), p)?;
            (ValuationRule::CongruentToParity, Some((vk + 1) * eps))
        } else {
            (ValuationRule::Unasserted, None)
        };
        entries.push(ValuationEntry {
            k,
            stirling: value,
            measured,
            predicted,
            rule,
        });
    }
    let mismatches = entries.iter().filter(|e| e.mismatch()).map(|e| e.k).collect();
    Ok(ValuationReport {
        p,
        a,
        entries,
        mismatches,
    })
}

/// `(x)_p − (p−1)!·x + pˢ` with `(x)_p = x(x+1)⋯(x+p−1)`, for a regular
/// prime `p >= 7` and `s >= 2`.
pub fn stirling_polynomial(p: u64, s: u32) -> Result<IntegerPolynomial> {
    check_odd_prime(p)?;
    if p < 7 {
        return Err(Error::Hypothesis(format!("p = {p} must be at least 7")));
    }
    if s < 2 {
        return Err(Error::Hypothesis(format!("s = {s} must be at least 2")));
    }
    if !is_regular_prime(p)? {
        return Err(Error::Hypothesis(format!("p = {p} is irregular")));
    }
    let shifts: Vec<BigInt> = (0..p).map(BigInt::from).collect();
    let mut coeffs = IntegerPolynomial::linear_product(&shifts).into_coeffs();
    let factorial: BigInt = (1..p).map(BigInt::from).product();
    coeffs[1] -= factorial;
    coeffs[0] += BigInt::from(BigUint::from(p).pow(s));
    debug_assert!(coeffs[1].is_zero() && !coeffs[0].is_negative());
    Ok(IntegerPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn table_examples() {
        let t = StirlingTable::build(7).unwrap();
        assert_eq!(t.get(3, 1), b(2));
        assert_eq!(t.get(4, 3), b(6));
        assert_eq!(t.get(7, 5), b(175));
        assert_eq!(t.get(7, 4), b(735));
        assert_eq!(t.row(4), &[b(0), b(6), b(11), b(6), b(1)]);
        assert_eq!(t.get(3, 5), b(0));
        // the rising factorial x(x+1)...(x+6) expanded by polynomial products
        let shifts: Vec<BigInt> = (0..7).map(BigInt::from).collect();
        assert_eq!(IntegerPolynomial::linear_product(&shifts).coeffs(), t.row(7));
        assert!(matches!(
            StirlingTable::build(201),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn closed_forms() {
        let t = StirlingTable::build(30).unwrap();
        let mut fact = BigInt::one();
        for n in 1..=30usize {
            assert_eq!(t.get(n, n), b(1));
            assert_eq!(t.get(n, 1), fact);
            assert_eq!(t.get(n, n - 1), b((n * (n - 1) / 2) as i64));
            assert_eq!(t.get(n, 0), b(0));
            assert_eq!(t.get(n, n + 1), b(0));
            fact *= n;
        }
    }

    #[test]
    fn bernoulli_examples() {
        let bern = BernoulliCache::build(12);
        assert_eq!(bern.get(0), &Rational::one());
        assert_eq!(format_rational(bern.get(1)), "-1/2");
        assert_eq!(format_rational(bern.get(2)), "1/6");
        assert_eq!(format_rational(bern.get(12)), "-691/2730");
        assert!(bern.get(3).is_zero());
    }

    #[test]
    fn regular_examples() {
        assert!(is_regular_prime(7).unwrap());
        assert!(is_regular_prime(5).unwrap());
        assert!(!is_regular_prime(37).unwrap());
        let bern = BernoulliCache::build(32);
        assert!(bern.get(32).numer().is_multiple_of(&b(37)));
        assert!(is_regular_prime(2).is_err());
        assert!(is_regular_prime(9).is_err());
    }

    #[test]
    fn valuation_examples() {
        let r = verify_stirling_valuations(7, 1).unwrap();
        let k2 = r.entries.iter().find(|e| e.k == 2).unwrap();
        assert_eq!((k2.stirling.clone(), k2.measured, k2.predicted), (b(175), 1, Some(1)));
        let k3 = r.entries.iter().find(|e| e.k == 3).unwrap();
        assert_eq!((k3.stirling.clone(), k3.measured, k3.predicted), (b(735), 2, Some(2)));
        assert!(r.mismatches.is_empty());

        let r = verify_stirling_valuations(5, 1).unwrap();
        let k2 = &r.entries[0];
        assert_eq!((k2.stirling.clone(), k2.measured, k2.predicted), (b(35), 1, Some(1)));

        assert!(verify_stirling_valuations(37, 1).is_err());
        assert!(verify_stirling_valuations(7, 7).is_err());
        assert!(verify_stirling_valuations(3, 1).is_err());
    }

    #[test]
    fn larger_multiples_report_congruent_cases() {
        let r = verify_stirling_valuations(7, 2).unwrap();
        assert!(r.mismatches.is_empty());
        let k7 = r.entries.iter().find(|e| e.k == 7).unwrap();
        assert_eq!(k7.rule, ValuationRule::CongruentToParity);
        assert_eq!(k7.predicted, Some(2));
        assert!(r.entries.iter().any(|e| e.rule == ValuationRule::Unasserted));
    }

    #[test]
    fn stirling_polynomial_example() {
        let f = stirling_polynomial(7, 2).unwrap();
        assert_eq!(f, IntegerPolynomial::from_i64(&[49, 0, 1764, 1624, 735, 175, 21, 1]));
        assert_eq!(
            f.reduce_mod(&BigUint::from(7u32)),
            IntegerPolynomial::monomial(BigInt::one(), 7)
        );
        assert!(stirling_polynomial(5, 2).is_err());
        assert!(stirling_polynomial(7, 1).is_err());
        assert!(stirling_polynomial(37, 2).is_err());
    }
}
