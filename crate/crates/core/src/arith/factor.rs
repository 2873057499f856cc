//! Budgeted integer factorization and squarefree certification.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::primes::{is_prime, primes_up_to};
use crate::error::{Error, Result};

/// How much work factorization may spend before giving up on a cofactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Effort {
    /// Trial division covers every prime `<= trial_bound`.
    pub trial_bound: u64,
    /// Iteration cap for each Pollard–Brent attempt on a composite cofactor.
    pub rho_iterations: u64,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            trial_bound: 1_000_000,
            rho_iterations: 500_000,
        }
    }
}

impl Effort {
    pub fn new(trial_bound: u64, rho_iterations: u64) -> Self {
        Effort {
            trial_bound: trial_bound.max(2),
            rho_iterations,
        }
    }
}

/// Outcome of a squarefree test that may be limited by the factoring budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquarefreeStatus {
    /// Fully factored, every exponent is 1.
    Squarefree,
    /// A square divisor was exhibited.
    NotSquarefree,
    /// No square of a prime `<= bound` divides the number; the rest is unknown.
    UpToBound(u64),
}

impl SquarefreeStatus {
    pub fn is_certified_squarefree(self) -> bool {
        self == SquarefreeStatus::Squarefree
    }

    /// True unless a square divisor is known.
    pub fn is_plausibly_squarefree(self) -> bool {
        self != SquarefreeStatus::NotSquarefree
    }
}

impl fmt::Display for SquarefreeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquarefreeStatus::Squarefree => f.write_str("squarefree"),
            SquarefreeStatus::NotSquarefree => f.write_str("not-squarefree"),
            SquarefreeStatus::UpToBound(b) => write!(f, "squarefree-up-to-{b}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
enum StatusRepr {
    Squarefree,
    NotSquarefree,
    UpToBound { bound: String },
}

impl Serialize for SquarefreeStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SquarefreeStatus::Squarefree => StatusRepr::Squarefree,
            SquarefreeStatus::NotSquarefree => StatusRepr::NotSquarefree,
            SquarefreeStatus::UpToBound(b) => StatusRepr::UpToBound {
                bound: b.to_string(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SquarefreeStatus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match StatusRepr::deserialize(d)? {
            StatusRepr::Squarefree => SquarefreeStatus::Squarefree,
            StatusRepr::NotSquarefree => SquarefreeStatus::NotSquarefree,
            StatusRepr::UpToBound { bound } => {
                SquarefreeStatus::UpToBound(bound.parse().map_err(de::Error::custom)?)
            }
        })
    }
}

/// `sign · ∏ pᵉ · cofactor`, where the cofactor is the part the budget could
/// not split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    sign: i8,
    factors: BTreeMap<BigUint, u32>,
    cofactor: BigUint,
    sf_bound: u64,
}

impl FactoredInteger {
    /// Assembles a factorization from parts. Keys must be prime and the
    /// cofactor must have no prime factor `<= sf_bound`; neither is checked
    /// here beyond a debug assertion on primality.
    pub fn from_parts(
        sign: i8,
        factors: BTreeMap<BigUint, u32>,
        cofactor: BigUint,
        sf_bound: u64,
    ) -> Self {
        debug_assert!(factors.keys().all(is_prime));
        debug_assert!(!cofactor.is_zero());
        FactoredInteger {
            sign,
            factors: factors.into_iter().filter(|(_, e)| *e > 0).collect(),
            cofactor,
            sf_bound,
        }
    }

    pub fn one() -> Self {
        FactoredInteger::from_parts(1, BTreeMap::new(), BigUint::one(), 0)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, u32> {
        &self.factors
    }

    pub fn cofactor(&self) -> &BigUint {
        &self.cofactor
    }

    pub fn sf_bound(&self) -> u64 {
        self.sf_bound
    }

    pub fn is_fully_factored(&self) -> bool {
        self.cofactor.is_one()
    }

    /// Exponent of `p` among the factored primes (the cofactor is ignored).
    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    /// Multiplies everything back together.
    pub fn value(&self) -> BigInt {
        let mut acc = self.cofactor.clone();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        let sign = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, acc)
    }

    pub fn abs_value(&self) -> BigUint {
        self.value().magnitude().clone()
    }

    /// Product of two factorizations; exponents add and cofactors multiply.
    pub fn merge(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            *factors.entry(p.clone()).or_insert(0) += e;
        }
        let sf_bound = match (self.cofactor.is_one(), other.cofactor.is_one()) {
            (true, true) => self.sf_bound.max(other.sf_bound),
            (true, false) => other.sf_bound,
            (false, true) => self.sf_bound,
            (false, false) => self.sf_bound.min(other.sf_bound),
        };
        FactoredInteger {
            sign: self.sign * other.sign,
            factors,
            cofactor: &self.cofactor * &other.cofactor,
            sf_bound,
        }
    }

    pub fn squarefree_status(&self) -> SquarefreeStatus {
        if self.factors.values().any(|&e| e >= 2) {
            return SquarefreeStatus::NotSquarefree;
        }
        if self.cofactor.is_one() {
            return SquarefreeStatus::Squarefree;
        }
        let r = self.cofactor.sqrt();
        if &r * &r == self.cofactor {
            return SquarefreeStatus::NotSquarefree;
        }
        // keys and cofactor are coprime for a single `factorize` result;
        // merged products are checked by `factorize_product`
        SquarefreeStatus::UpToBound(self.sf_bound)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if !self.cofactor.is_one() {
            parts.push(format!("[{}]", self.cofactor));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", parts.join(" * "))
    }
}

struct FactorMap<'a>(&'a BTreeMap<BigUint, u32>);

impl Serialize for FactorMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, e) in self.0 {
            map.serialize_entry(&p.to_string(), &e.to_string())?;
        }
        map.end()
    }
}

impl Serialize for FactoredInteger {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("sign", &self.sign)?;
        map.serialize_entry("factors", &FactorMap(&self.factors))?;
        map.serialize_entry("cofactor", &self.cofactor.to_string())?;
        map.serialize_entry("sf_bound", &self.sf_bound.to_string())?;
        map.end()
    }
}

#[derive(Deserialize)]
struct FactoredRepr {
    sign: i8,
    factors: BTreeMap<String, String>,
    cofactor: String,
    sf_bound: String,
}

impl<'de> Deserialize<'de> for FactoredInteger {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FactoredRepr::deserialize(d)?;
        if !matches!(raw.sign, -1 | 1) {
            return Err(de::Error::custom("sign must be +1 or -1"));
        }
        let mut factors = BTreeMap::new();
        for (p, e) in raw.factors {
            let p: BigUint = p.parse().map_err(de::Error::custom)?;
            if !is_prime(&p) {
                return Err(de::Error::custom(format!("factor {p} is not prime")));
            }
            let e: u32 = e.parse().map_err(de::Error::custom)?;
            factors.insert(p, e);
        }
        let cofactor: BigUint = raw.cofactor.parse().map_err(de::Error::custom)?;
        if cofactor.is_zero() {
            return Err(de::Error::custom("cofactor must be positive"));
        }
        Ok(FactoredInteger {
            sign: raw.sign,
            factors,
            cofactor,
            sf_bound: raw.sf_bound.parse().map_err(de::Error::custom)?,
        })
    }
}

/// Removes every prime `<= bound` from `n`, recording exponents. Returns the
/// remaining part.
fn trial_divide(mut n: BigUint, bound: u64, factors: &mut BTreeMap<BigUint, u32>) -> BigUint {
    let primes = primes_up_to(bound);
    // Batch several primes into one 64-bit modulus so most primes cost a
    // single-word remainder instead of a big division.
    let mut i = 0;
    while i < primes.len() {
        if n.is_one() {
            break;
        }
        let p0 = primes[i];
        if let Some(small) = n.to_u64() {
            if p0.saturating_mul(p0) > small {
                break;
            }
        }
        let mut batch_end = i;
        let mut modulus: u64 = 1;
        while batch_end < primes.len() {
            match modulus.checked_mul(primes[batch_end]) {
                Some(m) => {
                    modulus = m;
                    batch_end += 1;
                }
                None => break,
            }
        }
        let r = (&n % modulus).to_u64().unwrap();
        for &p in &primes[i..batch_end] {
            if r.is_multiple_of(p) {
                let mut e = 0;
                loop {
                    let (q, rem) = n.div_rem(&BigUint::from(p));
                    if !rem.is_zero() {
                        break;
                    }
                    n = q;
                    e += 1;
                }
                factors.insert(BigUint::from(p), e);
            }
        }
        i = batch_end;
    }
    if !n.is_one() {
        if let Some(small) = n.to_u64() {
            let last = primes.last().copied().unwrap_or(1);
            if last.saturating_mul(last) >= small {
                // everything below sqrt(n) was tried, so n is prime
                *factors.entry(n).or_insert(0) += 1;
                return BigUint::one();
            }
        }
    }
    n
}

/// Pollard–Brent on an odd composite `n`. Returns a nontrivial divisor, or
/// `None` once `max_iters` steps are spent across all attempts.
#[allow(unused_assignments)]
fn pollard_brent(n: &BigUint, max_iters: u64) -> Option<BigUint> {
    const BLOCK: u64 = 128;
    let mut spent = 0u64;
    for c in 1u32.. {
        if spent >= max_iters {
            return None;
        }
        let c = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x;
        let mut q = BigUint::one();
        let mut r = 1u64;
        let mut g = BigUint::one();
        let mut ys = y.clone();
        'outer: loop {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r {
                ys = y.clone();
                let block = BLOCK.min(r - k);
                for _ in 0..block {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                spent += block;
                g = q.gcd(n);
                k += block;
                if !g.is_one() || spent >= max_iters {
                    break 'outer;
                }
            }
            r *= 2;
        }
        if g == *n {
            // backtrack one step at a time from the saved position
            loop {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// Splits `n` (no prime factors `<= trial bound`) into primes, leaving any
/// part the rho budget could not split in the returned cofactor.
fn split_large(n: BigUint, effort: &Effort, factors: &mut BTreeMap<BigUint, u32>) -> BigUint {
    let mut cofactor = BigUint::one();
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *factors.entry(m).or_insert(0) += 1;
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        match pollard_brent(&m, effort.rho_iterations) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => cofactor *= m,
        }
    }
    cofactor
}

/// Factors `n` within `effort`. A budget shortfall shows up as a cofactor
/// different from 1; it is never an error.
pub fn factorize(n: &BigInt, effort: &Effort) -> Result<FactoredInteger> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut factors = BTreeMap::new();
    let rest = trial_divide(n.magnitude().clone(), effort.trial_bound, &mut factors);
    let cofactor = split_large(rest, effort, &mut factors);
    Ok(FactoredInteger {
        sign,
        factors,
        cofactor,
        sf_bound: effort.trial_bound,
    })
}

/// Factors a product by factoring each term separately and merging.
///
/// Shared factors between terms whose cofactors stay unsplit are detected
/// with pairwise gcds; when such a shared part exists the returned status is
/// [`SquarefreeStatus::NotSquarefree`] even if it cannot be expressed as a
/// prime key.
pub fn factorize_product(
    terms: &[BigInt],
    effort: &Effort,
) -> Result<(FactoredInteger, SquarefreeStatus)> {
    let mut acc = FactoredInteger::one();
    acc.sf_bound = effort.trial_bound;
    let mut shared = false;
    for (i, a) in terms.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        for b in &terms[i + 1..] {
            if !a.gcd(b).is_one() {
                shared = true;
            }
        }
        acc = acc.merge(&factorize(a, effort)?);
    }
    let status = if shared {
        SquarefreeStatus::NotSquarefree
    } else {
        acc.squarefree_status()
    };
    Ok((acc, status))
}

/// Splits a factorization into the part with exponents `>= 2` and the part
/// with exponent 1. Any unsplit cofactor goes with the squarefree part; the
/// caller decides whether its `UpToBound` status is acceptable.
pub fn squarefull_split(f: &FactoredInteger) -> Result<(FactoredInteger, FactoredInteger)> {
    let (full, free): (BTreeMap<_, _>, BTreeMap<_, _>) = f
        .factors
        .iter()
        .map(|(p, e)| (p.clone(), *e))
        .partition(|(_, e)| *e >= 2);
    Ok((
        FactoredInteger {
            sign: 1,
            factors: full,
            cofactor: BigUint::one(),
            sf_bound: f.sf_bound,
        },
        FactoredInteger {
            sign: f.sign,
            factors: free,
            cofactor: f.cofactor.clone(),
            sf_bound: f.sf_bound,
        },
    ))
}

/// Squarefree test backed by [`factorize`].
pub fn is_squarefree(n: &BigInt, effort: &Effort) -> Result<SquarefreeStatus> {
    Ok(factorize(n, effort)?.squarefree_status())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn map(pairs: &[(u64, u32)]) -> BTreeMap<BigUint, u32> {
        pairs.iter().map(|&(p, e)| (BigUint::from(p), e)).collect()
    }

    fn oracle(mut n: u64) -> BTreeMap<BigUint, u32> {
        let mut out = BTreeMap::new();
        let mut d = 2;
        while d * d <= n {
            while n.is_multiple_of(d) {
                *out.entry(BigUint::from(d)).or_insert(0) += 1;
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            *out.entry(BigUint::from(n)).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn spec_examples() {
        let f = factorize(&big(735), &Effort::default()).unwrap();
        assert_eq!(f.factors(), &map(&[(3, 1), (5, 1), (7, 2)]));
        assert!(f.is_fully_factored());
        assert_eq!(f.factors(), &oracle(735));

        let f = factorize(&big(-20), &Effort::default()).unwrap();
        assert_eq!(f.sign(), -1);
        assert_eq!(f.factors(), &map(&[(2, 2), (5, 1)]));

        let f = factorize(&big(1), &Effort::default()).unwrap();
        assert_eq!(f.sign(), 1);
        assert!(f.factors().is_empty());
        assert!(f.cofactor().is_one());

        assert_eq!(factorize(&big(0), &Effort::default()), Err(Error::ZeroInput));
    }

    #[test]
    fn matches_trial_division_oracle() {
        let effort = Effort::new(100, 10_000);
        for n in 1..3000u64 {
            let f = factorize(&BigInt::from(n), &effort).unwrap();
            assert!(f.is_fully_factored(), "{n}");
            assert_eq!(f.factors(), &oracle(n), "{n}");
        }
    }

    #[test]
    fn rho_splits_beyond_trial_bound() {
        let p: u64 = 1_000_000_007;
        let q: u64 = 998_244_353;
        let n = BigInt::from(p) * BigInt::from(q) * BigInt::from(q);
        let f = factorize(&n, &Effort::new(1000, 1_000_000)).unwrap();
        assert!(f.is_fully_factored());
        assert_eq!(f.factors(), &map(&[(q, 2), (p, 1)]));
        assert_eq!(f.squarefree_status(), SquarefreeStatus::NotSquarefree);
        // the example's 1391584609 · 2250428973642280359353 split
        let n: BigInt = "3131662323368264019738623997977".parse().unwrap();
        let f = factorize(&n, &Effort::default()).unwrap();
        assert!(f.is_fully_factored());
        assert_eq!(f.value(), n);
    }

    #[test]
    fn squarefull_split_examples() {
        let n = BigInt::from(7u64.pow(7)) * BigInt::from(11u64.pow(6)) * 13;
        let f = factorize(&n, &Effort::default()).unwrap();
        let (full, free) = squarefull_split(&f).unwrap();
        assert_eq!(full.value(), BigInt::from(7u64.pow(7)) * BigInt::from(11u64.pow(6)));
        assert_eq!(free.value(), big(13));

        let (full, free) = squarefull_split(&factorize(&big(20), &Effort::default()).unwrap()).unwrap();
        assert_eq!((full.value(), free.value()), (big(4), big(5)));
        let (full, free) = squarefull_split(&factorize(&big(30), &Effort::default()).unwrap()).unwrap();
        assert_eq!((full.value(), free.value()), (big(1), big(30)));
    }

    #[test]
    fn squarefree_examples() {
        let e = Effort::default();
        assert_eq!(is_squarefree(&big(30), &e).unwrap(), SquarefreeStatus::Squarefree);
        assert_eq!(is_squarefree(&big(49), &e).unwrap(), SquarefreeStatus::NotSquarefree);

        // 11 · 13 · P · Q with two 20-digit primes: rho cannot split it on a
        // small budget, so only the trial bound is certified.
        let p: BigInt = "100000000000000000039".parse().unwrap();
        let q: BigInt = "100000000000000000129".parse().unwrap();
        assert!(is_prime_int(&p) && is_prime_int(&q));
        let n = BigInt::from(11 * 13) * &p * &q;
        let small = Effort::new(10_000, 2_000);
        let f = factorize(&n, &small).unwrap();
        assert_eq!(f.value(), n);
        assert_eq!(f.cofactor(), &(&p * &q).to_biguint().unwrap());
        assert_eq!(f.squarefree_status(), SquarefreeStatus::UpToBound(10_000));
        // p² in the cofactor is recognised as a square even without factoring
        let n = BigInt::from(11 * 13) * &p * &p;
        assert_eq!(is_squarefree(&n, &small).unwrap(), SquarefreeStatus::NotSquarefree);
    }

    fn is_prime_int(n: &BigInt) -> bool {
        super::super::primes::is_prime_int(n)
    }

    #[test]
    fn product_detects_shared_cofactors() {
        let p: BigInt = "100000000000000000039".parse().unwrap();
        let q: BigInt = "100000000000000000129".parse().unwrap();
        let r: BigInt = "100000000000000000151".parse().unwrap();
        let small = Effort::new(1000, 100);
        let (f, status) = factorize_product(&[&p * &q, &q * &r], &small).unwrap();
        assert_eq!(status, SquarefreeStatus::NotSquarefree);
        assert_eq!(f.value(), &p * &q * &q * &r);
        let (_, status) = factorize_product(&[BigInt::from(6), BigInt::from(35)], &small).unwrap();
        assert_eq!(status, SquarefreeStatus::Squarefree);
    }

    #[test]
    fn json_shape() {
        let f = factorize(&big(-20), &Effort::default()).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"sign":-1,"factors":{"2":"2","5":"1"},"cofactor":"1","sf_bound":"1000000"}"#
        );
        let back: FactoredInteger = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FactoredInteger>(
            r#"{"sign":1,"factors":{"4":"1"},"cofactor":"1","sf_bound":"10"}"#
        )
        .is_err());
    }
}
