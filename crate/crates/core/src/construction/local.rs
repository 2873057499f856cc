use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ConstructionParams;
use crate::arith::{is_prime_u64, primes_up_to, Rational};
use crate::error::{Error, Result};
use crate::poly::{eval_residues, IntegerPolynomial};

/// Where a prime `r` sits relative to `q` and `d(q−1)+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolubilityCase {
    /// `r < q`
    BelowQ,
    /// `r = q`
    EqualsQ,
    /// `q < r <= d(q−1)+1`
    Middle,
    /// `r >= d(q−1)+2`
    Large,
}

impl SolubilityCase {
    pub fn classify(r: u64, params: &ConstructionParams) -> Self {
        let q = params.q();
        if r < q {
            SolubilityCase::BelowQ
        } else if r == q {
            SolubilityCase::EqualsQ
        } else if r <= params.middle_bound() {
            SolubilityCase::Middle
        } else {
            SolubilityCase::Large
        }
    }

    /// The witness the case analysis promises, if it names one.
    pub fn predicted_witness(self) -> Option<u64> {
        match self {
            SolubilityCase::BelowQ | SolubilityCase::EqualsQ | SolubilityCase::Middle => Some(1),
            SolubilityCase::Large => None,
        }
    }
}

/// A unit `z` modulo `r²` with `f(z) ≢ 0 (mod r²)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWitness {
    pub r: u64,
    /// Smallest witness found by scanning `z = 1, 2, …`.
    pub z: u64,
    pub case: Option<SolubilityCase>,
    pub predicted: Option<u64>,
    /// Whether the predicted witness works. `None` when there is none.
    pub prediction_holds: Option<bool>,
    /// `f(z) mod r²`
    pub value_mod_r2: u64,
}

fn r_squared(r: u64) -> Result<u64> {
    if !is_prime_u64(r) {
        return Err(Error::NotPrime(r.to_string()));
    }
    r.checked_mul(r)
        .filter(|&m| m < 1 << 62)
        .ok_or(Error::LimitExceeded {
            what: "prime for a mod r^2 scan",
            requested: r as usize,
            cap: 1 << 31,
        })
}

/// Scans units `z = 1, 2, …` modulo `r²` for one with `f(z) ≢ 0`. With
/// `params` the case of `r` is classified and its predicted witness tested;
/// the scan result is authoritative either way.
pub fn local_solubility_witness(
    f: &IntegerPolynomial,
    r: u64,
    params: Option<&ConstructionParams>,
) -> Result<LocalWitness> {
    let r2 = r_squared(r)?;
    let res = f.residues(r2);
    let found = (1..r2)
        .filter(|z| z % r != 0)
        .map(|z| (z, eval_residues(&res, z, r2)))
        .find(|&(_, v)| v != 0);
    let (z, value) = found.ok_or_else(|| Error::NoWitness { r: r.to_string() })?;
    let case = params.map(|p| SolubilityCase::classify(r, p));
    let predicted = case.and_then(SolubilityCase::predicted_witness);
    let prediction_holds = predicted.map(|w| eval_residues(&res, w, r2) != 0);
    Ok(LocalWitness {
        r,
        z,
        case,
        predicted,
        prediction_holds,
        value_mod_r2: value,
    })
}

/// `ρ_f(r²)`: the number of units `z` modulo `r²` with `f(z) ≡ 0 (mod r²)`.
///
/// Every such `z` reduces to a nonzero root of `f` modulo `r`, so the scan
/// runs over the `r` lifts of each of those roots instead of all of
/// `(ℤ/r²ℤ)*`.
pub fn rho_squared(f: &IntegerPolynomial, r: u64) -> Result<u64> {
    let r2 = r_squared(r)?;
    let res2 = f.residues(r2);
    let res1: Vec<u64> = res2.iter().map(|c| c % r).collect();
    let mut count = 0;
    for z0 in 1..r {
        if eval_residues(&res1, z0, r) != 0 {
            continue;
        }
        count += (0..r)
            .filter(|t| eval_residues(&res2, z0 + t * r, r2) == 0)
            .count() as u64;
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityEntry {
    #[serde(with = "crate::decimal")]
    pub r: u64,
    #[serde(with = "crate::decimal")]
    pub rho: u64,
    /// `1 − ρ/(r(r−1))`
    #[serde(with = "crate::decimal")]
    pub factor: Rational,
    /// Product of the factors up to and including this one.
    #[serde(with = "crate::decimal")]
    pub running: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    #[serde(with = "crate::decimal")]
    pub prime_bound: u64,
    pub entries: Vec<DensityEntry>,
    #[serde(with = "crate::decimal")]
    pub partial_product: Rational,
    /// Primes whose factor vanishes; any entry here forces the constant to 0.
    #[serde(with = "crate::decimal::vec")]
    pub zero_factors: Vec<u64>,
}

/// Exact partial product `∏_{r <= bound} (1 − ρ_f(r²)/(r(r−1)))`.
pub fn density_constant(f: &IntegerPolynomial, prime_bound: u64) -> Result<DensityReport> {
    if prime_bound < 2 {
        return Err(Error::Hypothesis(format!(
            "prime bound {prime_bound} must be at least 2"
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let primes = primes_up_to(prime_bound);
    let rhos = primes
        .par_iter()
        .map(|&r| rho_squared(f, r))
        .collect::<Result<Vec<u64>>>()?;
    let mut running = Rational::one();
    let mut entries = Vec::with_capacity(primes.len());
    let mut zero_factors = Vec::new();
    for (&r, &rho) in primes.iter().zip(&rhos) {
        let units = BigInt::from(r) * BigInt::from(r - 1);
        let factor = Rational::one() - Rational::new(BigInt::from(rho), units);
        if factor.is_zero() {
            zero_factors.push(r);
        }
        running = &running * &factor;
        entries.push(DensityEntry {
            r,
            rho,
            factor,
            running: running.clone(),
        });
    }
    Ok(DensityReport {
        prime_bound,
        entries,
        partial_product: running,
        zero_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_rho(f: &IntegerPolynomial, r: u64) -> u64 {
        let r2 = r * r;
        (1..r2)
            .filter(|z| z % r != 0 && f.evaluate_mod(*z, r2) == 0)
            .count() as u64
    }

    #[test]
    fn rho_matches_full_scan() {
        let polys = [
            IntegerPolynomial::from_i64(&[-1, 0, 1]),
            IntegerPolynomial::from_i64(&[4, 0, 1]),
            IntegerPolynomial::from_i64(&[0, 0, 0, 1]),
            IntegerPolynomial::from_i64(&[-8, 0, 0, 1]),
            IntegerPolynomial::from_i64(&[18, -9, 1]),
        ];
        for f in &polys {
            for r in [2, 3, 5, 7, 11, 13] {
                assert_eq!(rho_squared(f, r).unwrap(), brute_rho(f, r), "{f} at {r}");
            }
        }
    }

    #[test]
    fn density_examples() {
        let x = IntegerPolynomial::x();
        let rep = density_constant(&x, 100).unwrap();
        assert!(rep.entries.iter().all(|e| e.rho == 0));
        assert_eq!(rep.partial_product, Rational::one());

        let f = IntegerPolynomial::from_i64(&[-1, 0, 1]);
        let rep = density_constant(&f, 10).unwrap();
        assert_eq!(rep.entries[0].rho, 2);
        assert_eq!(rep.zero_factors, [2]);
        assert!(rep.partial_product.is_zero());
        assert!(density_constant(&f, 1).is_err());
    }

    #[test]
    fn witness_scan() {
        let f = IntegerPolynomial::from_i64(&[-1, 0, 1]);
        assert!(matches!(
            local_solubility_witness(&f, 2, None),
            Err(Error::NoWitness { .. })
        ));
        let w = local_solubility_witness(&f, 3, None).unwrap();
        assert_eq!((w.z, w.value_mod_r2, w.case), (2, 3, None));
        assert!(local_solubility_witness(&f, 9, None).is_err());
    }
}
