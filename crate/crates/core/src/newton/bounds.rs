use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::polygon::{phi_index, phi_newton_polygon, NewtonPolygon};
use crate::arith::{is_prime_u64, primes_up_to};
use crate::error::{Error, Result};
use crate::poly::{irreducible_mod_p_witness, FpPoly, IntegerPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    Ore,
    JakharKhanduja,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexVerdict {
    NonMonogenic,
    Inconclusive,
}

/// Which case of the `uᵢ` formula applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UBranch {
    /// `tᵢ > eᵢ/(l+1)`: `((eᵢ−1)l + gcd(eᵢ, l+1) − 1)/2`
    AboveThreshold,
    /// otherwise: `max{l·tᵢ, ((eᵢ−1)(l−1) + gcd(eᵢ, l) − 1)/2}`
    Otherwise,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JkRecord {
    #[serde(with = "crate::decimal")]
    pub l: u64,
    /// Multiplicity of `φ̄ᵢ` in `N̄`.
    #[serde(with = "crate::decimal")]
    pub t: u64,
    #[serde(with = "crate::decimal")]
    pub u: u64,
    pub branch: UBranch,
    #[serde(with = "crate::decimal")]
    pub u_above_threshold: u64,
    #[serde(with = "crate::decimal")]
    pub u_otherwise: u64,
    /// `tᵢ·(l+1) = eᵢ` exactly.
    pub at_threshold: bool,
    pub branches_disagree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    /// Monic lift of the residue factor with coefficients in `[0, p)`.
    pub phi: IntegerPolynomial,
    #[serde(with = "crate::decimal")]
    pub multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygon: Option<NewtonPolygon>,
    #[serde(default, with = "crate::decimal::option", skip_serializing_if = "Option::is_none")]
    pub ind_phi: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jk: Option<JkRecord>,
}

/// A lower bound on `ν_p(ind f)` with the data it was derived from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexBoundReport {
    #[serde(with = "crate::decimal")]
    pub p: u64,
    pub method: BoundMethod,
    pub factors: Vec<FactorRecord>,
    #[serde(with = "crate::decimal")]
    pub total_lower_bound: u64,
    /// Prime modulo which `f` is irreducible, when one was supplied.
    #[serde(default, with = "crate::decimal::option")]
    pub irreducibility_witness: Option<u64>,
    pub verdict: IndexVerdict,
}

impl IndexBoundReport {
    /// Records an irreducibility witness and sets the verdict accordingly.
    pub fn with_witness(mut self, witness: Option<u64>) -> Self {
        self.irreducibility_witness = witness;
        self.verdict = if witness.is_some() && self.total_lower_bound >= 1 {
            IndexVerdict::NonMonogenic
        } else {
            IndexVerdict::Inconclusive
        };
        self
    }
}

fn residue_factors(f: &IntegerPolynomial, p: u64) -> Result<Vec<(IntegerPolynomial, u32)>> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeTooSmall(1));
    }
    Ok(FpPoly::from_integer(f, p)
        .factor()
        .into_iter()
        .map(|(g, e)| (g.to_integer(), e))
        .collect())
}

/// Ore's bound `Σ ind_φᵢ(f)` over the irreducible factors of `f mod p`.
pub fn ore_bound(f: &IntegerPolynomial, p: u64) -> Result<IndexBoundReport> {
    let mut factors = Vec::new();
    let mut total = 0;
    for (phi, e) in residue_factors(f, p)? {
        let polygon = phi_newton_polygon(f, &phi, p)?;
        let ind = phi_index(&polygon);
        total += ind;
        factors.push(FactorRecord {
            phi,
            multiplicity: e as u64,
            polygon: Some(polygon),
            ind_phi: Some(ind),
            jk: None,
        });
    }
    Ok(IndexBoundReport {
        p,
        method: BoundMethod::Ore,
        factors,
        total_lower_bound: total,
        irreducibility_witness: None,
        verdict: IndexVerdict::Inconclusive,
    })
}

/// Evaluates both cases of the `uᵢ` formula and picks the one whose
/// condition holds; the comparison `t > e/(l+1)` is done as `t(l+1) > e`.
pub fn u_value(e: u64, l: u64, t: u64) -> JkRecord {
    let above = ((e - 1) * l + e.gcd(&(l + 1)) - 1) / 2;
    let otherwise = (l * t).max(((e - 1) * (l - 1) + e.gcd(&l) - 1) / 2);
    let lhs = t * (l + 1);
    let branch = if lhs > e {
        UBranch::AboveThreshold
    } else {
        UBranch::Otherwise
    };
    JkRecord {
        l,
        t,
        u: match branch {
            UBranch::AboveThreshold => above,
            UBranch::Otherwise => otherwise,
        },
        branch,
        u_above_threshold: above,
        u_otherwise: otherwise,
        at_threshold: lhs == e,
        branches_disagree: above != otherwise,
    }
}

/// The Jakhar–Khanduja bound `Σ uᵢ·deg φᵢ`, with
/// `f = ∏φᵢ^{eᵢ} + pˡ·N` and `l` the exact valuation of the difference.
pub fn jk_bound(f: &IntegerPolynomial, p: u64) -> Result<IndexBoundReport> {
    let residue = residue_factors(f, p)?;
    // With f mod p squarefree the index is prime to p.
    let squarefree_mod_p = residue.iter().all(|(_, e)| *e == 1);
    let residual = match jk_residual(f, p) {
        Ok(r) => Some(r),
        Err(Error::Degenerate(_)) if squarefree_mod_p => None,
        Err(e) => return Err(e),
    };
    let mut factors = Vec::new();
    let mut total = 0;
    for (phi, e) in residue {
        let rec = residual.as_ref().map(|(l, n_bar)| {
            let t = n_bar.multiplicity_of(&FpPoly::from_integer(&phi, p)) as u64;
            u_value(e as u64, *l as u64, t)
        });
        total += rec.as_ref().map_or(0, |r| r.u) * phi.degree().unwrap_or(0) as u64;
        factors.push(FactorRecord {
            phi,
            multiplicity: e as u64,
            polygon: None,
            ind_phi: None,
            jk: rec,
        });
    }
    Ok(IndexBoundReport {
        p,
        method: BoundMethod::JakharKhanduja,
        factors,
        total_lower_bound: total,
        irreducibility_witness: None,
        verdict: IndexVerdict::Inconclusive,
    })
}

/// `N̄ = ((f − ∏φᵢ^{eᵢ})/pˡ) mod p`, exposed for reports and tests.
pub fn jk_residual(f: &IntegerPolynomial, p: u64) -> Result<(u32, FpPoly)> {
    let residue = residue_factors(f, p)?;
    let product = residue
        .iter()
        .fold(IntegerPolynomial::one(), |acc, (phi, e)| acc.multiply(&phi.pow(*e)));
    let diff = f - &product;
    let l = diff
        .content_valuation(p)
        .ok_or_else(|| Error::Degenerate("f equals the product of its residue factor lifts".into()))?;
    let n = diff.div_exact(&BigInt::from(p).pow(l)).expect("p^l divides");
    Ok((l, FpPoly::from_integer(&n, p)))
}

/// Default primes tried for an irreducibility witness.
pub fn default_witness_primes() -> Vec<u64> {
    primes_up_to(1000).to_vec()
}

/// Both bounds for the Stirling family plus the shape checks on its
/// `x`-Newton polygon at `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMonogenicReport {
    #[serde(with = "crate::decimal")]
    pub p: u64,
    #[serde(with = "crate::decimal")]
    pub s: u64,
    pub polynomial: IntegerPolynomial,
    #[serde(default, with = "crate::decimal::option")]
    pub irreducibility_witness: Option<u64>,
    pub ore: IndexBoundReport,
    pub jk: IndexBoundReport,
    pub expected_vertices: Vec<super::Point>,
    pub vertex_pattern_holds: bool,
    pub one_one_strictly_below: bool,
    pub verdict: IndexVerdict,
}

/// Certifies that `(x)_p − (p−1)!·x + pˢ` is not monogenic, given that it
/// is irreducible modulo one of `witness_primes`.
pub fn certify_non_monogenic(p: u64, s: u32, witness_primes: &[u64]) -> Result<NonMonogenicReport> {
    let f = crate::stirling::stirling_polynomial(p, s)?;
    let witness = irreducible_mod_p_witness(&f, witness_primes);
    let ore = ore_bound(&f, p)?.with_witness(witness);
    let jk = jk_bound(&f, p)?.with_witness(witness);
    let x = IntegerPolynomial::x();
    let polygon = phi_newton_polygon(&f, &x, p)?;
    let s = s as u64;
    let expected: Vec<super::Point> = if s <= 4 {
        vec![(0, s).into(), (3, 1).into(), (p, 0).into()]
    } else {
        vec![(0, s).into(), (2, 2).into(), (3, 1).into(), (p, 0).into()]
    };
    let verdict = if witness.is_some() && ore.total_lower_bound.min(jk.total_lower_bound) >= 1 {
        IndexVerdict::NonMonogenic
    } else {
        IndexVerdict::Inconclusive
    };
    Ok(NonMonogenicReport {
        p,
        s,
        polynomial: f,
        irreducibility_witness: witness,
        vertex_pattern_holds: polygon.vertices == expected,
        one_one_strictly_below: polygon.strictly_below((1, 1).into()),
        expected_vertices: expected,
        ore,
        jk,
        verdict,
    })
}
