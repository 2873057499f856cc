use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::build::{
    assemble_f, build_construction, build_f_product, compute_cd, discriminant_identity_check,
    CdValues, IdentityCheck,
};
use super::search::{coprime_to_qm, factor_values};
use super::ConstructionParams;
use crate::arith::{factorize_product, Effort, FactoredInteger, SquarefreeStatus};
use crate::error::{Error, Result};
use crate::poly::IntegerPolynomial;

pub const CERTIFICATE_SCHEMA: &str = "monogenicity-certificate";
pub const CERTIFICATE_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Monogenic,
    Inconclusive,
}

/// Evidence that `F = F₀ + q·m·pᵈ` is monogenic.
///
/// `|Δ(F)|` splits as `q^q·m^{q−1}` times `|f(p)|`. Eisenstein at `q` and at
/// each prime of `m` puts the first part inside `Δ(K)`; a squarefree `f(p)`
/// coprime to `q·m` does the same for the second, leaving index 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonogenicityCertificate {
    pub schema: String,
    pub version: String,
    pub params: ConstructionParams,
    pub polynomial: Option<IntegerPolynomial>,
    pub cd: Option<CdValues>,
    pub identity: Option<IdentityCheck>,
    pub identity_checked: bool,
    /// `q^q · m^{q−1}`
    pub forced_part: FactoredInteger,
    /// `f(p) = ∏ hᵢ(p) · ∏ kⱼ(p)`
    pub variable_part: Option<FactoredInteger>,
    pub variable_status: Option<SquarefreeStatus>,
    pub coprime_to_qm: bool,
    /// `Δ(F)` with its sign.
    pub delta: Option<FactoredInteger>,
    #[serde(with = "crate::decimal::vec")]
    pub required_eisenstein_primes: Vec<u64>,
    #[serde(with = "crate::decimal::vec")]
    pub eisenstein_primes: Vec<u64>,
    pub verdict: Verdict,
    pub failed_links: Vec<String>,
    pub notes: Vec<String>,
}

impl MonogenicityCertificate {
    /// `ν_r(Δ(F))` over the factored primes.
    pub fn delta_valuation(&self, r: u64) -> Option<u32> {
        self.delta.as_ref().map(|d| d.exponent(&BigUint::from(r)))
    }
}

fn forced_part(params: &ConstructionParams) -> FactoredInteger {
    let q = params.q() as u32;
    let mut factors = BTreeMap::new();
    factors.insert(BigUint::from(params.q()), q);
    for &r in params.m_primes() {
        factors.insert(BigUint::from(r), q - 1);
    }
    FactoredInteger::from_parts(1, factors, BigUint::from(1u32), 0)
}

/// Runs the whole chain for parameters with `p` fixed. Hypothesis errors
/// are returned as errors; any link that fails afterwards makes the verdict
/// inconclusive and is named in `failed_links`.
pub fn certify_monogenic(
    params: &ConstructionParams,
    effort: &Effort,
) -> Result<MonogenicityCertificate> {
    let p = params
        .p()
        .ok_or_else(|| Error::Hypothesis("the prime p has not been fixed".into()))?;
    let mut required = vec![params.q()];
    required.extend_from_slice(params.m_primes());
    required.sort_unstable();
    let mut cert = MonogenicityCertificate {
        schema: CERTIFICATE_SCHEMA.into(),
        version: CERTIFICATE_VERSION.into(),
        params: params.clone(),
        polynomial: None,
        cd: None,
        identity: None,
        identity_checked: false,
        forced_part: forced_part(params),
        variable_part: None,
        variable_status: None,
        coprime_to_qm: false,
        delta: None,
        required_eisenstein_primes: required.clone(),
        eisenstein_primes: Vec::new(),
        verdict: Verdict::Inconclusive,
        failed_links: Vec::new(),
        notes: vec![format!(
            "the Eisenstein primes bound the field discriminant below by q^q·m^(q-1) with m = {}",
            params.m()
        )],
    };
    let fail = |cert: &mut MonogenicityCertificate, link: &str, e: &Error| {
        cert.failed_links.push(format!("{link}: {e}"));
    };

    let cons = match build_construction(params) {
        Ok(c) => c,
        Err(e) => {
            fail(&mut cert, "build", &e);
            return Ok(cert);
        }
    };
    let cd = match compute_cd(&cons) {
        Ok(cd) => cd,
        Err(e) => {
            fail(&mut cert, "cd-values", &e);
            return Ok(cert);
        }
    };
    cert.cd = Some(cd.clone());
    let big_f = &cons.f0
        + &IntegerPolynomial::constant(
            BigInt::from(params.q()) * BigInt::from(params.m()) * BigInt::from(p).pow(params.d()),
        );
    cert.eisenstein_primes = required
        .iter()
        .copied()
        .filter(|&r| big_f.is_eisenstein(r))
        .collect();
    if let Err(e) = assemble_f(&cons) {
        fail(&mut cert, "eisenstein", &e);
    }
    cert.polynomial = Some(big_f.clone());

    match discriminant_identity_check(params, &big_f, &cd) {
        Ok(check) => {
            cert.identity_checked = check.equal;
            if !check.equal {
                cert.failed_links
                    .push("identity: |disc(F)| differs from the closed form".into());
            }
            cert.identity = Some(check);
        }
        Err(e) => fail(&mut cert, "identity", &e),
    }

    let f = match build_f_product(params, &cd) {
        Ok(f) => f,
        Err(e) => {
            fail(&mut cert, "f-product", &e);
            return Ok(cert);
        }
    };
    let values = factor_values(params, &cd, p);
    cert.coprime_to_qm = coprime_to_qm(params, &values);
    if !cert.coprime_to_qm {
        cert.failed_links
            .push("coprimality: some h_i(p) or k_j(p) shares a factor with q·m".into());
    }
    let (var, status) = factorize_product(&values, effort)?;
    debug_assert_eq!(var.value(), f.evaluate(&BigInt::from(p)));
    match status {
        SquarefreeStatus::Squarefree => {}
        SquarefreeStatus::NotSquarefree => cert
            .failed_links
            .push("squarefree: f(p) has a repeated prime factor".into()),
        SquarefreeStatus::UpToBound(b) => cert.failed_links.push(format!(
            "squarefree: f(p) has an unfactored cofactor; no square of a prime <= {b} divides it"
        )),
    }
    cert.variable_status = Some(status);

    if let Some(check) = &cert.identity {
        let merged = cert.forced_part.merge(&var);
        let sign = if check.discriminant.is_negative() { -1 } else { 1 };
        let delta = FactoredInteger::from_parts(
            sign,
            merged.factors().clone(),
            merged.cofactor().clone(),
            merged.sf_bound(),
        );
        if check.equal {
            debug_assert_eq!(delta.value(), check.discriminant);
        }
        cert.delta = Some(delta);
    }
    cert.variable_part = Some(var);

    let eisenstein_ok = cert.eisenstein_primes == required;
    if cert.identity_checked && eisenstein_ok && status.is_certified_squarefree() && cert.coprime_to_qm
    {
        cert.verdict = Verdict::Monogenic;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{
        build_construction, compute_cd, search_admissible_primes, validate_params, RawParams,
        SearchOptions,
    };

    #[test]
    fn small_family_is_monogenic() {
        let base = validate_params(&RawParams::new(3, 5, 1, 1, 13)).unwrap();
        let cd = compute_cd(&build_construction(&base).unwrap()).unwrap();
        let hits = search_admissible_primes(
            &base,
            &cd,
            &SearchOptions::new(100, Effort::default()).first(1),
        )
        .unwrap();
        let params = base.with_p(hits[0].p).unwrap();
        let cert = certify_monogenic(&params, &Effort::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Monogenic, "{:?}", cert.failed_links);
        assert_eq!(cert.delta_valuation(7), Some(7));
        assert!(cert.failed_links.is_empty());
        let json = serde_json::to_string(&cert).unwrap();
        let back: MonogenicityCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let params = validate_params(&RawParams::new(3, 5, 1, 1, 13).with_p(11)).unwrap();
        let cert = certify_monogenic(&params, &Effort::new(2, 0)).unwrap();
        assert!(cert.identity_checked);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert!(cert.failed_links.iter().any(|l| l.starts_with("squarefree")));
    }

    #[test]
    fn missing_p_is_an_error() {
        let params = validate_params(&RawParams::new(3, 5, 1, 1, 13)).unwrap();
        assert!(certify_monogenic(&params, &Effort::default()).is_err());
    }
}
