use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CdValues, ConstructionParams};
use crate::arith::{factorize_product, primes_in_range, Effort, FactoredInteger, SquarefreeStatus};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Largest prime tried.
    pub limit: u64,
    /// Stop after this many hits; `None` scans the whole range.
    pub max_hits: Option<usize>,
    pub effort: Effort,
}

impl SearchOptions {
    pub fn new(limit: u64, effort: Effort) -> Self {
        SearchOptions {
            limit,
            max_hits: None,
            effort,
        }
    }

    pub fn first(mut self, hits: usize) -> Self {
        self.max_hits = Some(hits);
        self
    }
}

/// One candidate `p` that passed both the coprimality filter and the
/// squarefree test on `f(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePrime {
    #[serde(with = "crate::decimal")]
    pub p: u64,
    pub status: SquarefreeStatus,
    pub coprime_to_qm: bool,
    /// Factorization of `f(p)`, merged over its `q − 1` factors.
    pub f_value: FactoredInteger,
}

/// Values `hᵢ(p)`, `kⱼ(p)` in factor order.
pub(crate) fn factor_values(params: &ConstructionParams, cd: &CdValues, p: u64) -> Vec<BigInt> {
    let qpd = BigInt::from(params.q()) * BigInt::from(p).pow(params.d());
    cd.c.iter().chain(&cd.d).map(|v| &qpd + v).collect()
}

pub(crate) fn coprime_to_qm(params: &ConstructionParams, values: &[BigInt]) -> bool {
    let qm = BigInt::from(params.q()) * BigInt::from(params.m());
    values.iter().all(|v| v.gcd(&qm).is_one())
}

fn examine(
    params: &ConstructionParams,
    cd: &CdValues,
    p: u64,
    effort: &Effort,
) -> Result<Option<AdmissiblePrime>> {
    let values = factor_values(params, cd, p);
    if !coprime_to_qm(params, &values) {
        return Ok(None);
    }
    let (f_value, status) = factorize_product(&values, effort)?;
    if !status.is_plausibly_squarefree() {
        return Ok(None);
    }
    Ok(Some(AdmissiblePrime {
        p,
        status,
        coprime_to_qm: true,
        f_value,
    }))
}

/// Primes `m < p <= limit`, `p ≠ q`, ascending, for which `f(p)` is
/// squarefree (certified or up to the trial bound) and every `hᵢ(p)`,
/// `kⱼ(p)` is coprime to `q·m`.
///
/// Candidates are examined in parallel batches and merged in ascending
/// order, so the output does not depend on the thread count.
pub fn search_admissible_primes(
    params: &ConstructionParams,
    cd: &CdValues,
    options: &SearchOptions,
) -> Result<Vec<AdmissiblePrime>> {
    let lo = params.m() + 1;
    let candidates: Vec<u64> = if options.limit < lo {
        Vec::new()
    } else {
        primes_in_range(lo, options.limit)
            .into_iter()
            .filter(|&p| p != params.q())
            .collect()
    };
    let want = options.max_hits.unwrap_or(usize::MAX);
    let batch = (rayon::current_num_threads() * 2).max(4);
    let mut hits = Vec::new();
    for chunk in candidates.chunks(batch) {
        if hits.len() >= want {
            break;
        }
        let found = chunk
            .par_iter()
            .map(|&p| examine(params, cd, p, &options.effort))
            .collect::<Result<Vec<_>>>()?;
        hits.extend(found.into_iter().flatten());
    }
    hits.truncate(want);
    Ok(hits)
}
