use std::path::PathBuf;

use monogenic::arith::factorize;
use monogenic::construction::{
    assemble_f, build_construction, build_f_product, certify_monogenic, compute_cd,
    density_constant, search_admissible_primes, validate_params, ConstructionParams,
    MonogenicityCertificate, RawParams, SearchOptions, Verdict,
};
use monogenic::newton::{
    certify_non_monogenic, default_witness_primes, jk_bound, ore_bound, phi_index,
    phi_newton_polygon, render_ascii, render_svg, IndexVerdict, NewtonPolygon,
};
use monogenic::poly::irreducible_mod_p_witness;
use monogenic::resultant::discriminant as disc;
use monogenic::stirling::{
    format_rational, is_regular_prime, stirling_polynomial, verify_stirling_valuations,
    BernoulliCache, StirlingTable,
};
use monogenic::{Error, IntegerPolynomial};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::output::to_value;
use crate::{
    Method, ParamArgs, Plot, EXIT_HYPOTHESIS, EXIT_INCONCLUSIVE, EXIT_INTERNAL, EXIT_OK,
    EXIT_USAGE,
};

pub struct Outcome {
    pub value: Value,
    pub code: u8,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Machine-readable detail printed on stdout.
    pub value: Option<Value>,
}

type CmdResult = Result<Outcome, Failure>;

fn ok(value: Value) -> CmdResult {
    Ok(Outcome {
        value,
        code: EXIT_OK,
    })
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
        value: None,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => EXIT_USAGE,
            Error::Inconsistency(_)
            | Error::DuplicateFactor(_)
            | Error::NonIntegralAntiderivative { .. } => EXIT_INTERNAL,
            _ => EXIT_HYPOTHESIS,
        };
        let value = match &e {
            Error::InvalidParams(v) => Some(json!({
                "error": "invalid-parameters",
                "violations": v,
            })),
            _ => None,
        };
        Failure {
            code,
            message: e.to_string(),
            value,
        }
    }
}

fn raw(args: &ParamArgs) -> RawParams {
    RawParams {
        q0: args.q0,
        q1: args.q1,
        q: args.q,
        d: args.d,
        m: args.m,
        q2: args.q2,
        p: args.p,
    }
}

fn parse_poly(text: &str) -> Result<IntegerPolynomial, Failure> {
    IntegerPolynomial::parse_coefficient_list(text)
        .map_err(|e| usage(format!("malformed polynomial literal {text:?}: {e}")))
}

fn plot(polygon: &NewtonPolygon, kind: Plot) -> Option<Value> {
    match kind {
        Plot::None => None,
        Plot::Ascii => Some(Value::String(render_ascii(polygon))),
        Plot::Svg => Some(Value::String(render_svg(polygon))),
    }
}

fn insert(value: &mut Value, key: &str, item: Value) {
    if let Value::Object(map) = value {
        map.insert(key.to_string(), item);
    }
}

pub fn construct(args: &ParamArgs) -> CmdResult {
    let params = validate_params(&raw(args))?;
    let cons = build_construction(&params)?;
    let cd = compute_cd(&cons)?;
    let product = build_f_product(&params, &cd)?;
    let mut out = json!({
        "params": to_value(&params),
        "a": to_value(&cons.a),
        "b": to_value(&cons.b),
        "g": to_value(&cons.g),
        "antiderivative": to_value(&cons.f0),
        "cd": to_value(&cd),
        "factor_product": to_value(&product),
    });
    if params.p().is_some() {
        let f = assemble_f(&cons)?;
        insert(&mut out, "display", Value::String(f.to_string()));
        insert(&mut out, "polynomial", to_value(&f));
    }
    ok(out)
}

fn first_admissible(config: &RunConfig, params: &ConstructionParams) -> Result<Option<u64>, Failure> {
    let cd = compute_cd(&build_construction(params)?)?;
    let options = SearchOptions::new(config.search_limit, config.effort()).first(1);
    Ok(search_admissible_primes(params, &cd, &options)?
        .first()
        .map(|h| h.p))
}

pub fn verify_monogenic(config: &RunConfig, args: &ParamArgs) -> CmdResult {
    let mut params = validate_params(&raw(args))?;
    if params.p().is_none() {
        match first_admissible(config, &params)? {
            Some(p) => params = params.with_p(p)?,
            None => {
                return Ok(Outcome {
                    value: json!({
                        "params": to_value(&params),
                        "search_limit": config.search_limit.to_string(),
                        "verdict": "inconclusive",
                        "failed_links": ["search: no admissible prime up to the search limit"],
                    }),
                    code: EXIT_INCONCLUSIVE,
                })
            }
        }
    }
    let cert = certify_monogenic(&params, &config.effort())?;
    let code = match cert.verdict {
        Verdict::Monogenic => EXIT_OK,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    Ok(Outcome {
        value: to_value(&cert),
        code,
    })
}

fn verdict_code(v: IndexVerdict) -> u8 {
    match v {
        IndexVerdict::NonMonogenic => EXIT_OK,
        IndexVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn non_monogenic(p: u64, s: u32, kind: Plot) -> CmdResult {
    let report = certify_non_monogenic(p, s, &default_witness_primes())?;
    let mut out = to_value(&report);
    let polygon = phi_newton_polygon(&report.polynomial, &IntegerPolynomial::x(), p)?;
    if let Some(v) = plot(&polygon, kind) {
        insert(&mut out, "plot", v);
    }
    Ok(Outcome {
        value: out,
        code: verdict_code(report.verdict),
    })
}

pub fn newton(f: &str, p: u64, phi: &str, kind: Plot) -> CmdResult {
    let f = parse_poly(f)?;
    let phi = parse_poly(phi)?;
    if !phi.is_monic() {
        return Err(Error::NotMonic.into());
    }
    let polygon = phi_newton_polygon(&f, &phi, p)?;
    let slopes: Vec<String> = polygon
        .slopes()
        .iter()
        .map(|&(n, d)| if d == 1 { n.to_string() } else { format!("{n}/{d}") })
        .collect();
    let mut out = json!({
        "polynomial": to_value(&f),
        "phi": to_value(&phi),
        "polygon": to_value(&polygon),
        "slopes": slopes,
        "phi_index": phi_index(&polygon).to_string(),
    });
    if let Some(v) = plot(&polygon, kind) {
        insert(&mut out, "plot", v);
    }
    ok(out)
}

pub fn index_bound(f: &str, p: u64, method: Method, kind: Plot) -> CmdResult {
    let f = parse_poly(f)?;
    let witness = irreducible_mod_p_witness(&f, &default_witness_primes());
    let mut out = Map::new();
    out.insert("polynomial".into(), to_value(&f));
    let mut verdicts = Vec::new();
    if matches!(method, Method::Ore | Method::Both) {
        let ore = ore_bound(&f, p)?.with_witness(witness);
        verdicts.push(ore.verdict);
        let plots: Vec<Value> = ore
            .factors
            .iter()
            .filter_map(|r| r.polygon.as_ref().and_then(|poly| plot(poly, kind)))
            .collect();
        if !plots.is_empty() {
            out.insert("plots".into(), Value::Array(plots));
        }
        out.insert("ore".into(), to_value(&ore));
    }
    if matches!(method, Method::Jk | Method::Both) {
        let jk = jk_bound(&f, p)?.with_witness(witness);
        verdicts.push(jk.verdict);
        out.insert("jk".into(), to_value(&jk));
    }
    let verdict = if verdicts.contains(&IndexVerdict::NonMonogenic) {
        IndexVerdict::NonMonogenic
    } else {
        IndexVerdict::Inconclusive
    };
    out.insert("verdict".into(), to_value(&verdict));
    Ok(Outcome {
        value: Value::Object(out),
        code: verdict_code(verdict),
    })
}

pub fn stirling(
    config: &RunConfig,
    row: Option<usize>,
    p: Option<u64>,
    a: u64,
    family: Option<u32>,
) -> CmdResult {
    if let Some(n) = row {
        let table = StirlingTable::build_capped(n, config.table_cap)?;
        let row: Vec<String> = table.row(n).iter().map(|c| c.to_string()).collect();
        return ok(json!({ "n": n.to_string(), "row": row }));
    }
    let Some(p) = p else {
        return Err(usage("stirling needs --row or --p"));
    };
    if let Some(s) = family {
        let f = stirling_polynomial(p, s)?;
        return ok(json!({
            "p": p.to_string(),
            "s": s.to_string(),
            "polynomial": to_value(&f),
            "display": f.to_string(),
        }));
    }
    if p as usize > config.table_cap {
        return Err(usage(format!("p = {p} exceeds table_cap = {}", config.table_cap)));
    }
    let report = verify_stirling_valuations(p, a)?;
    let code = if report.mismatches.is_empty() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    Ok(Outcome {
        value: to_value(&report),
        code,
    })
}

pub fn bernoulli(config: &RunConfig, n: Option<usize>, regular: Option<u64>) -> CmdResult {
    if let Some(p) = regular {
        return ok(json!({ "p": p.to_string(), "regular": is_regular_prime(p)? }));
    }
    let Some(n) = n else {
        return Err(usage("bernoulli needs --n or --regular"));
    };
    if n > config.table_cap {
        return Err(usage(format!("n = {n} exceeds table_cap = {}", config.table_cap)));
    }
    let cache = BernoulliCache::build(n);
    let values: Vec<String> = cache.values().iter().map(format_rational).collect();
    ok(json!({ "n": n.to_string(), "values": values }))
}

pub fn density(config: &RunConfig, args: &ParamArgs, bound: u64) -> CmdResult {
    if bound > config.density_cap {
        return Err(usage(format!(
            "bound = {bound} exceeds density_cap = {}",
            config.density_cap
        )));
    }
    let params = validate_params(&raw(args))?;
    let cd = compute_cd(&build_construction(&params)?)?;
    let f = build_f_product(&params, &cd)?;
    let report = density_constant(&f, bound)?;
    let approx = report
        .partial_product
        .to_f64()
        .map(|x| format!("{x:.12}"))
        .unwrap_or_else(|| "-".into());
    let mut out = to_value(&report);
    insert(&mut out, "approximation", Value::String(approx));
    ok(out)
}

pub fn discriminant(config: &RunConfig, f: &str, factor: bool) -> CmdResult {
    let f = parse_poly(f)?;
    let d = disc(&f)?;
    let mut out = json!({
        "polynomial": to_value(&f),
        "degree": f.degree().unwrap_or(0).to_string(),
        "discriminant": d.to_string(),
    });
    if factor && d != num_bigint::BigInt::from(0) {
        insert(&mut out, "factorization", to_value(&factorize(&d, &config.effort())?));
    }
    ok(out)
}

pub fn search_primes(
    config: &RunConfig,
    args: &ParamArgs,
    limit: Option<u64>,
    count: Option<usize>,
) -> CmdResult {
    let params = validate_params(&raw(args))?.without_p();
    let cd = compute_cd(&build_construction(&params)?)?;
    let limit = limit.unwrap_or(config.search_limit);
    let mut options = SearchOptions::new(limit, config.effort());
    if let Some(c) = count {
        options = options.first(c);
    }
    let hits = search_admissible_primes(&params, &cd, &options)?;
    let primes: Vec<String> = hits.iter().map(|h| h.p.to_string()).collect();
    ok(json!({
        "params": to_value(&params),
        "limit": limit.to_string(),
        "primes": primes,
        "hits": to_value(&hits),
    }))
}

pub fn corpus(config: &RunConfig, dir: Option<PathBuf>) -> CmdResult {
    let dir = dir.unwrap_or_else(|| config.corpus.clone());
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| usage(format!("cannot read corpus {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut entries = Vec::new();
    let mut all = true;
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let stored: MonogenicityCertificate = serde_json::from_str(&text)
            .map_err(|e| usage(format!("{name} is not a certificate: {e}")))?;
        let fresh = certify_monogenic(&stored.params, &config.effort())?;
        let matches = to_value(&fresh) == to_value(&stored);
        all &= matches;
        entries.push(json!({
            "file": name,
            "verdict": to_value(&stored.verdict),
            "matches": matches,
        }));
    }
    Ok(Outcome {
        value: json!({
            "dir": dir.display().to_string(),
            "entries": entries,
            "all_match": all,
        }),
        code: if all { EXIT_OK } else { EXIT_INCONCLUSIVE },
    })
}
