use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use serde::Deserialize;

use monogenic::arith::{is_prime_u64, Effort};
use monogenic::construction::{
    assemble_f, build_construction, build_f_product, compute_cd, density_constant,
    local_solubility_witness, minimal_m, rho_squared, search_admissible_primes, validate_params,
    ConstructionParams, RawParams, SearchOptions, SolubilityCase,
};
use monogenic::IntegerPolynomial;

#[derive(Deserialize)]
struct Grid {
    points: Vec<RawParams>,
}

fn grid() -> Vec<ConstructionParams> {
    let g: Grid = serde_json::from_str(include_str!("../data/grid.json")).unwrap();
    g.points.iter().map(|r| validate_params(r).unwrap()).collect()
}

const GRID_EFFORT: Effort = Effort {
    trial_bound: 1_000,
    rho_iterations: 2_000,
};

#[test]
fn grid_uses_minimal_m() {
    for params in grid() {
        assert_eq!(params.m(), minimal_m(params.q(), params.d()), "{params:?}");
    }
}

#[test]
fn grid_polynomials_are_eisenstein() {
    for base in grid() {
        let cd = compute_cd(&build_construction(&base).unwrap()).unwrap();
        let hit = search_admissible_primes(
            &base,
            &cd,
            &SearchOptions::new(base.m() + 200_000, GRID_EFFORT).first(1),
        )
        .unwrap();
        let params = base.with_p(hit[0].p).unwrap();
        let f = assemble_f(&build_construction(&params).unwrap()).unwrap();
        assert!(f.is_eisenstein(params.q()));
        for &r in params.m_primes() {
            assert!(f.is_eisenstein(r), "r = {r}");
        }
    }
}

#[test]
fn grid_factor_product_is_separable_of_right_degree() {
    for params in grid() {
        let cd = compute_cd(&build_construction(&params).unwrap()).unwrap();
        let f = build_f_product(&params, &cd).unwrap();
        assert_eq!(f.degree(), Some(params.d() as usize * (params.q() as usize - 1)));
    }
}

#[test]
fn density_is_monotone_in_the_bound() {
    let params = validate_params(&RawParams::new(3, 5, 2, 11, 13)).unwrap();
    let cd = compute_cd(&build_construction(&params).unwrap()).unwrap();
    let f = build_f_product(&params, &cd).unwrap();
    let mut prev = BigRational::one();
    for bound in [10u64, 50, 100, 300, 1000] {
        let rep = density_constant(&f, bound).unwrap();
        assert!(rep.partial_product > BigRational::zero());
        assert!(rep.partial_product <= prev, "bound {bound}");
        prev = rep.partial_product;
    }
}

#[test]
fn witnesses_on_the_family() {
    let params = validate_params(&RawParams::new(3, 5, 2, 11, 13)).unwrap();
    let cd = compute_cd(&build_construction(&params).unwrap()).unwrap();
    let f = build_f_product(&params, &cd).unwrap();
    for r in (2..400).filter(|&r| is_prime_u64(r)) {
        let w = local_solubility_witness(&f, r, Some(&params)).unwrap();
        assert_ne!(w.z % r, 0);
        let direct = f.evaluate(&BigInt::from(w.z)) % BigInt::from(r * r);
        assert!(!direct.is_zero(), "r = {r}");
        assert_eq!(w.case, Some(SolubilityCase::classify(r, &params)));
    }
}

fn small_poly() -> impl Strategy<Value = IntegerPolynomial> {
    prop::collection::vec(-60i64..=60, 2..=6).prop_map(|c| IntegerPolynomial::from_i64(&c))
}

proptest! {
    #[test]
    fn witness_is_independently_valid(f in small_poly(), ri in 0usize..8) {
        prop_assume!(!f.is_zero());
        let r = [2u64, 3, 5, 7, 11, 13, 17, 19][ri];
        let r2 = BigInt::from(r * r);
        match local_solubility_witness(&f, r, None) {
            Ok(w) => {
                prop_assert_ne!(w.z % r, 0);
                prop_assert!(!(f.evaluate(&BigInt::from(w.z)) % &r2).is_zero());
            }
            Err(_) => {
                for z in (1..r * r).filter(|z| z % r != 0) {
                    prop_assert!((f.evaluate(&BigInt::from(z)) % &r2).is_zero());
                }
            }
        }
    }

    #[test]
    fn rho_matches_exhaustive_count(f in small_poly(), ri in 0usize..6) {
        let r = [2u64, 3, 5, 7, 11, 13][ri];
        let r2 = BigInt::from(r * r);
        let want = (1..r * r)
            .filter(|z| z % r != 0 && (f.evaluate(&BigInt::from(*z)) % &r2).is_zero())
            .count() as u64;
        prop_assert_eq!(rho_squared(&f, r).unwrap(), want);
    }

    #[test]
    fn validation_is_consistent(q0 in 2u64..14, q1 in 2u64..14, d in 1u32..3, m in 1u64..200, q2 in 2u64..400) {
        let raw = RawParams::new(q0, q1, d, m, q2);
        if let Ok(p) = validate_params(&raw) {
            let q = q0 + q1 - 1;
            prop_assert!(is_prime_u64(q0) && is_prime_u64(q1) && is_prime_u64(q) && q0 < q1);
            prop_assert!(is_prime_u64(q2) && (q2 + 1) % q == 0);
            prop_assert!(m % q != 0);
            prop_assert_eq!(p.m_primes().iter().product::<u64>(), m);
            for r in (q + 1..p.middle_bound()).filter(|&r| is_prime_u64(r)) {
                prop_assert_eq!(m % r, 0);
            }
            prop_assert_eq!(p.to_raw(), RawParams { q: Some(q), ..raw });
        }
    }
}
