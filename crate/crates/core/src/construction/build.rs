use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ConstructionParams;
use crate::error::{Error, Result};
use crate::poly::IntegerPolynomial;
use crate::resultant::discriminant;

/// `a`, `b`, `G = q·a·b` and `F₀ = ∫₀ˣ G` for one parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub params: ConstructionParams,
    /// `(q−1)!`
    pub factorial: BigInt,
    /// Roots of `a` are `−i·q₂·m·(q−1)!`, `1 <= i < q₀`.
    pub a_shifts: Vec<BigInt>,
    /// Roots of `b` are `−j·m·(q−1)!`, `1 <= j < q₁`.
    pub b_shifts: Vec<BigInt>,
    pub a: IntegerPolynomial,
    pub b: IntegerPolynomial,
    pub g: IntegerPolynomial,
    pub f0: IntegerPolynomial,
}

pub fn build_construction(params: &ConstructionParams) -> Result<Construction> {
    let q = params.q();
    let factorial: BigInt = (1..q).map(BigInt::from).product();
    let base = &factorial * BigInt::from(params.m());
    let a_step = &base * BigInt::from(params.q2());
    let a_shifts: Vec<BigInt> = (1..params.q0()).map(|i| &a_step * BigInt::from(i)).collect();
    let b_shifts: Vec<BigInt> = (1..params.q1()).map(|j| &base * BigInt::from(j)).collect();
    let a = IntegerPolynomial::linear_product(&a_shifts);
    let b = IntegerPolynomial::linear_product(&b_shifts);
    let g = a.multiply(&b).scale(&BigInt::from(q));
    let f0 = g.antiderivative_from_zero()?;

    let q_usize = q as usize;
    let expect = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Inconsistency(what.to_string()))
        }
    };
    expect(a.is_monic() && a.degree() == Some(params.q0() as usize - 1), "a is not monic of degree q0 - 1")?;
    expect(b.is_monic() && b.degree() == Some(params.q1() as usize - 1), "b is not monic of degree q1 - 1")?;
    expect(g.degree() == Some(q_usize - 1), "G does not have degree q - 1")?;
    expect(f0.is_monic() && f0.degree() == Some(q_usize), "F0 is not monic of degree q")?;
    expect(f0.constant_term().is_zero(), "F0(0) is not zero")?;
    let e_top: BigInt = a_shifts.iter().chain(&b_shifts).product();
    expect(
        f0.coeff(1) == e_top * BigInt::from(q),
        "coefficient of x in F0 differs from q times the product of the shifts",
    )?;
    Ok(Construction {
        params: params.clone(),
        factorial,
        a_shifts,
        b_shifts,
        a,
        b,
        g,
        f0,
    })
}

/// `Cᵢ = F₀(−i·q₂·m·(q−1)!)/m` and `Dⱼ = F₀(−j·m·(q−1)!)/m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdValues {
    #[serde(with = "crate::decimal::vec")]
    pub c: Vec<BigInt>,
    #[serde(with = "crate::decimal::vec")]
    pub d: Vec<BigInt>,
}

/// Computes the `Cᵢ`, `Dⱼ` and checks their congruences mod `q`, their
/// divisibility by `m` and that all of them are distinct.
pub fn compute_cd(cons: &Construction) -> Result<CdValues> {
    let params = &cons.params;
    let m = BigInt::from(params.m());
    let q = BigInt::from(params.q());
    let eval = |shift: &BigInt, label: &str| -> Result<BigInt> {
        let (quot, rem) = cons.f0.evaluate(&-shift).div_rem(&m);
        if !rem.is_zero() {
            return Err(Error::Inconsistency(format!(
                "m = {m} does not divide F0 at the root of {label}"
            )));
        }
        Ok(quot)
    };
    let c = cons
        .a_shifts
        .iter()
        .enumerate()
        .map(|(i, s)| eval(s, &format!("a (i = {})", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let d = cons
        .b_shifts
        .iter()
        .enumerate()
        .map(|(j, s)| eval(s, &format!("b (j = {})", j + 1)))
        .collect::<Result<Vec<_>>>()?;

    let q2 = BigInt::from(params.q2());
    for (i, ci) in c.iter().enumerate() {
        let want = (BigInt::from(i + 1) * &q2).mod_floor(&q);
        if ci.mod_floor(&q) != want {
            return Err(Error::Inconsistency(format!(
                "C_{} ≢ {} (mod {q})",
                i + 1,
                want
            )));
        }
    }
    for (j, dj) in d.iter().enumerate() {
        if dj.mod_floor(&q) != BigInt::from(j + 1).mod_floor(&q) {
            return Err(Error::Inconsistency(format!("D_{} ≢ {} (mod {q})", j + 1, j + 1)));
        }
    }
    for (k, v) in c.iter().chain(&d).enumerate() {
        if !v.is_multiple_of(&m) {
            return Err(Error::Inconsistency(format!("value #{} is not divisible by m", k + 1)));
        }
    }
    let mut all: Vec<&BigInt> = c.iter().chain(&d).collect();
    all.sort();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Inconsistency("the C_i and D_j are not pairwise distinct".into()));
    }
    Ok(CdValues { c, d })
}

fn require_p(params: &ConstructionParams) -> Result<u64> {
    params
        .p()
        .ok_or_else(|| Error::Hypothesis("the prime p has not been fixed".into()))
}

/// `F = F₀ + q·m·pᵈ`, checked to be Eisenstein at `q` and at every prime
/// dividing `m`.
pub fn assemble_f(cons: &Construction) -> Result<IntegerPolynomial> {
    let params = &cons.params;
    let p = require_p(params)?;
    let shift = BigInt::from(params.q()) * BigInt::from(params.m()) * BigInt::from(p).pow(params.d());
    let f = &cons.f0 + &IntegerPolynomial::constant(shift);
    for r in std::iter::once(params.q()).chain(params.m_primes().iter().copied()) {
        if !f.is_eisenstein(r) {
            return Err(Error::Inconsistency(format!("F is not {r}-Eisenstein")));
        }
    }
    Ok(f)
}

/// Both sides of `|Δ(F)| = q^q·m^{q−1}·∏|q·pᵈ + Cᵢ|·∏|q·pᵈ + Dⱼ|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    /// Signed discriminant from the resultant engine.
    #[serde(with = "crate::decimal")]
    pub discriminant: BigInt,
    #[serde(with = "crate::decimal")]
    pub lhs: BigUint,
    #[serde(with = "crate::decimal")]
    pub rhs: BigUint,
    pub equal: bool,
}

pub fn discriminant_identity_check(
    params: &ConstructionParams,
    f: &IntegerPolynomial,
    cd: &CdValues,
) -> Result<IdentityCheck> {
    let p = require_p(params)?;
    let disc = discriminant(f)?;
    let q = params.q();
    let qpd = BigInt::from(q) * BigInt::from(p).pow(params.d());
    let mut rhs = BigUint::from(q).pow(q as u32) * BigUint::from(params.m()).pow(q as u32 - 1);
    for v in cd.c.iter().chain(&cd.d) {
        rhs *= (&qpd + v).magnitude();
    }
    let lhs = disc.magnitude().clone();
    Ok(IdentityCheck {
        equal: lhs == rhs,
        discriminant: disc,
        lhs,
        rhs,
    })
}

/// `hᵢ = q·xᵈ + Cᵢ` followed by `kⱼ = q·xᵈ + Dⱼ`.
pub fn f_factors(params: &ConstructionParams, cd: &CdValues) -> Vec<IntegerPolynomial> {
    let d = params.d() as usize;
    let q = BigInt::from(params.q());
    cd.c
        .iter()
        .chain(&cd.d)
        .map(|v| {
            let mut coeffs = vec![BigInt::zero(); d + 1];
            coeffs[0] = v.clone();
            coeffs[d] += &q;
            IntegerPolynomial::new(coeffs)
        })
        .collect()
}

/// `f = ∏hᵢ·∏kⱼ`, after checking that the factors are distinct and that
/// each reciprocal factor is `q`-Eisenstein.
pub fn build_f_product(params: &ConstructionParams, cd: &CdValues) -> Result<IntegerPolynomial> {
    let factors = f_factors(params, cd);
    for (i, h) in factors.iter().enumerate() {
        if factors[..i].contains(h) {
            return Err(Error::DuplicateFactor(h.to_string()));
        }
        if !h.reciprocal()?.is_eisenstein(params.q()) {
            return Err(Error::Inconsistency(format!(
                "reciprocal of {h} is not {}-Eisenstein",
                params.q()
            )));
        }
    }
    let f = factors
        .iter()
        .fold(IntegerPolynomial::one(), |acc, h| acc.multiply(h));
    debug_assert_eq!(f.degree(), Some(params.d() as usize * (params.q() as usize - 1)));
    debug_assert!(f.leading().is_some_and(|l| l.is_positive()));
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{validate_params, RawParams};
    use num_traits::ToPrimitive;

    fn params(q0: u64, q1: u64, d: u32, m: u64, q2: u64, p: Option<u64>) -> ConstructionParams {
        let mut raw = RawParams::new(q0, q1, d, m, q2);
        raw.p = p;
        validate_params(&raw).unwrap()
    }

    #[test]
    fn small_family() {
        let c = build_construction(&params(3, 5, 1, 1, 13, None)).unwrap();
        assert_eq!(c.a, IntegerPolynomial::linear_product(&[9360.into(), 18720.into()]));
        let b: Vec<BigInt> = (1..=4).map(|j| BigInt::from(720 * j)).collect();
        assert_eq!(c.b, IntegerPolynomial::linear_product(&b));
        assert_eq!(c.g.degree(), Some(6));
        assert_eq!(c.g.leading(), Some(&BigInt::from(7)));
        assert!(c.f0.constant_term().is_zero());
    }

    #[test]
    fn worked_example_f0() {
        let c = build_construction(&params(3, 5, 2, 11, 13, None)).unwrap();
        let want = [
            "0",
            "14014482691807349047296000000",
            "1945321631090520883200000",
            "126730883419176960000",
            "4168714999680000",
            "67004340480",
            "452760",
            "1",
        ];
        let got: Vec<String> = c.f0.coeffs().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn cd_congruences() {
        let c = build_construction(&params(3, 5, 1, 1, 13, None)).unwrap();
        let cd = compute_cd(&c).unwrap();
        let res = |v: &[BigInt]| -> Vec<u64> {
            v.iter()
                .map(|x| x.mod_floor(&BigInt::from(7)).to_u64().unwrap())
                .collect()
        };
        assert_eq!(res(&cd.c), [6, 5]);
        assert_eq!(res(&cd.d), [1, 2, 3, 4]);
        for ci in &cd.c {
            for dj in &cd.d {
                assert!(!(ci - dj).is_multiple_of(&BigInt::from(7)));
            }
        }
    }

    #[test]
    fn assemble_and_identity() {
        let ps = params(3, 5, 1, 1, 13, Some(11));
        let c = build_construction(&ps).unwrap();
        let cd = compute_cd(&c).unwrap();
        let f = assemble_f(&c).unwrap();
        assert_eq!(f.constant_term(), BigInt::from(7 * 11));
        assert!(f.is_eisenstein(7));
        let check = discriminant_identity_check(&ps, &f, &cd).unwrap();
        assert!(check.equal);
        let fp = build_f_product(&ps, &cd).unwrap();
        assert_eq!(fp.degree(), Some(6));
        let prod: BigInt = cd.c.iter().chain(&cd.d).map(|v| BigInt::from(77) + v).product();
        assert_eq!(fp.evaluate(&BigInt::from(11)), prod);
        assert!(assemble_f(&build_construction(&ps.without_p()).unwrap()).is_err());
    }

    #[test]
    fn example_is_eisenstein_at_7_and_11() {
        let c = build_construction(&params(3, 5, 2, 11, 13, Some(17))).unwrap();
        let f = assemble_f(&c).unwrap();
        assert!(f.is_eisenstein(7) && f.is_eisenstein(11));
        assert_eq!(f.constant_term(), BigInt::from(7 * 11 * 17 * 17));
    }
}
