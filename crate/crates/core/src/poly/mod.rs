//! Dense polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored in ascending order (`coeffs[i]` multiplies `xⁱ`)
//! and trailing zeros are always trimmed, so the zero polynomial is the empty
//! vector and `degree = len − 1` otherwise.

mod modp;
mod text;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::valuation_nonzero;
use crate::error::{Error, Result};

pub use modp::{irreducible_mod_p_witness, FpPoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `xⁱ`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Schoolbook product: coefficient `k` is `Σ_{i+j=k} aᵢ bⱼ`.
    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    /// `∏ (x + tᵢ)`; the coefficient of `x^{N−n}` is the elementary
    /// symmetric polynomial `eₙ(t₁, …, t_N)`.
    pub fn linear_product(shifts: &[BigInt]) -> Self {
        // multiply in place by (x + t): new[k] = old[k-1] + t * old[k]
        let mut coeffs = vec![BigInt::one()];
        for t in shifts {
            coeffs.push(BigInt::zero());
            for k in (0..coeffs.len()).rev() {
                let lower = if k > 0 { coeffs[k - 1].clone() } else { BigInt::zero() };
                coeffs[k] = lower + t * &coeffs[k];
            }
        }
        Self::new(coeffs)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `f(x) mod m` with a least nonnegative result, for `m < 2⁶³`.
    pub fn evaluate_mod(&self, x: u64, m: u64) -> u64 {
        let reduced: Vec<u64> = self.residues(m);
        eval_residues(&reduced, x, m)
    }

    /// Coefficients reduced to `[0, m)` as machine words.
    pub fn residues(&self, m: u64) -> Vec<u64> {
        let modulus = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&modulus);
                r.try_into().expect("residue fits in u64")
            })
            .collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// The integral from 0 to `x`, provided every coefficient `c_u` of `xᵘ`
    /// is divisible by `u + 1`.
    pub fn antiderivative_from_zero(&self) -> Result<Self> {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + 1];
        for (u, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(&BigInt::from(u + 1));
            if !r.is_zero() {
                return Err(Error::NonIntegralAntiderivative {
                    degree: u,
                    divisor: u + 1,
                });
            }
            out[u + 1] = q;
        }
        Ok(Self::new(out))
    }

    /// `x^{deg f} f(1/x)`, defined when `f(0) ≠ 0`.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(Self::new(self.coeffs.iter().rev().cloned().collect()))
    }

    /// `q ∤ aₙ`, `q | aᵢ` for `i < n`, and `q² ∤ a₀`. Constants are never
    /// Eisenstein.
    pub fn is_eisenstein(&self, q: u64) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        let q_big = BigInt::from(q);
        let divides = |c: &BigInt| c.is_multiple_of(&q_big);
        if divides(&self.coeffs[n]) {
            return false;
        }
        if !self.coeffs[..n].iter().all(divides) {
            return false;
        }
        !self.coeffs[0].is_multiple_of(&(&q_big * &q_big))
    }

    /// Coefficientwise least nonnegative residues modulo `n`.
    pub fn reduce_mod(&self, n: &BigUint) -> Self {
        let modulus = BigInt::from(n.clone());
        Self::new(self.coeffs.iter().map(|c| c.mod_floor(&modulus)).collect())
    }

    /// Division by a monic polynomial: `self = q · divisor + r` with
    /// `deg r < deg divisor`.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// φ-adic digits `a₀, a₁, …, a_t` with `self = Σ aᵢ φⁱ` and
    /// `deg aᵢ < deg φ`, obtained by repeated division by `φ`.
    pub fn phi_expand(&self, phi: &Self) -> Result<Vec<Self>> {
        if !phi.is_monic() {
            return Err(Error::NotMonic);
        }
        if phi.degree() == Some(0) {
            return Err(Error::DegreeTooSmall(1));
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem_monic(phi)?;
            digits.push(r);
            rest = q;
        }
        Ok(digits)
    }

    /// `min ν_p` over the nonzero coefficients, `None` for zero.
    pub fn content_valuation(&self, p: u64) -> Option<u32> {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| valuation_nonzero(c.magnitude(), p))
            .min()
    }

    /// Exact division of every coefficient by `d`; `None` if any is inexact.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// Largest absolute coefficient value's bit length.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
    }
}

pub(crate) fn eval_residues(coeffs: &[u64], x: u64, m: u64) -> u64 {
    let x = (x % m) as u128;
    let m128 = m as u128;
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * x + c as u128) % m128) as u64
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn add(self, other: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntegerPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn sub(self, other: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntegerPolynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn mul(self, other: &IntegerPolynomial) -> IntegerPolynomial {
        self.multiply(other)
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for IntegerPolynomial {
            type Output = IntegerPolynomial;
            fn $method(self, other: IntegerPolynomial) -> IntegerPolynomial {
                (&self).$method(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
