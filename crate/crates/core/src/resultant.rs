//! Resultants and discriminants through the Sylvester matrix.
//!
//! The determinant is taken with fraction-free (Bareiss) elimination, so
//! every intermediate value is an exact integer and every division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntegerPolynomial;

/// Square matrix of size `deg f + deg g` whose first `deg g` rows are shifts
/// of the coefficients of `f` and whose last `deg f` rows are shifts of `g`,
/// coefficients written from the leading term down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl SylvesterMatrix {
    pub fn new(f: &IntegerPolynomial, g: &IntegerPolynomial) -> Result<Self> {
        let (m, n) = match (f.degree(), g.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return Err(Error::ZeroPolynomial),
        };
        let size = m + n;
        let mut rows = Vec::with_capacity(size);
        let mut push_shifts = |p: &IntegerPolynomial, count: usize| {
            let desc: Vec<BigInt> = p.coeffs().iter().rev().cloned().collect();
            for shift in 0..count {
                let mut row = vec![BigInt::zero(); size];
                for (j, c) in desc.iter().enumerate() {
                    row[shift + j] = c.clone();
                }
                rows.push(row);
            }
        };
        push_shifts(f, n);
        push_shifts(g, m);
        Ok(SylvesterMatrix { rows })
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.rows.clone())
    }
}

/// Fraction-free Gaussian elimination. The empty matrix has determinant 1.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = pivot * &row[j] - &lead * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `R(f, g) = aⁿ g(α₁)⋯g(α_m)`, computed as the Sylvester determinant.
pub fn resultant(f: &IntegerPolynomial, g: &IntegerPolynomial) -> Result<BigInt> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::ZeroPolynomial),
    };
    if m + n == 0 {
        return Err(Error::DegreeTooSmall(1));
    }
    Ok(SylvesterMatrix::new(f, g)?.determinant())
}

/// `Δ(f) = (−1)^{m(m−1)/2} R(f, f′) / l(f)`.
///
/// # Panics
/// If the division by the leading coefficient is inexact, which would mean
/// the resultant is wrong.
pub fn discriminant(f: &IntegerPolynomial) -> Result<BigInt> {
    let m = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::DegreeTooSmall(1)),
        Some(m) => m,
    };
    let lead = f.leading().unwrap();
    let r = resultant(f, &f.derivative())?;
    let (q, rem) = r.div_rem(lead);
    assert!(
        rem.is_zero(),
        "resultant {r} is not divisible by leading coefficient {lead}"
    );
    Ok(if (m * (m - 1) / 2) % 2 == 1 { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    /// Cofactor expansion along the first row; exponential but independent.
    fn laplace(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * laplace(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-1, 0, 1])).unwrap(), BigInt::from(3));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])).unwrap(), BigInt::from(3));
        assert_eq!(resultant(&p(&[0, 1]), &p(&[0, 1])).unwrap(), BigInt::zero());
        assert_eq!(
            resultant(&IntegerPolynomial::zero(), &p(&[1, 1])),
            Err(Error::ZeroPolynomial)
        );
        let s = SylvesterMatrix::new(&p(&[-2, 1]), &p(&[-1, 0, 1])).unwrap();
        assert_eq!(s.dimension(), 3);
        assert_eq!(laplace(s.rows()), BigInt::from(3));
    }

    #[test]
    fn bareiss_matches_laplace() {
        let f = p(&[3, -1, 4, 1, -5]);
        let g = p(&[9, 2, -6, 5]);
        let s = SylvesterMatrix::new(&f, &g).unwrap();
        assert_eq!(s.determinant(), laplace(s.rows()));
        // a matrix needing a row swap
        let m: Vec<Vec<BigInt>> = [[0, 2, 1], [3, 1, 4], [1, 5, 9]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(bareiss_determinant(m.clone()), laplace(&m));
    }

    #[test]
    fn discriminant_examples() {
        // b² − 4ac
        let quad = |a: i64, b: i64, c: i64| BigInt::from(b * b - 4 * a * c);
        assert_eq!(discriminant(&p(&[-5, 0, 1])).unwrap(), quad(1, 0, -5));
        assert_eq!(discriminant(&p(&[-5, 0, 1])).unwrap(), BigInt::from(20));
        assert_eq!(discriminant(&p(&[1, 1, 1])).unwrap(), BigInt::from(-3));
        assert_eq!(discriminant(&p(&[0, 0, 1])).unwrap(), BigInt::zero());
        assert_eq!(discriminant(&p(&[3, 2, 5])).unwrap(), quad(5, 2, 3));
        // cubic x^3 + a x + b has Δ = −4a³ − 27b²
        assert_eq!(discriminant(&p(&[1, 2, 0, 1])).unwrap(), BigInt::from(-4 * 8 - 27));
        assert_eq!(discriminant(&p(&[7, 3])).unwrap(), BigInt::one());
        assert_eq!(discriminant(&p(&[7])), Err(Error::DegreeTooSmall(1)));
    }
}
