use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest `k` with `pᵏ | n`.
pub fn padic_valuation(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(valuation_nonzero(n.magnitude(), p))
}

pub(crate) fn valuation_nonzero(n: &BigUint, p: u64) -> u32 {
    debug_assert!(p >= 2);
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `ν_p(a/b) = ν_p(a) − ν_p(b)` for a nonzero rational.
pub fn padic_valuation_rational(r: &BigRational, p: u64) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let num = padic_valuation(r.numer(), p)? as i64;
    let den = padic_valuation(r.denom(), p)? as i64;
    Ok(num - den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(padic_valuation(&BigInt::from(175), 7).unwrap(), 1);
        assert_eq!(padic_valuation(&BigInt::from(735), 7).unwrap(), 2);
        assert_eq!(padic_valuation(&BigInt::from(1), 7).unwrap(), 0);
        assert_eq!(padic_valuation(&BigInt::from(-49), 7).unwrap(), 2);
        assert_eq!(padic_valuation(&BigInt::from(0), 7), Err(Error::ZeroValuation));
    }

    #[test]
    fn rationals() {
        let r = BigRational::new(BigInt::from(-691), BigInt::from(2730));
        assert_eq!(padic_valuation_rational(&r, 691).unwrap(), 1);
        assert_eq!(padic_valuation_rational(&r, 7).unwrap(), -1);
        assert_eq!(padic_valuation_rational(&r, 11).unwrap(), 0);
    }
}
