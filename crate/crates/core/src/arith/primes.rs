//! Primality testing, sieving and primes in arithmetic progressions.
//!
//! Below `3_317_044_064_679_887_385_961_981` (about 3.3·10²⁴) the answer of
//! [`is_prime`] is exact: inputs that fit in 64 bits use the first twelve
//! primes as Miller–Rabin witnesses, larger inputs the first thirteen, and
//! both witness sets are known to be deterministic in their ranges. Above
//! that bound the test is Baillie–PSW (strong base-2 Miller–Rabin plus a
//! strong Lucas test with Selfridge parameters). No BPSW pseudoprime is
//! known, but the result there is not a proof of primality.

use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exclusive upper bound of the range where [`is_prime`] is deterministic.
pub const DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes `<= bound`, ascending. The largest sieve built so far is
/// cached and shared.
pub fn primes_up_to(bound: u64) -> Arc<Vec<u64>> {
    static CACHE: OnceLock<Mutex<(u64, Arc<Vec<u64>>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new((0, Arc::new(Vec::new()))));
    let mut guard = cache.lock().unwrap();
    if guard.0 < bound {
        let limit = bound.max(guard.0.saturating_mul(2)).max(1 << 16);
        *guard = (limit, Arc::new(sieve(limit)));
    }
    let all = Arc::clone(&guard.1);
    drop(guard);
    let end = all.partition_point(|&p| p <= bound);
    if end == all.len() {
        all
    } else {
        Arc::new(all[..end].to_vec())
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES[..12] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    WITNESSES[..12]
        .iter()
        .all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    debug_assert!(n.is_odd());
    let mut n = n.clone();
    let mut a = a.mod_floor(&BigInt::from_biguint(Sign::Plus, n.clone()))
        .to_biguint()
        .unwrap();
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Strong Lucas probable-prime test with Selfridge's method A parameters.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    if is_perfect_square(n) {
        return false;
    }
    let mut d_param: i64 = 5;
    loop {
        let j = jacobi(&BigInt::from(d_param), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigUint::from(d_param.unsigned_abs()) != *n {
            return false;
        }
        d_param = if d_param > 0 { -(d_param + 2) } else { -d_param + 2 };
    }
    let modulus = BigInt::from_biguint(Sign::Plus, n.clone());
    let reduce = |x: BigInt| x.mod_floor(&modulus);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &modulus } else { x };
        (x >> 1u32).mod_floor(&modulus)
    };
    let p = BigInt::one();
    let q = reduce(BigInt::from((1 - d_param) / 4));
    let d = reduce(BigInt::from(d_param));

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    for i in (0..k.bits()).rev() {
        // double
        u = reduce(&u * &v);
        v = reduce(&v * &v - (&qk << 1u32));
        qk = reduce(&qk * &qk);
        if k.bit(i) {
            let u_next = half(&p * &u + &v);
            let v_next = half(&d * &u + &p * &v);
            u = u_next;
            v = v_next;
            qk = reduce(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = reduce(&v * &v - (&qk << 1u32));
        qk = reduce(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality test; see the module documentation for the exactness range.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    for &p in primes_up_to(1000).iter().skip(WITNESSES.len()) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let below_limit = n.to_u128().is_some_and(|v| v < DETERMINISTIC_LIMIT);
    if below_limit {
        WITNESSES
            .iter()
            .all(|&a| strong_probable_prime(n, &BigUint::from(a)))
    } else {
        strong_probable_prime(n, &BigUint::from(2u32)) && strong_lucas_probable_prime(n)
    }
}

/// [`is_prime`] for signed input; negative numbers are never prime.
pub fn is_prime_int(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(u) => is_prime(&u),
        None => false,
    }
}

/// Smallest prime `>= start` that is congruent to `residue` modulo `modulus`.
pub fn find_prime_in_class(modulus: u64, residue: i64, start: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::NoPrimesInClass {
            modulus: modulus.to_string(),
            residue: residue.to_string(),
            gcd: residue.unsigned_abs().to_string(),
        });
    }
    let r = residue.rem_euclid(modulus as i64) as u64;
    let g = r.gcd(&modulus);
    if g != 1 {
        return Err(Error::NoPrimesInClass {
            modulus: modulus.to_string(),
            residue: residue.to_string(),
            gcd: g.to_string(),
        });
    }
    let offset = (r + modulus - start % modulus) % modulus;
    let mut n = start
        .checked_add(offset)
        .ok_or_else(|| Error::Degenerate("prime search overflowed 64 bits".into()))?;
    loop {
        if is_prime_u64(n) {
            return Ok(n);
        }
        n = n
            .checked_add(modulus)
            .ok_or_else(|| Error::Degenerate("prime search overflowed 64 bits".into()))?;
    }
}

/// Primes `p` with `lo <= p <= hi`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi <= 50_000_000 {
        return primes_up_to(hi)
            .iter()
            .copied()
            .filter(|&p| p >= lo)
            .collect();
    }
    (lo..=hi).filter(|&n| is_prime_u64(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_cases() {
        assert!(is_prime_u64(7));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1624));
        assert!(trial_division(7) && !trial_division(1624));
    }

    #[test]
    fn agrees_with_trial_division_below_100k() {
        for n in 0..100_000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
        let sieve = primes_up_to(100_000);
        assert_eq!(sieve.len(), 9592);
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // strong pseudoprimes to several small bases
        for n in [2047u64, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321] {
            assert!(!is_prime_u64(n), "{n}");
        }
        // 3825123056546413051 is a strong pseudoprime to bases 2..=23
        assert!(!is_prime_u64(3825123056546413051));
        // largest prime below 2^64
        assert!(is_prime_u64(18446744073709551557));
    }

    #[test]
    fn big_inputs() {
        let m127: BigUint = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m127));
        let m89: BigUint = (BigUint::one() << 89u32) - 1u32;
        let m107: BigUint = (BigUint::one() << 107u32) - 1u32;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * &m107)));
        // 3317044064679887385961981 is the smallest strong pseudoprime to
        // all bases up to 37
        let psp: BigUint = "3317044064679887385961981".parse().unwrap();
        assert!(!is_prime(&psp));
        let p521: BigUint = (BigUint::one() << 521u32) - 1u32;
        assert!(is_prime(&p521));
        assert!(!is_prime(&(&p521 * &p521)));
    }

    #[test]
    fn lucas_rejects_known_lucas_pseudoprimes_only_with_mr() {
        // 5459 and 5777 are strong Lucas pseudoprimes; base-2 MR catches them
        for n in [5459u64, 5777, 10877, 16109, 18971] {
            assert!(strong_lucas_probable_prime(&BigUint::from(n)));
            assert!(!is_prime_u64(n));
        }
        for p in [101u64, 1009, 65537, 1_000_003] {
            assert!(strong_lucas_probable_prime(&BigUint::from(p)));
        }
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            for a in 0..p {
                let e = pow_mod(a, (p - 1) / 2, p);
                let expected = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
                assert_eq!(jacobi(&BigInt::from(a), &BigUint::from(p)), expected);
            }
        }
    }

    #[test]
    fn prime_in_class() {
        assert_eq!(find_prime_in_class(7, 6, 2).unwrap(), 13);
        assert_eq!(find_prime_in_class(2, 1, 3).unwrap(), 3);
        assert_eq!(find_prime_in_class(7, 6, 14).unwrap(), 41);
        assert_eq!(find_prime_in_class(7, -1, 14).unwrap(), 41);
        assert!(matches!(
            find_prime_in_class(6, 4, 2),
            Err(Error::NoPrimesInClass { .. })
        ));
        // progression 20, 27, 34, 41
        let oracle = (14u64..).filter(|n| n % 7 == 6).find(|&n| trial_division(n));
        assert_eq!(oracle, Some(41));
    }
}
