//! Polynomials over the prime field `F_p` and their factorization
//! (squarefree split, distinct-degree and Cantor–Zassenhaus equal-degree).

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntegerPolynomial;

/// A polynomial over `F_p`, ascending coefficients in `[0, p)`, trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_integer(f: &IntegerPolynomial, p: u64) -> Self {
        Self::new(p, f.residues(p))
    }

    /// Lift with least nonnegative coefficients.
    pub fn to_integer(&self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => self.scale(inv_mod(lc, self.p)),
        }
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n).map(|i| (get(&self.c, i) + get(&o.c, i)) % self.p).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n)
                .map(|i| (get(&self.c, i) + self.p - get(&o.c, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, out.into_iter().map(|x| x as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.deg();
        if self.c.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = mul_mod(r[k + dd], inv, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for j in 0..=dd {
                let sub = mul_mod(coef, d.c[j], p);
                r[k + j] = (r[k + j] + p - sub) % p;
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mul_mod(a, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Multiplicity of `factor` as a divisor of `self` (`self` nonzero).
    pub fn multiplicity_of(&self, factor: &Self) -> u32 {
        assert!(!self.is_zero());
        let mut n = 0;
        let mut rest = self.clone();
        loop {
            let (q, r) = rest.div_rem(factor);
            if !r.is_zero() {
                return n;
            }
            rest = q;
            n += 1;
        }
    }

    /// Rabin-style test: no irreducible factor of degree `<= n/2`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        let f = self.monic();
        let x = Self::x(self.p);
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod(&p, &f);
            if !f.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }

    /// `(g, e)` pairs with `self = lc · ∏ gᵉ`, each `g` squarefree and monic.
    fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let p = self.p;
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_rem(&c).0;
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if !c.is_one() {
            // c is a p-th power: c(x) = Σ a_{kp} x^{kp}
            let root = Self::new(p, c.c.iter().step_by(p as usize).copied().collect());
            for (g, e) in root.squarefree_decomposition() {
                out.push((g, e * p as u32));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial into `(product, d)` where the
    /// product collects all irreducible factors of degree `d`.
    fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let p = BigUint::from(self.p);
        let x = Self::x(self.p);
        let mut rest = self.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1;
        while rest.deg() >= 2 * i {
            h = h.pow_mod(&p, &rest);
            let g = rest.gcd(&h.sub(&x));
            if !g.is_one() {
                rest = rest.div_rem(&g).0;
                h = h.rem(&rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.deg() > 0 {
            let d = rest.deg();
            out.push((rest, d));
        }
        out
    }

    fn random_below(&self, rng: &mut ChaCha8Rng, n: usize) -> Self {
        Self::new(self.p, (0..n).map(|_| rng.gen_range(0..self.p)).collect())
    }

    /// Cantor–Zassenhaus: `self` is squarefree, monic, and a product of
    /// irreducibles of degree `d`.
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Self> {
        let n = self.deg();
        if n == d {
            return vec![self.clone()];
        }
        let p = self.p;
        loop {
            let a = self.random_below(rng, n);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(nd-1)) splits in char 2
                let two = BigUint::from(2u32);
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = t.pow_mod(&two, self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (BigUint::from(p).pow(d as u32) - 1u32) >> 1;
                a.pow_mod(&e, self).sub(&Self::one(p))
            };
            let g = self.gcd(&b);
            if let Some(gd) = g.degree() {
                if gd > 0 && gd < n {
                    let other = self.div_rem(&g).0;
                    let mut out = g.equal_degree(d, rng);
                    out.extend(other.equal_degree(d, rng));
                    return out;
                }
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// ordered by degree then by coefficients from the leading one down.
    /// The leading coefficient is dropped.
    pub fn factor(&self) -> Vec<(Self, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, e) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree(d, &mut rng) {
                    out.push((irr, e));
                }
            }
        }
        out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        out
    }
}

fn cmp_poly(a: &FpPoly, b: &FpPoly) -> Ordering {
    a.c.len()
        .cmp(&b.c.len())
        .then_with(|| a.c.iter().rev().cmp(b.c.iter().rev()))
}

/// First prime in `primes` modulo which the monic polynomial `f` stays of
/// full degree and is irreducible. `None` only means no witness was found.
pub fn irreducible_mod_p_witness(f: &IntegerPolynomial, primes: &[u64]) -> Option<u64> {
    let n = f.degree()?;
    if n == 0 {
        return None;
    }
    primes.iter().copied().find(|&p| {
        let fp = FpPoly::from_integer(f, p);
        fp.degree() == Some(n) && fp.is_irreducible()
    })
}

impl FpPoly {
    /// Value at `x` in `F_p`.
    pub fn evaluate(&self, x: u64) -> u64 {
        super::eval_residues(&self.c, x, self.p)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }
}
