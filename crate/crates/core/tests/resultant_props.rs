use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use monogenic::resultant::{discriminant, resultant, SylvesterMatrix};
use monogenic::IntegerPolynomial;

fn nonconstant(max_degree: usize) -> impl Strategy<Value = IntegerPolynomial> {
    (prop::collection::vec(-30i64..=30, 1..=max_degree), 1i64..=30, any::<bool>()).prop_map(
        |(mut c, lead, neg)| {
            c.push(if neg { -lead } else { lead });
            IntegerPolynomial::from_i64(&c)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn antisymmetry(f in nonconstant(6), g in nonconstant(6)) {
        let sign = if f.degree().unwrap() * g.degree().unwrap() % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(resultant(&f, &g).unwrap(), BigInt::from(sign) * resultant(&g, &f).unwrap());
    }

    #[test]
    fn multiplicativity(f in nonconstant(4), g in nonconstant(4), h in nonconstant(4)) {
        let lhs = resultant(&f, &g.multiply(&h)).unwrap();
        prop_assert_eq!(lhs, resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap());
    }

    #[test]
    fn sylvester_shape(f in nonconstant(6), g in nonconstant(6)) {
        let s = SylvesterMatrix::new(&f, &g).unwrap();
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        prop_assert_eq!(s.dimension(), m + n);
        let rev_f: Vec<BigInt> = f.coeffs().iter().rev().cloned().collect();
        let rev_g: Vec<BigInt> = g.coeffs().iter().rev().cloned().collect();
        for (i, row) in s.rows().iter().enumerate() {
            let (src, shift) = if i < n { (&rev_f, i) } else { (&rev_g, i - n) };
            prop_assert!(row[..shift].iter().all(Zero::is_zero));
            prop_assert_eq!(&row[shift..shift + src.len()], &src[..]);
            prop_assert!(row[shift + src.len()..].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn discriminant_of_linear_product(roots in prop::collection::vec(-15i64..=15, 1..=8)) {
        let shifts: Vec<BigInt> = roots.iter().map(|&r| BigInt::from(-r)).collect();
        let f = IntegerPolynomial::linear_product(&shifts);
        let mut want = BigInt::one();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = BigInt::from(roots[i] - roots[j]);
                want *= &d * &d;
            }
        }
        prop_assert_eq!(discriminant(&f).unwrap(), want);
    }

    #[test]
    fn repeated_root_kills_discriminant(f in nonconstant(4), r in -10i64..=10) {
        let g = f.multiply(&IntegerPolynomial::from_i64(&[-r, 1]).pow(2));
        prop_assert!(discriminant(&g).unwrap().is_zero());
    }
}

#[test]
fn quadratic_discriminant() {
    let f = IntegerPolynomial::from_i64(&[-5, 0, 1]);
    assert_eq!(discriminant(&f).unwrap(), BigInt::from(20));
    let g = IntegerPolynomial::from_i64(&[3, -7, 2]);
    assert_eq!(discriminant(&g).unwrap(), BigInt::from(49 - 24));
}
