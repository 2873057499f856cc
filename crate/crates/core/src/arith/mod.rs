//! Exact integer arithmetic: primality, budgeted factorization, valuations
//! and squarefree analysis.

mod factor;
mod primes;
mod valuation;

pub use factor::{
    factorize, factorize_product, is_squarefree, squarefull_split, Effort, FactoredInteger,
    SquarefreeStatus,
};
pub use primes::{
    find_prime_in_class, is_prime, is_prime_int, is_prime_u64, jacobi, primes_in_range,
    primes_up_to, DETERMINISTIC_LIMIT,
};
pub use valuation::{padic_valuation, padic_valuation_rational};
pub(crate) use valuation::valuation_nonzero;

/// Exact rationals, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
