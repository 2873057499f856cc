//! Exact-arithmetic toolkit for constructing families of integer polynomials
//! and certifying whether they are monogenic.
//!
//! * [`arith`]: primality, budgeted factorization, valuations.
//! * [`poly`]: dense integer polynomials and arithmetic over prime fields.
//! * [`resultant`]: Sylvester resultants and discriminants.
//! * [`construction`]: the `q = q₀ + q₁ − 1` monogenic family and its certificate.
//! * [`stirling`]: Stirling numbers, Bernoulli numbers, regular primes.
//! * [`newton`]: φ-Newton polygons and index lower bounds.

pub mod arith;
pub mod construction;
mod decimal;
pub mod error;
pub mod newton;
pub mod poly;
pub mod resultant;
pub mod stirling;

pub use error::{Error, Result, Violation};
pub use poly::IntegerPolynomial;
