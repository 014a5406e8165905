//! Exact scalars and matrices over ℚ and ℚ[X₁,…,X_d].
//!
//! Everything downstream (Gram matrices, color matrices, realizing matrices)
//! is decided with these types; there is no floating point anywhere.

mod matrix;
mod poly;
mod rational;

pub use matrix::Matrix;
pub use poly::{Monomial, MultiPoly, RatFunc};
pub use rational::Rational;

/// A commutative ring with exact division where the quotient exists.
///
/// `exact_div` must return `Some(q)` with `q * other == self` whenever such a
/// `q` exists; Bareiss elimination relies on this.
pub trait Ring: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Shorthand for `num / den`.
pub fn qq(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
