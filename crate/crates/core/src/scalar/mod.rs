//! Exact coefficient arithmetic.
//!
//! The tower is ℤ → ℚ → ℚ(i) → ℚ(i)[a] → ℚ(i)(a). Every value is kept in a
//! canonical form so that equality is structural and `is_zero` needs no
//! tolerance.

mod gaussian;
mod poly;
mod ratfunc;

pub use gaussian::GaussianRational;
pub use poly::Poly;
pub use ratfunc::Scalar;

/// Arbitrary-precision rational with positive, coprime denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("pole at specialization point a = {0}")]
    Pole(String),
}
