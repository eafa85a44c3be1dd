//! Foundational exact and high-precision arithmetic.
//!
//! This crate provides:
//! - [`Rational`]: arbitrary-size exact rationals (re-exported from `num-rational`)
//! - [`poly::MultiPoly`]: exact multivariate polynomials over the rationals
//! - [`ratfun::RationalFunction`]: reduced rational functions
//! - [`intmat::IntMatrix`]: integer matrices with Smith normal form
//! - [`series::PowerSeries`]: truncated power series with Hadamard products
//! - [`real::BigFixed`] / [`cnum::BigComplex`]: arbitrary-precision fixed-point
//!   real and complex arithmetic with elementary and special functions
//! - [`jet::JetSeries`]: truncated series in a nilpotent ε with
//!   arbitrary-precision complex coefficients, including Γ-function jets

pub mod cnum;
pub mod constants;
pub mod error;
pub mod intmat;
pub mod jet;
pub mod poly;
pub mod ratfun;
pub mod real;
pub mod series;
pub mod upoly;

pub use cnum::BigComplex;
pub use error::ExactError;
pub use intmat::{smith_normal_form, IntMatrix, SmithNormalForm};
pub use jet::JetSeries;
pub use poly::MultiPoly;
pub use ratfun::RationalFunction;
pub use real::BigFixed;
pub use series::PowerSeries;
pub use upoly::UPoly;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;
/// Arbitrary-size integer.
pub type Integer = num_bigint::BigInt;

/// Shorthand for `p/q` as a [`Rational`].
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(Integer::from(p), Integer::from(q))
}

/// Shorthand for an integer [`Rational`].
pub fn rat_i(p: i64) -> Rational {
    Rational::from(Integer::from(p))
}

/// Parse `p/q` or `p` into a [`Rational`]. Used by CLIs and spec-string parsers.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: Integer = p.trim().parse().ok()?;
        let q: Integer = q.trim().parse().ok()?;
        if q == Integer::from(0) {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        let p: Integer = s.parse().ok()?;
        Some(Rational::from(p))
    }
}
