//! Exact square-volumes of simplices and polynomial-identity checks for
//! infinitesimal simplices.
//!
//! The crate has two halves:
//!
//! * [`simplex_volume`] computes square-volumes of simplices over exact
//!   rationals, from square-distance tables (Heron / Cayley–Menger) and from
//!   coordinates (Gram determinants, optionally weighted by a metric matrix).
//! * [`jet_algebra`], [`riemannian`] and [`sdg_verify`] model infinitesimal
//!   simplices as elements of a finite-dimensional nilpotent quotient of a
//!   polynomial ring over ℚ, and check the square-density identities for
//!   Riemannian metrics as exact polynomial identities.
//!
//! Everything is exact: no floating point is involved except in the numeric
//! Cholesky path of [`exact_linalg`].

#![forbid(unsafe_code)]

pub mod exact_linalg;
pub mod exec;
pub mod jet_algebra;
pub mod polynomial;
pub mod riemannian;
pub mod sdg_verify;
pub mod simplex_volume;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub use exact_linalg::{FloatMatrix, LinalgError, Matrix, RationalMatrix, Ring};
pub use exec::Execution;
pub use polynomial::{Monomial, Poly};

/// Parses `"p/q"`, `"-p/q"` or an integer string into a normalized rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    text.parse::<Rational>().ok()
}

/// Shorthand for an integer-valued rational.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_normalized_rationals() {
        assert_eq!(parse_rational("6/4"), Some(ratio(3, 2)));
        assert_eq!(parse_rational("-7"), Some(rat(-7)));
        assert_eq!(parse_rational(" 2/-4 "), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1.5"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(ratio(3, -6).to_string(), "-1/2");
    }
}
