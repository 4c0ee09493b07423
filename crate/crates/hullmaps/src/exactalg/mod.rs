//! Exact arithmetic: big rationals, dense polynomials, truncated power series.
//!
//! Everything here is immutable after construction and purely functional.

mod interp;
mod poly;
mod series;

pub use interp::lagrange_interpolate;
pub use poly::Poly;
pub use series::{newton_root, series_arith, series_newton_root, series_reversion, GSeries, SeriesOp, Var};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("series variable mismatch: {0:?} vs {1:?}")]
    VarMismatch(Var, Var),
    #[error("division by a series that vanishes to its stored order")]
    DivisionByZero,
    #[error("series reversion needs zero constant term and nonzero linear coefficient")]
    NotReversible,
    #[error("Newton seed is not a simple root at x = 0")]
    NonSimpleRoot,
    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(Rational),
    #[error("interpolation needs {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("interpolation data inconsistent with degree bound {0}")]
    DegreeBoundExceeded(usize),
    #[error("constant term {0} has no rational square root")]
    NotASquare(Rational),
    #[error("operation requires a power series with constant term 1")]
    NeedsUnitConstant,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::Parse(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Converts to `f64` (lossy).
pub fn to_f64(q: &Rational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// True when `q` is in canonical form (reduced, positive denominator).
pub fn is_canonical(q: &Rational) -> bool {
    let g = num::Integer::gcd(q.numer(), q.denom());
    q.denom().is_positive() && g.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational(" -4/6 ").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn canonical_after_ops() {
        let a = rat(6, -4) + rat(10, 12);
        assert!(is_canonical(&a));
        assert_eq!(a, rat(-2, 3));
    }
}
