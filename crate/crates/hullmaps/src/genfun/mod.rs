//! Slice generating functions and the λ-deformation machinery.
//!
//! Perimeter-weighted counts are obtained from the closed forms of the
//! deformed slice generating functions `T_k(λ)` / `R_k(λ)`, where `λ` solves a
//! quadratic branch equation. All series are exact; the α-dependence of a
//! table is reconstructed by evaluation at integer nodes and interpolation.

mod appendix_b;
mod lambda;
mod ztable;

pub use appendix_b::{appendix_b_check, appendix_b_tables, check_expected, AppendixBReport, ExpectedTable, Mismatch};
pub use lambda::{lambda_double, lambda_single, LambdaBranch};
pub use ztable::{z_double_eval, z_single, z_single_at, ZTable};

use crate::exactalg::{int, series_reversion, ExactError, GSeries, Rational, Var};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenfunError {
    #[error("{0}")]
    OutOfRange(String),
    #[error("λ branch belongs to {0}, expected {1}")]
    FamilyMismatch(Family, Family),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Map family: all faces of degree 4 or all faces of degree 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Quadrangulation,
    Triangulation,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Quadrangulation, Family::Triangulation];

    /// Scale constant of the limit laws.
    pub fn c(self) -> Rational {
        match self {
            Family::Quadrangulation => crate::exactalg::rat(1, 3),
            Family::Triangulation => crate::exactalg::rat(1, 2),
        }
    }

    pub fn c_f64(self) -> f64 {
        match self {
            Family::Quadrangulation => 1.0 / 3.0,
            Family::Triangulation => 0.5,
        }
    }

    pub fn g_crit_tag(self) -> &'static str {
        match self {
            Family::Quadrangulation => "1/12",
            Family::Triangulation => "1/(2*3^(3/4))",
        }
    }

    pub fn g_crit(self) -> f64 {
        match self {
            Family::Quadrangulation => 1.0 / 12.0,
            Family::Triangulation => 1.0 / (2.0 * 3f64.powf(0.75)),
        }
    }

    pub fn epsilon_scale_tag(self) -> &'static str {
        match self {
            Family::Quadrangulation => "sqrt(6)",
            Family::Triangulation => "sqrt(8*sqrt(3))",
        }
    }

    /// `x = 1 - s ε + O(ε²)` near criticality.
    pub fn epsilon_scale(self) -> f64 {
        match self {
            Family::Quadrangulation => 6f64.sqrt(),
            Family::Triangulation => (8.0 * 3f64.sqrt()).sqrt(),
        }
    }

    /// Variable in which the exact series are naturally rational.
    pub fn series_variable(self) -> Var {
        match self {
            Family::Quadrangulation => Var::G,
            Family::Triangulation => Var::T,
        }
    }

    /// Exponent of α per unit of boundary step: ℒ = 2p vs ℒ = p.
    pub fn alpha_power(self) -> u32 {
        match self {
            Family::Quadrangulation => 2,
            Family::Triangulation => 1,
        }
    }

    /// Smallest `d` with a nontrivial hull.
    pub fn min_d(self) -> i64 {
        match self {
            Family::Quadrangulation => 2,
            Family::Triangulation => 1,
        }
    }

    pub fn min_k(self) -> i64 {
        self.min_d() + 1
    }

    pub fn face_degree(self) -> usize {
        match self {
            Family::Quadrangulation => 4,
            Family::Triangulation => 3,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Family::Quadrangulation => "quad",
            Family::Triangulation => "tri",
        }
    }

    /// Validity range of `Z(α;d,k)`.
    pub fn check_dk(self, d: i64, k: i64) -> Result<(), GenfunError> {
        let (kmin, dmin) = (self.min_k(), self.min_d());
        if k < kmin || d < dmin || d > k - 1 {
            return Err(GenfunError::OutOfRange(format!(
                "{self}: need k >= {kmin} and {dmin} <= d <= k-1, got d={d}, k={k}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Quadrangulation => "quadrangulation",
            Family::Triangulation => "triangulation",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "quad" | "quadrangulation" | "quadrangulations" => Ok(Family::Quadrangulation),
            "t" | "tri" | "triangulation" | "triangulations" => Ok(Family::Triangulation),
            _ => Err(format!("unknown family {s:?} (expected quad or tri)")),
        }
    }
}

fn xs(c: &[i64], order: i64) -> GSeries {
    GSeries::from_ints(Var::X, c, order)
}

/// The parametrization `g(x)` (quadrangulations) or `t(x)` (triangulations), as a series in `x`.
pub(crate) fn param_in_x(family: Family, order: i64) -> GSeries {
    match family {
        Family::Quadrangulation => {
            let num = xs(&[0, 1, 1, 1], order);
            let den = xs(&[1, 4, 1], order).pow(2).expect("unit");
            &num / &den
        }
        Family::Triangulation => {
            let num = xs(&[0, 1, 1], order);
            let den = xs(&[1, 10, 1], order).pow_ratio(-3, 2).expect("unit");
            &num * &den
        }
    }
}

/// `x` as a series in the family's series variable, on the branch `|x| <= 1`.
pub fn x_of_g(family: Family, order: i64) -> Result<GSeries, GenfunError> {
    if order < 1 {
        return Err(GenfunError::OutOfRange("x_of_g needs order >= 1".into()));
    }
    let f = param_in_x(family, order);
    Ok(series_reversion(&f)?.with_var(family.series_variable()))
}

/// Undeformed `R` prefactor in `x`.
pub(crate) fn r_in_x(family: Family, order: i64) -> GSeries {
    match family {
        Family::Quadrangulation => &xs(&[1, 4, 1], order) / &xs(&[1, 1, 1], order),
        Family::Triangulation => {
            let s = xs(&[1, 10, 1], order).pow_ratio(1, 2).expect("unit");
            &s / &xs(&[1, 1], order)
        }
    }
}

/// Undeformed `T` prefactor in `x`; for triangulations this is `T / g`.
pub(crate) fn t_in_x(family: Family, order: i64) -> GSeries {
    match family {
        Family::Quadrangulation => {
            let den = xs(&[1, 1, 1], order).pow(2).expect("unit");
            &xs(&[0, 1, 4, 1], order) / &den
        }
        Family::Triangulation => {
            let den = xs(&[1, 1], order).pow(2).expect("unit");
            &xs(&[1, 10, 1], order) / &den
        }
    }
}

/// Re-expands a series in `t = g²` as a series in `g`.
pub fn t_to_g(s: &GSeries) -> GSeries {
    assert_eq!(s.var(), Var::T);
    let s = s.normalized();
    let lo = s.offset();
    let order = 2 * s.order() + 1;
    let mut c = Vec::new();
    for n in lo..=s.order() {
        c.push(s.coeff(n));
        c.push(int(0));
    }
    GSeries::laurent(Var::G, 2 * lo, c, order)
}

fn check_k(family: Family, k: i64) -> Result<(), GenfunError> {
    if k < 1 {
        return Err(GenfunError::OutOfRange(format!("{family}: need k >= 1, got {k}")));
    }
    Ok(())
}

fn lambda_or_unit(family: Family, lam: Option<&LambdaBranch>, order: i64) -> Result<LambdaBranch, GenfunError> {
    match lam {
        Some(l) if l.family != family => Err(GenfunError::FamilyMismatch(l.family, family)),
        Some(l) => Ok(l.clone()),
        None => Ok(LambdaBranch::unit(family, order)),
    }
}

/// Composes a series in `x` with `x(g)` (or `x(t)`) and returns it in `g`.
fn to_g(family: Family, sx: &GSeries, xg: &GSeries) -> Result<GSeries, GenfunError> {
    let s = sx.compose(xg)?;
    Ok(match family {
        Family::Quadrangulation => s,
        Family::Triangulation => t_to_g(&s),
    })
}

fn inner_order(family: Family, order: i64) -> i64 {
    match family {
        Family::Quadrangulation => order,
        Family::Triangulation => order / 2 + 1,
    }
}

/// `T_k(λ)` as a series in `g` (λ = 1 when omitted).
pub fn t_series(family: Family, k: i64, lam: Option<&LambdaBranch>, order: i64) -> Result<GSeries, GenfunError> {
    check_k(family, k)?;
    let m = inner_order(family, order);
    let lam = lambda_or_unit(family, lam, m)?;
    let xg = x_of_g(family, m)?;
    let sx = &t_in_x(family, m) * &lam.t_factor(k, m);
    let s = to_g(family, &sx, &xg)?;
    let s = match family {
        Family::Quadrangulation => s,
        Family::Triangulation => s.shift(1),
    };
    Ok(s.truncate(order))
}

/// `R_k(λ)` as a series in `g` (λ = 1 when omitted).
pub fn r_series(family: Family, k: i64, lam: Option<&LambdaBranch>, order: i64) -> Result<GSeries, GenfunError> {
    check_k(family, k)?;
    let m = inner_order(family, order);
    let lam = lambda_or_unit(family, lam, m)?;
    let xg = x_of_g(family, m)?;
    let sx = &r_in_x(family, m) * &lam.r_factor(k, m);
    Ok(to_g(family, &sx, &xg)?.truncate(order))
}

/// `R_∞` as a series in `g`.
pub fn r_infinity(family: Family, order: i64) -> Result<GSeries, GenfunError> {
    let m = inner_order(family, order);
    let xg = x_of_g(family, m)?;
    Ok(to_g(family, &r_in_x(family, m), &xg)?.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Var};

    #[test]
    fn x_of_g_quad() {
        let x = x_of_g(Family::Quadrangulation, 2).unwrap();
        assert_eq!(x, GSeries::from_ints(Var::G, &[0, 1, 7], 2));
    }

    #[test]
    fn parametrization_identity() {
        for fam in Family::ALL {
            let x = x_of_g(fam, 10).unwrap();
            let back = param_in_x(fam, 10).compose(&x.with_var(Var::X)).unwrap();
            assert_eq!(back, GSeries::variable(Var::X, 10), "{fam}");
        }
    }

    #[test]
    fn r_infinity_quad_fixed_point() {
        let r = r_infinity(Family::Quadrangulation, 6).unwrap();
        // R = 1 + 3 g R^2
        let mut fp = GSeries::one(Var::G, 6);
        for _ in 0..8 {
            fp = &GSeries::one(Var::G, 6) + &(&GSeries::from_ints(Var::G, &[0, 3], 6) * &(&fp * &fp));
        }
        assert_eq!(r, fp);
        assert_eq!(
            r.coeffs_from_zero()[..4],
            [rat(1, 1), rat(3, 1), rat(18, 1), rat(135, 1)]
        );
    }

    #[test]
    fn t_and_r_at_zero() {
        for k in 1..6 {
            let t = t_series(Family::Quadrangulation, k, None, 6).unwrap();
            let r = r_series(Family::Quadrangulation, k, None, 6).unwrap();
            assert_eq!(t.coeff(0), rat(0, 1));
            assert_eq!(r.coeff(0), rat(1, 1));
        }
    }

    #[test]
    fn t_is_r_minus_r1() {
        for fam in Family::ALL {
            if fam == Family::Triangulation {
                continue;
            }
            let r1 = r_series(fam, 1, None, 8).unwrap();
            for k in 1..6 {
                let t = t_series(fam, k, None, 8).unwrap();
                let r = r_series(fam, k, None, 8).unwrap();
                assert_eq!(t, &r - &r1, "k={k}");
            }
        }
    }

    #[test]
    fn tri_r1_is_pointed_rooted_at_distance_one() {
        let r1 = r_series(Family::Triangulation, 1, None, 6).unwrap();
        assert_eq!(r1.coeff(0), rat(1, 1));
        assert_eq!(r1.coeff(1), rat(0, 1));
    }

    #[test]
    fn ranges() {
        assert!(Family::Quadrangulation.check_dk(2, 3).is_ok());
        assert!(Family::Quadrangulation.check_dk(1, 3).is_err());
        assert!(Family::Quadrangulation.check_dk(3, 3).is_err());
        assert!(Family::Triangulation.check_dk(1, 2).is_ok());
        assert!(t_series(Family::Quadrangulation, 0, None, 4).is_err());
    }
}
