use super::{Family, GenfunError};
use crate::exactalg::{newton_root, GSeries, Rational, Var};
use num::{One, Zero};

/// A solution `λ` of the branch equation, stored as the power series
/// `y = λ·x^shift` in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaBranch {
    pub family: Family,
    /// `(α, d)` weights inserted so far, in order of increasing `d`.
    pub weights: Vec<(Rational, i64)>,
    shift: i64,
    y: GSeries,
}

impl LambdaBranch {
    /// `λ = 1`.
    pub fn unit(family: Family, order: i64) -> Self {
        LambdaBranch {
            family,
            weights: Vec::new(),
            shift: 0,
            y: GSeries::one(Var::X, order),
        }
    }

    /// `e` such that `λ·x^e` is a power series with `x → 0` limit `1 - ρ(0)`.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The power series `λ·x^shift`.
    pub fn normalized_series(&self) -> &GSeries {
        &self.y
    }

    /// `λ` itself as a Laurent series in `x`.
    pub fn series(&self) -> GSeries {
        self.y.shift(-self.shift)
    }

    pub fn order(&self) -> i64 {
        self.y.order()
    }

    /// `λ·x^n`.
    pub fn times_xpow(&self, n: i64) -> GSeries {
        self.y.shift(n - self.shift)
    }

    /// `prod (1 - λ x^a) / prod (1 - λ x^b)`.
    pub(crate) fn product(&self, num: &[i64], den: &[i64], order: i64) -> GSeries {
        let one = GSeries::one(Var::X, order);
        let mut acc = one.clone();
        for &a in num {
            acc = &acc * &(&one - &self.times_xpow(a));
        }
        for &b in den {
            acc = &acc / &(&one - &self.times_xpow(b));
        }
        acc.truncate(order)
    }

    /// Deformation factor of `T_k(λ)`.
    pub(crate) fn t_factor(&self, k: i64, order: i64) -> GSeries {
        match self.family {
            Family::Quadrangulation => self.product(&[k - 1, k + 4], &[k + 1, k + 2], order),
            Family::Triangulation => self.product(&[k, k + 3], &[k + 1, k + 2], order),
        }
    }

    /// Deformation factor of `R_k(λ)`.
    pub(crate) fn r_factor(&self, k: i64, order: i64) -> GSeries {
        match self.family {
            Family::Quadrangulation => self.product(&[k, k + 3], &[k + 1, k + 2], order),
            Family::Triangulation => self.product(&[k, k + 2], &[k + 1, k + 1], order),
        }
    }

    /// Left-hand side of the branch equation at distance `d`: `T_d(λ)/T`.
    pub(crate) fn branch_ratio(&self, d: i64, order: i64) -> GSeries {
        self.t_factor(d, order)
    }

    /// Residual `T_d(λ)/T - ρ` of the defining equation for the last inserted weight.
    pub fn residual(&self, order: i64) -> Result<GSeries, GenfunError> {
        let Some(&(ref alpha, d)) = self.weights.last() else {
            return Ok(GSeries::zero(Var::X, order));
        };
        let prev = LambdaBranch::chain(self.family, &self.weights[..self.weights.len() - 1], order)?;
        let rho = rhs(self.family, &prev, alpha, d, order);
        Ok(&self.branch_ratio(d, order) - &rho)
    }

    /// Solves the branch equations for successive weights `(α_i, d_i)`.
    ///
    /// Weights below the family's minimal distance carry the convention
    /// `λ = 1` (empty hull).
    pub(crate) fn chain(family: Family, weights: &[(Rational, i64)], order: i64) -> Result<Self, GenfunError> {
        let mut mu = LambdaBranch::unit(family, order);
        for (alpha, d) in weights {
            if *d < family.min_d() {
                mu = LambdaBranch::unit(family, order);
            } else {
                let rho = rhs(family, &mu, alpha, *d, order);
                let y = solve_branch(family, &rho)?;
                mu = LambdaBranch {
                    family,
                    weights: Vec::new(),
                    shift: shift_for(family, *d),
                    y,
                };
            }
            mu.weights.push((alpha.clone(), *d));
        }
        mu.weights = weights.to_vec();
        Ok(mu)
    }
}

fn shift_for(family: Family, d: i64) -> i64 {
    match family {
        Family::Quadrangulation => d - 1,
        Family::Triangulation => d,
    }
}

/// `α^m · T_d(μ)/T`.
fn rhs(family: Family, mu: &LambdaBranch, alpha: &Rational, d: i64, order: i64) -> GSeries {
    let w = num::pow(alpha.clone(), family.alpha_power() as usize);
    mu.branch_ratio(d, order).scale(&w)
}

/// Root `y` with `y(0) = 1 - ρ(0)` of
/// `(1-y)(1-y x^a) - ρ (1-y x^b)(1-y x^c) = 0`.
fn solve_branch(family: Family, rho: &GSeries) -> Result<GSeries, GenfunError> {
    let (a, b, c) = match family {
        Family::Quadrangulation => (5, 2, 3),
        Family::Triangulation => (3, 1, 2),
    };
    let order = rho.order();
    let one = GSeries::one(Var::X, order);
    let xp = |e: i64| GSeries::monomial(Var::X, Rational::one(), e, order);
    let c0 = &one - rho;
    let c1 = &(&(-&one) - &xp(a)) + &(rho * &(&xp(b) + &xp(c)));
    let c2 = &xp(a) - &(rho * &xp(b + c));
    let y0 = Rational::one() - rho.coeff(0);
    Ok(newton_root(&[c0, c1, c2], &y0)?)
}

fn check_alpha(alpha: &Rational) -> Result<(), GenfunError> {
    if *alpha <= Rational::zero() || *alpha > Rational::one() {
        return Err(GenfunError::OutOfRange(format!("α must lie in (0, 1], got {alpha}")));
    }
    Ok(())
}

/// Branch `λ(α;d)` with `λ(1;d) = 1`, to order `order` in `x`.
pub fn lambda_single(family: Family, alpha: &Rational, d: i64, order: i64) -> Result<LambdaBranch, GenfunError> {
    check_alpha(alpha)?;
    if d < family.min_d() {
        return Err(GenfunError::OutOfRange(format!(
            "{family}: λ(α;d) needs d >= {}, got {d}",
            family.min_d()
        )));
    }
    LambdaBranch::chain(family, &[(alpha.clone(), d)], order)
}

/// Branch `λ(α₁,α₂;d₁,d₂)` reducing to `λ(α₁;d₁)` at `α₂ = 1`.
pub fn lambda_double(
    family: Family,
    alpha1: &Rational,
    alpha2: &Rational,
    d1: i64,
    d2: i64,
    order: i64,
) -> Result<LambdaBranch, GenfunError> {
    check_alpha(alpha1)?;
    check_alpha(alpha2)?;
    if d1 < family.min_d() || d2 < d1 {
        return Err(GenfunError::OutOfRange(format!(
            "{family}: need {} <= d1 <= d2, got d1={d1}, d2={d2}",
            family.min_d()
        )));
    }
    LambdaBranch::chain(family, &[(alpha1.clone(), d1), (alpha2.clone(), d2)], order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn alpha_one_is_unit() {
        for fam in Family::ALL {
            for d in fam.min_d()..fam.min_d() + 4 {
                let l = lambda_single(fam, &rat(1, 1), d, 10).unwrap();
                assert_eq!(l.series(), GSeries::one(Var::X, 10 - l.shift()));
                assert_eq!(l.normalized_series(), &GSeries::monomial(Var::X, int(1), l.shift(), 10));
            }
        }
    }

    #[test]
    fn leading_term() {
        let a = rat(1, 2);
        let l = lambda_single(Family::Quadrangulation, &a, 3, 8).unwrap();
        assert_eq!(l.shift(), 2);
        assert_eq!(l.normalized_series().coeff(0), rat(3, 4));
        let l = lambda_single(Family::Triangulation, &a, 2, 8).unwrap();
        assert_eq!(l.shift(), 2);
        assert_eq!(l.normalized_series().coeff(0), rat(1, 2));
    }

    #[test]
    fn defining_identity() {
        for d in 2..=4 {
            let l = lambda_single(Family::Quadrangulation, &rat(1, 2), d, 12).unwrap();
            assert!(l.residual(12).unwrap().is_zero(), "d={d}");
        }
        for d in 1..=3 {
            let l = lambda_single(Family::Triangulation, &rat(1, 2), d, 12).unwrap();
            assert!(l.residual(12).unwrap().is_zero(), "d={d}");
        }
    }

    #[test]
    fn double_reduces_to_single() {
        for fam in Family::ALL {
            let d1 = fam.min_d();
            let a1 = rat(1, 2);
            let single = lambda_single(fam, &a1, d1, 10).unwrap();
            let double = lambda_double(fam, &a1, &rat(1, 1), d1, d1 + 1, 10).unwrap();
            let (s, d) = (single.series().normalized(), double.series().normalized());
            let o = s.order().min(d.order());
            assert_eq!(s.truncate(o), d.truncate(o));
            let both = lambda_double(fam, &rat(1, 1), &rat(1, 1), d1, d1 + 1, 10).unwrap();
            assert_eq!(
                both.series().normalized(),
                GSeries::one(Var::X, 10).truncate(both.series().order())
            );
        }
    }

    #[test]
    fn double_identity() {
        let l = lambda_double(Family::Quadrangulation, &rat(1, 2), &rat(1, 3), 2, 3, 10).unwrap();
        assert!(l.residual(10).unwrap().is_zero());
        let l = lambda_double(Family::Triangulation, &rat(1, 2), &rat(1, 3), 1, 2, 10).unwrap();
        assert!(l.residual(10).unwrap().is_zero());
    }

    #[test]
    fn domain() {
        assert!(lambda_single(Family::Quadrangulation, &rat(0, 1), 2, 4).is_err());
        assert!(lambda_single(Family::Quadrangulation, &rat(1, 2), 1, 4).is_err());
        assert!(lambda_double(Family::Triangulation, &rat(1, 2), &rat(1, 2), 3, 2, 4).is_err());
    }
}
