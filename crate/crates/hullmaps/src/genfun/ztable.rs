use super::{inner_order, r_in_x, t_in_x, to_g, x_of_g, Family, GenfunError, LambdaBranch};
use crate::exactalg::{int, lagrange_interpolate, GSeries, Poly, Rational};
use num::{BigInt, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Exact perimeter-weighted counts: `coefficients[N]` is the α-polynomial
/// multiplying `g^N`; its coefficient of `α^ℒ` counts k-pointed-rooted maps
/// with `N` faces and hull perimeter `ℒ` at distance `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZTable {
    pub family: Family,
    pub d: i64,
    pub k: i64,
    pub order: i64,
    pub coefficients: Vec<Poly>,
}

impl ZTable {
    pub fn count(&self, n: usize, l: usize) -> BigInt {
        self.coefficients
            .get(n)
            .map(|p| p.coeff(l).to_integer())
            .unwrap_or_else(BigInt::zero)
    }

    /// Nonzero `(ℒ, count)` pairs at `g^n`.
    pub fn terms(&self, n: usize) -> Vec<(usize, BigInt)> {
        self.coefficients[n]
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l, c.to_integer()))
            .collect()
    }

    /// Series in `g` at a numeric α.
    pub fn at_alpha(&self, alpha: &Rational) -> GSeries {
        let c = self.coefficients.iter().map(|p| p.eval(alpha)).collect();
        GSeries::new(crate::exactalg::Var::G, c, self.order)
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coefficients
            .iter()
            .all(|p| p.coeffs().iter().all(|c| c.is_integer() && !c.is_negative()))
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = (0..self.coefficients.len())
            .filter(|&n| !self.coefficients[n].is_zero())
            .map(|n| {
                let terms: Vec<Value> = self
                    .terms(n)
                    .into_iter()
                    .map(|(l, c)| json!({"L": l, "count": big_json(&c)}))
                    .collect();
                json!({"N": n, "terms": terms})
            })
            .collect();
        json!({
            "family": self.family.short(),
            "d": self.d,
            "k": self.k,
            "order": self.order,
            "coefficients": coeffs,
        })
    }

    pub fn csv_header() -> &'static str {
        "family,d,k,N,L,count"
    }

    pub fn to_csv_rows(&self) -> Vec<String> {
        let mut rows = Vec::new();
        for n in 0..self.coefficients.len() {
            for (l, c) in self.terms(n) {
                rows.push(format!(
                    "{},{},{},{},{},{}",
                    self.family.short(),
                    self.d,
                    self.k,
                    n,
                    l,
                    c
                ));
            }
        }
        rows
    }
}

fn big_json(c: &BigInt) -> Value {
    match c.to_u64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// `Z` in `x` for a top-level weight list and its shifted counterpart.
fn z_in_x(
    family: Family,
    top: &[(Rational, i64)],
    sub: &[(Rational, i64)],
    k: i64,
    m: i64,
) -> Result<GSeries, GenfunError> {
    let lam = LambdaBranch::chain(family, top, m)?;
    let lam1 = LambdaBranch::chain(family, sub, m)?;
    Ok(match family {
        Family::Quadrangulation => &t_in_x(family, m) * &(&lam.t_factor(k, m) - &lam1.t_factor(k - 1, m)),
        Family::Triangulation => &r_in_x(family, m) * &(&lam.r_factor(k, m) - &lam1.r_factor(k - 1, m)),
    })
}

fn shifted(w: &[(Rational, i64)]) -> Vec<(Rational, i64)> {
    w.iter().map(|(a, d)| (a.clone(), d - 1)).collect()
}

fn z_eval(
    family: Family,
    weights: &[(Rational, i64)],
    k: i64,
    order: i64,
    xg: &GSeries,
) -> Result<GSeries, GenfunError> {
    let m = inner_order(family, order);
    let zx = z_in_x(family, weights, &shifted(weights), k, m)?;
    Ok(to_g(family, &zx, xg)?.truncate(order))
}

/// `Z(α;d,k)` at a numeric α, as a series in `g`. α is treated formally, so
/// any rational works.
pub fn z_single_at(family: Family, alpha: &Rational, d: i64, k: i64, order: i64) -> Result<GSeries, GenfunError> {
    family.check_dk(d, k)?;
    let xg = x_of_g(family, inner_order(family, order))?;
    z_eval(family, &[(alpha.clone(), d)], k, order, &xg)
}

/// `Z(α₁,α₂;d₁,d₂)` for k-slices at numeric weights, as a series in `g`.
pub fn z_double_eval(
    family: Family,
    alpha1: &Rational,
    alpha2: &Rational,
    d1: i64,
    d2: i64,
    k: i64,
    order: i64,
) -> Result<GSeries, GenfunError> {
    family.check_dk(d1, k)?;
    family.check_dk(d2, k)?;
    if d1 > d2 {
        return Err(GenfunError::OutOfRange(format!("need d1 <= d2, got d1={d1}, d2={d2}")));
    }
    let xg = x_of_g(family, inner_order(family, order))?;
    z_eval(family, &[(alpha1.clone(), d1), (alpha2.clone(), d2)], k, order, &xg)
}

/// Degree bound in α at series order `order` (in `g`).
pub(crate) fn degree_bound(family: Family, order: i64) -> usize {
    match family {
        Family::Quadrangulation => 2 * order as usize,
        Family::Triangulation => (3 * order as usize).div_ceil(2),
    }
}

/// Exact table `Z(α;d,k)` through `g^order`.
pub fn z_single(family: Family, d: i64, k: i64, order: i64) -> Result<ZTable, GenfunError> {
    family.check_dk(d, k)?;
    let bound = degree_bound(family, order);
    let xg = x_of_g(family, inner_order(family, order))?;
    let nodes: Vec<Rational> = (1..=bound as i64 + 1).map(int).collect();
    let evals: Vec<GSeries> = nodes
        .par_iter()
        .map(|a| z_eval(family, &[(a.clone(), d)], k, order, &xg))
        .collect::<Result<_, _>>()?;
    let mut coefficients = Vec::with_capacity(order as usize + 1);
    for n in 0..=order {
        let pts: Vec<(Rational, Rational)> = nodes.iter().zip(&evals).map(|(a, s)| (a.clone(), s.coeff(n))).collect();
        coefficients.push(lagrange_interpolate(&pts, bound)?);
    }
    Ok(ZTable {
        family,
        d,
        k,
        order,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn quad_23_leading() {
        let z = z_single(Family::Quadrangulation, 2, 3, 3).unwrap();
        assert_eq!(z.terms(2), vec![(2, BigInt::from(1))]);
        assert_eq!(z.terms(3), vec![(2, BigInt::from(15))]);
    }

    #[test]
    fn tri_12_g4() {
        let z = z_single(Family::Triangulation, 1, 2, 4).unwrap();
        assert_eq!(z.coefficients[4], Poly::from_ints(&[0, 14, 1]));
    }

    #[test]
    fn two_point_function_independent_of_d() {
        let one = rat(1, 1);
        let a = z_single_at(Family::Quadrangulation, &one, 2, 4, 6).unwrap();
        let b = z_single_at(Family::Quadrangulation, &one, 3, 4, 6).unwrap();
        assert_eq!(a, b);
        let c: Vec<i64> = (3..=6).map(|n| a.coeff(n).to_integer().try_into().unwrap()).collect();
        assert_eq!(c, vec![1, 22, 343, 4676]);
    }

    #[test]
    fn double_marginals() {
        for fam in Family::ALL {
            let (d1, d2, k) = (fam.min_d(), fam.min_d() + 1, fam.min_k() + 1);
            let a = rat(1, 2);
            let one = rat(1, 1);
            let z = z_double_eval(fam, &a, &one, d1, d2, k, 6).unwrap();
            assert_eq!(z, z_single_at(fam, &a, d1, k, 6).unwrap());
            let z = z_double_eval(fam, &one, &a, d1, d2, k, 6).unwrap();
            assert_eq!(z, z_single_at(fam, &a, d2, k, 6).unwrap());
        }
    }

    #[test]
    fn json_shape() {
        let z = z_single(Family::Quadrangulation, 2, 3, 3).unwrap();
        let v = z.to_json();
        assert_eq!(v["coefficients"][0]["N"], 2);
        assert_eq!(v["coefficients"][1]["terms"][0]["count"], 15);
        assert_eq!(z.to_csv_rows()[1], "quad,2,3,3,2,15");
    }
}
