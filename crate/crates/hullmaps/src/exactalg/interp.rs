use super::{ExactError, Poly, Rational};
use num::Zero;
use std::collections::HashSet;

/// Interpolates the unique polynomial of degree at most `degree_bound`
/// through `points`.
///
/// The first `degree_bound + 1` points determine the polynomial; any extra
/// points must agree with it.
pub fn lagrange_interpolate(points: &[(Rational, Rational)], degree_bound: usize) -> Result<Poly, ExactError> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(ExactError::TooFewPoints {
            needed,
            got: points.len(),
        });
    }
    let mut seen = HashSet::new();
    for (x, _) in points {
        if !seen.insert(x.clone()) {
            return Err(ExactError::DuplicateAbscissa(x.clone()));
        }
    }
    let pts = &points[..needed];
    // Newton divided differences
    let xs: Vec<Rational> = pts.iter().map(|p| p.0.clone()).collect();
    let mut dd: Vec<Rational> = pts.iter().map(|p| p.1.clone()).collect();
    for j in 1..needed {
        for i in (j..needed).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::constant(dd[needed - 1].clone());
    for i in (0..needed - 1).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), Rational::from_integer(1.into())]);
        p = &(&p * &lin) + &Poly::constant(dd[i].clone());
    }
    for (x, y) in &points[needed..] {
        if !(p.eval(x) - y).is_zero() {
            return Err(ExactError::DegreeBoundExceeded(degree_bound));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn pts(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(a, b)| (int(a), int(b))).collect()
    }

    #[test]
    fn constant_and_parabola() {
        let p = lagrange_interpolate(&pts(&[(0, 1), (1, 1), (2, 1)]), 2).unwrap();
        assert_eq!(p, Poly::from_ints(&[1]));
        let p = lagrange_interpolate(&pts(&[(0, 0), (1, 1), (2, 4)]), 2).unwrap();
        assert_eq!(p, Poly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            lagrange_interpolate(&pts(&[(0, 0), (0, 1), (2, 4)]), 2),
            Err(ExactError::DuplicateAbscissa(_))
        ));
        assert!(matches!(
            lagrange_interpolate(&pts(&[(0, 0), (1, 1)]), 2),
            Err(ExactError::TooFewPoints { needed: 3, got: 2 })
        ));
        assert!(matches!(
            lagrange_interpolate(&pts(&[(0, 0), (1, 1), (2, 5)]), 1),
            Err(ExactError::DegreeBoundExceeded(1))
        ));
    }
}
