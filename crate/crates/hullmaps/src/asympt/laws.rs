use super::special::{erfc_defect, erfcx, tail_coefficient};
use super::AsymptError;
use crate::exactalg::{int, rat, to_f64, Rational};
use num::complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), AsymptError> {
    if ok {
        Ok(())
    } else {
        Err(AsymptError::Domain(what()))
    }
}

/// `b(u) = (1-u)²/u²`.
pub fn b_of(u: f64) -> f64 {
    ((1.0 - u) / u).powi(2)
}

/// `σ(τ;u) = (1 - 2u + cτ(1-u)²)/u²`.
pub fn sigma_of(tau: f64, u: f64, c: f64) -> f64 {
    (1.0 - 2.0 * u + c * tau * (1.0 - u).powi(2)) / (u * u)
}

/// `E[e^{-τL}] = (1 + cτ)^{-3/2}` in the `k → ∞`, `d → ∞` limit.
pub fn pinf_laplace(tau: f64, c: f64) -> Result<f64, AsymptError> {
    check(tau >= 0.0 && c > 0.0, || {
        format!("need τ ≥ 0 and c > 0, got τ = {tau}, c = {c}")
    })?;
    Ok((1.0 + c * tau).powf(-1.5))
}

pub fn pinf_laplace_complex(tau: Complex64, c: f64) -> Complex64 {
    (tau * c + 1.0).powf(-1.5)
}

/// `(2/√π) √L c^{-3/2} e^{-L/c}`.
pub fn pinf_density(l: f64, c: f64) -> Result<f64, AsymptError> {
    check(l >= 0.0 && c > 0.0, || {
        format!("need L ≥ 0 and c > 0, got L = {l}, c = {c}")
    })?;
    Ok(2.0 / PI.sqrt() * l.sqrt() / c.powf(1.5) * (-l / c).exp())
}

const F_TERMS: usize = 90;
/// Below this `|σ|` the brackets of `F` are summed from their Taylor series.
const F_SERIES_RADIUS: f64 = 0.5;

/// Taylor coefficients of `P(σ)/(4(1+σ)^{5/2}) + Q(σ)`, divided by `σ^shift`.
fn bracket_series(p: &[i64], q: &[i64], shift: usize) -> Vec<f64> {
    let n = F_TERMS + shift;
    let mut binom: Vec<Rational> = Vec::with_capacity(n);
    binom.push(int(1));
    for j in 0..n - 1 {
        let next = &binom[j] * rat(-5 - 2 * j as i64, 2 * (j as i64 + 1));
        binom.push(next);
    }
    let mut c = vec![int(0); n];
    for (i, &pi) in p.iter().enumerate() {
        for j in 0..n - i {
            c[i + j] += &binom[j] * rat(pi, 4);
        }
    }
    for (i, &qi) in q.iter().enumerate() {
        c[i] += int(qi);
    }
    assert!(
        c[..shift].iter().all(|x| x == &int(0)),
        "bracket does not vanish to order {shift}"
    );
    c[shift..].iter().map(to_f64).collect()
}

const P1: [i64; 5] = [48, 120, 90, 47, 8];
const Q1: [i64; 1] = [-12];
const P2: [i64; 5] = [32, 68, 30, 19, 4];
const Q2: [i64; 2] = [-8, 3];
const P3: [i64; 6] = [-24, -40, -7, 0, 16, 4];
const Q3: [i64; 3] = [6, -5, 3];

fn f_series() -> &'static [Vec<f64>; 3] {
    static S: OnceLock<[Vec<f64>; 3]> = OnceLock::new();
    S.get_or_init(|| {
        [
            bracket_series(&P1, &Q1, 3),
            bracket_series(&P2, &Q2, 3),
            bracket_series(&P3, &Q3, 4),
        ]
    })
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn poly(c: &[i64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a as f64)
}

/// `F(σ;u)` for complex `σ` off the cut `σ ≤ -1`.
pub fn f_of_complex(sigma: Complex64, u: f64) -> Complex64 {
    let w1 = u.powi(3);
    let w2 = u * (1.0 - 2.0 * u);
    let w3 = (1.0 - 2.0 * u) * (1.0 - u).powi(2) * (1.0 - 2.0 * u + 2.0 * u * u) / u.powi(3);
    let (b1, b2, b3) = if sigma.norm() < F_SERIES_RADIUS {
        let s = f_series();
        (horner(&s[0], sigma), horner(&s[1], sigma), horner(&s[2], sigma))
    } else {
        let root = (sigma + 1.0).powf(2.5) * 4.0;
        let s3 = sigma.powi(3);
        (
            (poly(&P1, sigma) / root + poly(&Q1, sigma)) / s3,
            (poly(&P2, sigma) / root + poly(&Q2, sigma)) / s3,
            (poly(&P3, sigma) / root + poly(&Q3, sigma)) / (s3 * sigma),
        )
    };
    b1 * w1 + b2 * w2 + b3 * w3
}

#[allow(non_snake_case)]
pub fn F_of(sigma: f64, u: f64) -> Result<f64, AsymptError> {
    check(u > 0.0 && u < 1.0, || format!("F(σ;u) needs 0 < u < 1, got u = {u}"))?;
    check(sigma > -1.0, || format!("F(σ;u) needs σ > -1, got σ = {sigma}"))?;
    Ok(f_of_complex(Complex64::new(sigma, 0.0), u).re)
}

/// `lim E_k[e^{-τ L(ku)}] = F(σ(τ;u); u)`.
pub fn ktau_laplace(tau: f64, u: f64, c: f64) -> Result<f64, AsymptError> {
    check(tau >= 0.0, || format!("need τ ≥ 0, got {tau}"))?;
    F_of(sigma_of(tau, u, c), u)
}

pub fn ktau_laplace_complex(tau: Complex64, u: f64, c: f64) -> Complex64 {
    let sigma = (tau * (c * (1.0 - u).powi(2)) + (1.0 - 2.0 * u)) / (u * u);
    f_of_complex(sigma, u)
}

/// Density `𝒫(L;u)` of `L(ku)`.
pub fn pu_density(l: f64, u: f64, c: f64) -> Result<f64, AsymptError> {
    check(l >= 0.0 && c > 0.0, || {
        format!("need L ≥ 0 and c > 0, got L = {l}, c = {c}")
    })?;
    check(u > 0.0 && u < 1.0, || format!("𝒫(L;u) needs 0 < u < 1, got u = {u}"))?;
    let b = b_of(u);
    let ell = l / (c * b);
    let p = 2.0 * b * (b * b - 1.0) * ell * ell - (5.0 * b.powi(3) + 3.0 * b + 4.0) * ell + 6.0 * (b.powi(3) - 1.0);
    let r = b * (15.0 * b * b - 1.0) * ell + 2.0 * (5.0 * b.powi(3) - 1.0);
    let bracket = erfc_defect(ell) * p + r;
    Ok(pinf_density(l, c)? * bracket / (4.0 * (b.sqrt() + b).powi(3)))
}

/// Density of `R(d) = ℒ(d)/(k-d)²`: `b 𝒫(bR; u)`.
pub fn ptilde_density(r: f64, u: f64, c: f64) -> Result<f64, AsymptError> {
    let b = b_of(u);
    Ok(b * pu_density(b * r, u, c)?)
}

/// `u → 1` limit of [`ptilde_density`].
pub fn ptilde1_density(r: f64, c: f64) -> Result<f64, AsymptError> {
    check(r >= 0.0 && c > 0.0, || {
        format!("need R ≥ 0 and c > 0, got R = {r}, c = {c}")
    })?;
    let y = r / c;
    let h = if y > 60.0 {
        // 2(y+1) - (2y+3) √(πy) erfcx(√y) = -Σ_{m≥1} (2 s_{m+1} + 3 s_m) y^{-m}
        let mut sum = 0f64;
        let mut prev = f64::INFINITY;
        // the m = 1 coefficient vanishes
        for m in 2..60 {
            let t = (2.0 * tail_coefficient(m + 1) + 3.0 * tail_coefficient(m)) / y.powi(m as i32);
            if t.abs() > prev || t.abs() < 1e-18 * sum.abs() {
                break;
            }
            prev = t.abs();
            sum -= t;
        }
        (y / PI).sqrt() * sum
    } else {
        2.0 * (y / PI).sqrt() * (y + 1.0) - y * (2.0 * y + 3.0) * erfcx(y.sqrt())
    };
    Ok(h / c)
}

/// Joint transform `E[e^{-τ₁L(d) - τ₂L(vd)}]`, `v > 1`.
pub fn joint_laplace(tau1: f64, tau2: f64, v: f64, c: f64) -> Result<f64, AsymptError> {
    check(tau1 >= 0.0 && tau2 >= 0.0, || {
        format!("need τ₁, τ₂ ≥ 0, got {tau1}, {tau2}")
    })?;
    check(v > 1.0, || format!("joint law needs v > 1, got v = {v}"))?;
    Ok(joint_laplace_complex(Complex64::new(tau1, 0.0), Complex64::new(tau2, 0.0), v, c).re)
}

pub fn joint_laplace_complex(tau1: Complex64, tau2: Complex64, v: f64, c: f64) -> Complex64 {
    let a = tau1 * c + 1.0;
    let w = a.sqrt();
    let ct2 = tau2 * c;
    let den = a * (tau2 * c + 1.0) * (v * v) - ct2 * (a - w) * (2.0 * v) + ct2 * (a + 1.0 - w * 2.0);
    den.powf(-1.5) * v.powi(3)
}

/// `2 / (3 max(v, 1/v))`.
pub fn cor(v: f64) -> Result<f64, AsymptError> {
    check(v > 0.0, || format!("Cor(v) needs v > 0, got {v}"))?;
    Ok(2.0 / (3.0 * v.max(1.0 / v)))
}

/// `L_av(u) = (3c/2)(1 + u - 3u⁶ + u⁷)`.
pub fn lav(u: f64, c: f64) -> Result<f64, AsymptError> {
    check((0.0..=1.0).contains(&u), || format!("L_av(u) needs 0 ≤ u ≤ 1, got {u}"))?;
    Ok(1.5 * c * (1.0 + u - 3.0 * u.powi(6) + u.powi(7)))
}

/// Mean of `L(vd)` given `L(d) = L₁`.
pub fn lav_cond(v: f64, l1: f64, c: f64) -> Result<f64, AsymptError> {
    check(v >= 1.0 && l1 >= 0.0, || {
        format!("L_av(v|L₁) needs v ≥ 1 and L₁ ≥ 0, got v = {v}, L₁ = {l1}")
    })?;
    Ok((3.0 * c * (v - 1.0).powi(2) + 3.0 * (PI * c * l1).sqrt() * (v - 1.0) + 2.0 * l1) / (2.0 * v * v))
}

/// Mean profile `u² L_av(u)`.
pub fn profile(u: f64, c: f64) -> Result<f64, AsymptError> {
    Ok(u * u * lav(u, c)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_at_zero() {
        for u in [0.2f64, 0.5, 0.8] {
            let want = (512.0 * u.powi(6) - 3012.0 * u.powi(5) + 7518.0 * u.powi(4) - 10020.0 * u.powi(3)
                + 7515.0 * u * u
                - 3006.0 * u
                + 501.0)
                / (64.0 * u.powi(3));
            assert!((F_of(0.0, u).unwrap() - want).abs() < 1e-12 * want.abs());
        }
    }

    #[test]
    fn f_continuous_across_series_switch() {
        for u in [0.3f64, 0.7] {
            for phase in [0.0, 1.0, 2.5] {
                let z = Complex64::from_polar(F_SERIES_RADIUS, phase);
                let closed = {
                    let root = (z + 1.0).powf(2.5) * 4.0;
                    let s3 = z.powi(3);
                    let w3 = (1.0 - 2.0 * u) * (1.0 - u).powi(2) * (1.0 - 2.0 * u + 2.0 * u * u) / u.powi(3);
                    (poly(&P1, z) / root + poly(&Q1, z)) / s3 * u.powi(3)
                        + (poly(&P2, z) / root + poly(&Q2, z)) / s3 * (u * (1.0 - 2.0 * u))
                        + (poly(&P3, z) / root + poly(&Q3, z)) / (s3 * z) * w3
                };
                let series = f_of_complex(z * (1.0 - 1e-12), u);
                assert!((closed - series).norm() < 1e-10 * closed.norm().max(1.0));
            }
        }
    }

    #[test]
    fn normalised_at_zero() {
        for u in [0.25, 0.5, 0.75] {
            assert!((ktau_laplace(0.0, u, 1.0 / 3.0).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn small_u_limit_is_linear() {
        let c = 1.0 / 3.0;
        let limit = pinf_laplace(1.0, c).unwrap();
        let e3 = ktau_laplace(1.0, 1e-3, c).unwrap() - limit;
        let e4 = ktau_laplace(1.0, 1e-4, c).unwrap() - limit;
        assert!(e3.abs() < 5e-4);
        assert!((e3 / e4 - 10.0).abs() < 0.05, "{e3} {e4}");
    }

    #[test]
    fn ptilde_approaches_u_one() {
        let c = 1.0 / 3.0;
        for r in [0.1, 0.5, 2.0] {
            let a = ptilde_density(r, 1.0 - 1e-5, c).unwrap();
            let b = ptilde1_density(r, c).unwrap();
            assert!((a - b).abs() < 1e-3 * b, "{r}: {a} {b}");
        }
        // mpmath, on both sides of the switch at R = 60c
        for (r, v) in [
            (0.5, 0.28935127863364567702),
            (2.0, 0.093905562332798269982),
            (10.0, 0.013252804048913481225),
            (20.0, 0.0050437674270629417829),
            (30.0, 0.0028173827525527897326),
        ] {
            assert!(((ptilde1_density(r, c).unwrap() - v) / v).abs() < 1e-10, "{r}");
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(cor(1.0).unwrap(), 2.0 / 3.0);
        assert!((cor(0.5).unwrap() - cor(2.0).unwrap()).abs() < 1e-16);
        assert!(lav(1.0, 0.5).unwrap().abs() < 1e-15);
        assert!((lav_cond(1.0, 0.7, 1.0 / 3.0).unwrap() - 0.7).abs() < 1e-15);
        assert!((lav_cond(1e8, 0.7, 1.0 / 3.0).unwrap() - 0.5).abs() < 1e-6);
        assert!((profile(0.5, 1.0 / 3.0).unwrap() - 0.25 * lav(0.5, 1.0 / 3.0).unwrap()).abs() < 1e-16);
        assert!(pinf_density(-1.0, 0.3).is_err());
        assert!(joint_laplace(1.0, 1.0, 1.0, 0.3).is_err());
    }
}
