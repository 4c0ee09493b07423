use super::AsymptError;
use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Largest cached index.
pub const PI_CACHE_MAX: usize = 200;
const MAX_TERMS: usize = PI_CACHE_MAX + 1;

/// `π_n(t) = -e^{t²/2} d^{n+1}/dt^{n+1} (tⁿ e^{-t²/2})`, with integer coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PiPolynomial {
    pub n: usize,
    /// Coefficient of `t^i` at index `i`.
    pub coeffs: Vec<BigInt>,
    /// `(log|a_j|, sign, 2j+1)` for the nonzero coefficients `a_j` of
    /// `t^{2j+1}` scaled by `1/((n+1)! Γ((n+1)/2))`.
    scaled: Vec<(f64, f64, i32)>,
}

impl PiPolynomial {
    fn build(n: usize) -> Self {
        // P ↦ P' - tP, n+1 times, starting from tⁿ
        let mut p = vec![BigInt::zero(); n + 1];
        p[n] = BigInt::one();
        for _ in 0..=n {
            let mut q = vec![BigInt::zero(); p.len() + 1];
            for (i, a) in p.iter().enumerate() {
                if i > 0 {
                    q[i - 1] += a * BigInt::from(i);
                }
                q[i + 1] -= a;
            }
            p = q;
        }
        let coeffs: Vec<BigInt> = p.into_iter().map(|a| -a).collect();
        let fact: BigInt = (1..=n as u64 + 1).map(BigInt::from).product();
        let lg = libm::lgamma((n as f64 + 1.0) / 2.0);
        let scaled = coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| {
                let r = BigRational::new(a.abs(), fact.clone());
                let log = ln_ratio(&r) - lg;
                (log, if a.is_negative() { -1.0 } else { 1.0 }, i as i32)
            })
            .collect();
        PiPolynomial { n, coeffs, scaled }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * t + a.to_f64().unwrap_or(f64::NAN))
    }

    /// `x^{n/2} π_n(t) / ((n+1)! Γ((n+1)/2))`, evaluated monomial by
    /// monomial in log space, with the sum of the monomial magnitudes.
    fn scaled_term(&self, x: f64, t: f64) -> (f64, f64) {
        if t == 0.0 {
            return (0.0, 0.0);
        }
        let base = if self.n == 0 { 0.0 } else { 0.5 * self.n as f64 * x.ln() };
        let lt = t.ln();
        self.scaled.iter().fold((0.0, 0.0), |(v, a), &(log, sign, e)| {
            let m = (log + base + e as f64 * lt).exp();
            (v + sign * m, a + m)
        })
    }
}

/// `ln` of a positive big rational.
fn ln_ratio(r: &BigRational) -> f64 {
    fn ln_big(a: &BigInt) -> f64 {
        let bits = a.bits();
        if bits < 1000 {
            return a.to_f64().unwrap().ln();
        }
        let shift = bits - 60;
        (a >> shift as usize).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

fn cache() -> &'static [OnceLock<PiPolynomial>; PI_CACHE_MAX + 1] {
    static C: [OnceLock<PiPolynomial>; PI_CACHE_MAX + 1] = [const { OnceLock::new() }; PI_CACHE_MAX + 1];
    &C
}

/// `π_n`, cached for `n ≤ PI_CACHE_MAX`.
pub fn pi_poly(n: usize) -> PiPolynomial {
    pi_poly_ref(n, |p| p.clone())
}

fn pi_poly_ref<R>(n: usize, f: impl FnOnce(&PiPolynomial) -> R) -> R {
    if n <= PI_CACHE_MAX {
        f(cache()[n].get_or_init(|| PiPolynomial::build(n)))
    } else {
        f(&PiPolynomial::build(n))
    }
}

/// Joint density `𝒫(L₁, L₂; v)` of `(L(d), L(vd))`.
///
/// Sums the π_n series until ten consecutive terms fall below `1e-14` of the
/// running sum. When the monomials of the series cancel beyond `1e-12` of the
/// result (large `L₁` or `L₂`), falls back to [`joint_density_contour`].
pub fn joint_density(l1: f64, l2: f64, v: f64, c: f64) -> Result<f64, AsymptError> {
    match series(l1, l2, v, c, None)? {
        Some(p) => Ok(p),
        None => joint_density_contour(l1, l2, v, c),
    }
}

/// The π_n series cut after `π_{max_n}`, or summed adaptively when `max_n`
/// is `None` (erroring instead of falling back).
pub fn joint_density_terms(l1: f64, l2: f64, v: f64, c: f64, max_n: Option<usize>) -> Result<f64, AsymptError> {
    series(l1, l2, v, c, max_n)?.ok_or_else(|| {
        AsymptError::NoConvergence(format!(
            "joint density series is ill-conditioned or unsettled at L₁ = {l1}, L₂ = {l2}, v = {v}"
        ))
    })
}

fn check_args(l1: f64, l2: f64, v: f64, c: f64) -> Result<(), AsymptError> {
    if l1 >= 0.0 && l2 >= 0.0 && v > 1.0 && c > 0.0 {
        return Ok(());
    }
    Err(AsymptError::Domain(format!(
        "joint density needs L₁, L₂ ≥ 0, v > 1, c > 0; got L₁ = {l1}, L₂ = {l2}, v = {v}, c = {c}"
    )))
}

/// `Ok(None)` when the adaptive sum is unsettled or too cancelled to trust.
fn series(l1: f64, l2: f64, v: f64, c: f64, max_n: Option<usize>) -> Result<Option<f64>, AsymptError> {
    check_args(l1, l2, v, c)?;
    let w = (v - 1.0).powi(2);
    let x = l1 / (c * w);
    let t2 = (2.0 * l2 * v * v / (c * w)).sqrt();
    let pref = 2.0 / PI.sqrt() * l1.sqrt() / c.powf(1.5) * (-l1 / c).exp() * 2f64.sqrt() / c * v * v / w
        * (-t2 * t2 / 2.0).exp();
    if l1 == 0.0 || l2 == 0.0 {
        return Ok(Some(0.0));
    }
    let mut sum = 0.0;
    let mut mass = 0.0;
    let mut size = 0.0;
    let mut quiet = 0;
    let last = max_n.unwrap_or(MAX_TERMS - 1);
    for n in 0..=last {
        let (term, abs) = pi_poly_ref(n, |p| p.scaled_term(x, t2));
        let term = if n % 2 == 1 { -term } else { term };
        sum += term;
        mass += abs;
        size += term.abs();
        if max_n.is_none() {
            if mass * 1e-15 > 1e-12 * size {
                return Ok(None);
            }
            quiet = if term.abs() < 1e-14 * sum.abs() { quiet + 1 } else { 0 };
            if quiet == 10 {
                let trusted = mass * 1e-15 < 1e-12 * sum.abs();
                return Ok(trusted.then_some(pref * sum));
            }
        }
    }
    Ok(max_n.map(|_| pref * sum))
}

/// `𝒫(L₁, L₂; v)` as one line integral.
///
/// With `ω = √(1+cτ₁)` and the `L₂`-inverse of the joint transform in closed
/// form, `𝒫 = (e^{-y}/(cπ)) ∫ e^{ω²y} H(ω) ω dη` along `ω = σ₀ + iη`,
/// `y = L₁/c`. The integrand is entire in `ω` except at `ω = -1/(v-1)`, so
/// `σ₀` is taken at the real saddle of `ω²y - A ω²/((v-1)ω+1)²`, `A = L₂v²/c`.
/// Trapezoid rule in `η = w sinh t`, halving the step until two levels agree.
pub fn joint_density_contour(l1: f64, l2: f64, v: f64, c: f64) -> Result<f64, AsymptError> {
    check_args(l1, l2, v, c)?;
    if l1 == 0.0 || l2 == 0.0 {
        return Ok(0.0);
    }
    let (y, big_a, a) = (l1 / c, l2 * v * v / c, v - 1.0);
    let sigma = if big_a > y { ((big_a / y).cbrt() - 1.0) / a } else { 0.0 };
    let psi = |om: Complex64| {
        let g = om / (om * a + 1.0);
        om * om * y - g * g * big_a - y
    };
    let peak = psi(Complex64::new(sigma, 0.0)).re;
    let pref = 2.0 * (l2 / PI).sqrt() * v.powi(3) / c.powf(1.5) / (c * PI);
    if peak + pref.ln() < -800.0 {
        return Ok(0.0);
    }
    let f = |eta: f64| {
        let om = Complex64::new(sigma, eta);
        ((psi(om) - peak).exp() * om / (om * a + 1.0).powi(3)).re
    };
    let d = a * sigma + 1.0;
    let curv = 2.0 * y - 2.0 * big_a * (1.0 / d.powi(4) - 2.0 * a * sigma / d.powi(4));
    let width = 1.0 / curv.max(y).sqrt();

    // η = width·sinh(t): the peak and the Gaussian tail on one lattice
    let g = |t: f64| f(width * t.sinh()) * width * t.cosh();
    let trapezoid = |h: f64| {
        let (mut s, mut scale) = (0.5 * g(0.0), 0.5 * g(0.0).abs());
        let mut small = 0;
        let mut j = 1usize;
        while small < 8 && (j as f64) * h < 40.0 {
            let gj = g(j as f64 * h);
            s += gj;
            scale += gj.abs();
            small = if gj.abs() < 1e-18 * scale { small + 1 } else { 0 };
            j += 1;
        }
        (2.0 * h * s, 2.0 * h * scale)
    };
    let mut h = 0.25;
    let (mut prev, _) = trapezoid(h);
    for _ in 0..8 {
        h /= 2.0;
        let (cur, scale) = trapezoid(h);
        if (cur - prev).abs() <= 1e-14 * scale {
            return Ok(pref * peak.exp() * cur);
        }
        prev = cur;
    }
    Err(AsymptError::NoConvergence(format!(
        "joint density line integral did not settle at L₁ = {l1}, L₂ = {l2}, v = {v}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &PiPolynomial) -> Vec<i64> {
        p.coeffs.iter().map(|a| a.to_i64().unwrap()).collect()
    }

    #[test]
    fn first_polynomials() {
        assert_eq!(ints(&pi_poly(0)), vec![0, 1]);
        assert_eq!(ints(&pi_poly(1)), vec![0, 3, 0, -1]);
        assert_eq!(ints(&pi_poly(2)), vec![0, 12, 0, -9, 0, 1]);
        assert_eq!(ints(&pi_poly(3)), vec![0, 60, 0, -75, 0, 18, 0, -1]);
    }

    #[test]
    fn structure() {
        for n in [5, 17, 40] {
            let p = pi_poly(n);
            assert_eq!(p.degree(), 2 * n + 1);
            assert!(p.coeffs.iter().step_by(2).all(|a| a.is_zero()));
        }
    }

    #[test]
    fn matches_generator_numerically() {
        // Leibniz with D^m e^{-t²/2} = (-1)^m He_m(t) e^{-t²/2}
        fn he(m: usize, t: f64) -> f64 {
            let (mut a, mut b) = (1.0, t);
            if m == 0 {
                return a;
            }
            for k in 1..m {
                let c = t * b - k as f64 * a;
                a = b;
                b = c;
            }
            b
        }
        for n in 0..8usize {
            for t in [0.3f64, 1.1, 2.7] {
                let mut d = 0.0;
                let mut binom = 1.0;
                for j in 0..=n {
                    let falling: f64 = (0..j).map(|i| (n - i) as f64).product();
                    let m = n + 1 - j;
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    d += binom * falling * t.powi((n - j) as i32) * sign * he(m, t);
                    binom = binom * (n + 1 - j) as f64 / (j + 1) as f64;
                }
                let want = -d;
                let got = pi_poly(n).eval(t);
                assert!(
                    (got - want).abs() < 1e-9 * want.abs().max(1.0),
                    "n={n} t={t}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn boundary_values() {
        assert_eq!(joint_density(0.0, 1.0, 2.0, 1.0 / 3.0).unwrap(), 0.0);
        assert_eq!(joint_density(1.0, 0.0, 2.0, 1.0 / 3.0).unwrap(), 0.0);
        assert!(joint_density(1.0, 1.0, 1.0, 1.0 / 3.0).is_err());
    }

    #[test]
    fn line_integral_reference() {
        // mpmath, Talbot inversion of the closed-form L₂-inverse at 40 digits
        let third = 1.0 / 3.0;
        for (l1, l2, v, c, want) in [
            (1.0, 0.4, 2.0, third, 0.25851016556629662222),
            (0.5, 2.0, 1.5, third, 0.00085855253118438766058),
            (0.05, 5.0, 1.5, third, 2.9399254469748456096e-34),
            (4.0, 20.0, 1.5, 0.5, 3.1622136573695911034e-30),
        ] {
            let got = joint_density_contour(l1, l2, v, c).unwrap();
            assert!(((got - want) / want).abs() < 1e-11, "({l1},{l2}): {got}");
            assert!(((joint_density(l1, l2, v, c).unwrap() - want) / want).abs() < 1e-11);
        }
    }

    #[test]
    fn series_agrees_where_trusted() {
        let mut used = 0;
        for (v, c) in [(1.5, 1.0 / 3.0), (2.0, 0.5), (4.0, 1.0 / 3.0)] {
            for l1 in [0.05, 0.3, 1.0] {
                for l2 in [0.01, 0.2, 1.0, 3.0] {
                    if let Ok(s) = joint_density_terms(l1, l2, v, c, None) {
                        let k = joint_density_contour(l1, l2, v, c).unwrap();
                        assert!((s - k).abs() < 1e-11 * k, "v={v} ({l1},{l2}): {s} vs {k}");
                        used += 1;
                    }
                }
            }
        }
        assert!(used >= 10, "{used}");
    }
}
