use libm::erf;
use num::complex::Complex64;
use std::f64::consts::PI;

/// An exact Laplace pair `σ^n/(1+σ)^{5/2} <-> f(ℓ)` (or `σ^n <-> f(ℓ)` for
/// the pure powers).
#[derive(Clone, Copy, Debug)]
pub struct TransformPair {
    pub n: i32,
    pub pure_power: bool,
    pub closed_form: fn(f64) -> f64,
}

impl TransformPair {
    pub fn forward(&self, s: Complex64) -> Complex64 {
        let p = s.powi(self.n);
        if self.pure_power {
            p
        } else {
            p / (s + 1.0).powf(2.5)
        }
    }

    /// Exact inverse at `ℓ`. Below `ℓ = 1/2` the closed forms cancel
    /// catastrophically and the everywhere-convergent expansion
    /// `Σ_j C(-5/2, j) ℓ^{j+3/2-n} / Γ(j+5/2-n)` is summed instead.
    pub fn inverse(&self, l: f64) -> f64 {
        if self.pure_power || l >= 0.5 {
            (self.closed_form)(l)
        } else {
            small_l_series(self.n, l)
        }
    }

    pub fn name(&self) -> String {
        if self.pure_power {
            format!("s^{}", self.n)
        } else {
            format!("s^{}/(1+s)^(5/2)", self.n)
        }
    }
}

fn small_l_series(n: i32, l: f64) -> f64 {
    let mut binom = 1.0;
    let mut sum = 0.0;
    for j in 0..200 {
        let a = j as f64 + 2.5 - n as f64;
        let term = binom * (l.ln() * (a - 1.0) - libm::lgamma(a)).exp();
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        binom *= (-2.5 - j as f64) / (j as f64 + 1.0);
    }
    sum
}

fn sqrt_pi() -> f64 {
    PI.sqrt()
}

fn inv_m4(l: f64) -> f64 {
    let r = l.sqrt();
    (-l).exp() * r * (4.0 * l * l + 315.0) / (24.0 * sqrt_pi())
        + (8.0 * l.powi(3) - 60.0 * l * l + 210.0 * l - 315.0) * erf(r) / 48.0
}

fn inv_m3(l: f64) -> f64 {
    let r = l.sqrt();
    -5.0 * (-l).exp() * r * (2.0 * l + 21.0) / (12.0 * sqrt_pi()) + (4.0 * l * l - 20.0 * l + 35.0) * erf(r) / 8.0
}

fn inv_m2(l: f64) -> f64 {
    let r = l.sqrt();
    (-l).exp() * r * (4.0 * l + 15.0) / (3.0 * sqrt_pi()) + (2.0 * l - 5.0) * erf(r) / 2.0
}

fn inv_m1(l: f64) -> f64 {
    let r = l.sqrt();
    -2.0 * (-l).exp() * r * (2.0 * l + 3.0) / (3.0 * sqrt_pi()) + erf(r)
}

fn inv_0(l: f64) -> f64 {
    4.0 * (-l).exp() * l.powf(1.5) / (3.0 * sqrt_pi())
}

fn inv_1(l: f64) -> f64 {
    -2.0 * (-l).exp() * l.sqrt() * (2.0 * l - 3.0) / (3.0 * sqrt_pi())
}

/// The six `σ^n/(1+σ)^{5/2}` pairs (`n = -4..=1`) followed by `σ^{-4}, σ^{-3}, σ^{-2}`.
pub fn appendix_a_pairs() -> Vec<TransformPair> {
    let mixed: [(i32, fn(f64) -> f64); 6] = [
        (-4, inv_m4),
        (-3, inv_m3),
        (-2, inv_m2),
        (-1, inv_m1),
        (0, inv_0),
        (1, inv_1),
    ];
    let pure: [(i32, fn(f64) -> f64); 3] = [(-4, |l| l.powi(3) / 6.0), (-3, |l| l * l / 2.0), (-2, |l| l)];
    mixed
        .into_iter()
        .map(|(n, closed_form)| TransformPair {
            n,
            pure_power: false,
            closed_form,
        })
        .chain(pure.into_iter().map(|(n, closed_form)| TransformPair {
            n,
            pure_power: true,
            closed_form,
        }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_matches_closed_forms() {
        for p in appendix_a_pairs().iter().filter(|p| !p.pure_power) {
            for l in [0.5, 0.8, 1.2, 2.0] {
                let (a, b) = ((p.closed_form)(l), small_l_series(p.n, l));
                assert!(((a - b) / a).abs() < 1e-11, "{} at {l}: {a} vs {b}", p.name());
            }
        }
    }
}
