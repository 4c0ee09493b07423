//! Scaled complementary error function and friends.

use std::f64::consts::PI;

/// `e^{x²} erfc(x)` for `x ≥ 0`.
pub fn erfcx(x: f64) -> f64 {
    if x < 26.0 {
        let x2 = x * x;
        let lo = x.mul_add(x, -x2);
        x2.exp() * lo.exp() * libm::erfc(x)
    } else {
        (1.0 + scaled_tail(x * x)) / (x * PI.sqrt())
    }
}

/// Asymptotic series `Σ_{n≥1} (-1)^n (2n-1)!! / (2y)^n`, i.e.
/// `√(πy) erfcx(√y) - 1` for large `y`.
fn scaled_tail(y: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..60 {
        let next = -term * (2 * n - 1) as f64 / (2.0 * y);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

/// `√(πℓ) e^ℓ (1 - erf √ℓ) - 1`, accurate for all `ℓ ≥ 0`.
pub fn erfc_defect(l: f64) -> f64 {
    if l > 40.0 {
        scaled_tail(l)
    } else {
        (PI * l).sqrt() * erfcx(l.sqrt()) - 1.0
    }
}

/// Coefficients `s_n` of `√(πy) erfcx(√y) ~ Σ s_n y^{-n}`.
pub(crate) fn tail_coefficient(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, j| -acc * (2 * j - 1) as f64 / 2.0)
}
