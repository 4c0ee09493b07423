use super::NumError;
use num::complex::Complex64;
use std::f64::consts::PI;

/// Quadrature nodes on the Talbot contour (both half-planes).
pub const TALBOT_NODES: usize = 40;

/// Inverse Laplace transform of `f` at `t` with [`TALBOT_NODES`] nodes.
pub fn talbot_ilt<F: Fn(Complex64) -> Complex64>(f: F, t: f64) -> Result<f64, NumError> {
    talbot_ilt_with(f, t, TALBOT_NODES)
}

/// Midpoint rule with `m` nodes on Weideman's optimised cotangent contour
/// `s(θ) = (m/t)(-0.6122 + 0.5017 θ cot(0.6407 θ) + 0.2645 iθ)`, `θ ∈ (-π, π)`.
/// `f` must be analytic to the right of the contour and satisfy
/// `f(conj s) = conj f(s)`.
pub fn talbot_ilt_with<F: Fn(Complex64) -> Complex64>(f: F, t: f64, m: usize) -> Result<f64, NumError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(NumError::Domain(format!(
            "inverse Laplace transform needs t > 0, got {t}"
        )));
    }
    const A: f64 = -0.6122;
    const B: f64 = 0.5017;
    const C: f64 = 0.6407;
    const D: f64 = 0.2645;
    let scale = m as f64 / t;
    let h = 2.0 * PI / m as f64;
    let mut acc = 0.0;
    for k in 0..m / 2 {
        let theta = (k as f64 + 0.5) * h;
        let (sn, cs) = (C * theta).sin_cos();
        let cot = cs / sn;
        let s = Complex64::new(scale * (A + B * theta * cot), scale * D * theta);
        let ds = Complex64::new(scale * B * (cot - C * theta / (sn * sn)), scale * D);
        acc += ((s * t).exp() * f(s) * ds).im;
    }
    Ok(acc * h / PI)
}
