use super::AsymptError;
use crate::genfun::Family;
use num::complex::Complex64;

/// Radii of the two circles used to extract `[K³]ζ`.
const CAUCHY_RADII: [f64; 2] = [0.4, 0.6];
const CAUCHY_NODES: usize = 64;
/// Largest allowed disagreement between the two radii.
pub const EXTRACTION_TOLERANCE: f64 = 1e-7;

/// Scale `a` with `x = 1 - aε + O(ε²)`: `√6` or `√(8√3)`.
pub fn scale(family: Family) -> f64 {
    match family {
        Family::Quadrangulation => 6f64.sqrt(),
        Family::Triangulation => (8.0 * 3f64.sqrt()).sqrt(),
    }
}

fn p_of(family: Family, d: i64) -> f64 {
    let d = d as f64;
    match family {
        Family::Quadrangulation => (d - 1.0) * (d + 4.0),
        Family::Triangulation => d * (d + 3.0),
    }
}

fn q_of(d: i64) -> f64 {
    let d = d as f64;
    (d + 1.0) * (d + 2.0)
}

fn check_alpha(alpha: f64) -> Result<(), AsymptError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(AsymptError::Domain(format!(
            "scaling functions need 0 < α ≤ 1, got α = {alpha}"
        )))
    }
}

/// Root of `Λ² + aBΛ + C = 0` vanishing with `C`.
fn stable_root(a: f64, b: f64, c: f64) -> Result<f64, AsymptError> {
    let disc = a * a * b * b - 4.0 * c;
    if !(disc >= 0.0) {
        return Err(AsymptError::Branch(format!(
            "negative discriminant {disc:e} (aB = {}, C = {c:e})",
            a * b
        )));
    }
    Ok(-2.0 * c / (a * b + disc.sqrt()))
}

/// `Λ(α;d)`, the `O(ε)` term of `λ(α;d) = 1 - Λε + …`; zero at `α = 1`.
#[allow(non_snake_case)]
pub fn Lambda_single(family: Family, alpha: f64, d: i64) -> Result<f64, AsymptError> {
    check_alpha(alpha)?;
    if d < family.min_d() - 1 {
        return Err(AsymptError::Domain(format!(
            "{family}: Λ(α;d) needs d ≥ {}, got {d}",
            family.min_d() - 1
        )));
    }
    let a = scale(family);
    let (p, q) = (p_of(family, d), q_of(d));
    if p == 0.0 {
        return Ok(0.0);
    }
    let w = alpha.powi(family.alpha_power() as i32);
    let c = a * a * p * (1.0 - w) / (1.0 - w * p / q);
    stable_root(a, (2 * d + 3) as f64, c)
}

/// Large-`k` limit of `E_k[α^{ℒ(d)}]`.
pub fn wk_largek(family: Family, alpha: f64, d: i64) -> Result<f64, AsymptError> {
    if d < family.min_d() {
        return Err(AsymptError::Domain(format!(
            "{family}: need d ≥ {}, got {d}",
            family.min_d()
        )));
    }
    let a = scale(family);
    Ok((Lambda_single(family, alpha, d)? - Lambda_single(family, alpha, d - 1)? + a) / a)
}

/// `Λ(α₁,α₂;d₁,d₂)` for `d₁ ≤ d₂`, reducing to `Λ(α₁;d₁)` at `α₂ = 1`.
#[allow(non_snake_case)]
pub fn Lambda_double(family: Family, alpha1: f64, alpha2: f64, d1: i64, d2: i64) -> Result<f64, AsymptError> {
    check_alpha(alpha2)?;
    if d1 > d2 {
        return Err(AsymptError::Domain(format!("need d₁ ≤ d₂, got d₁ = {d1}, d₂ = {d2}")));
    }
    let lam1 = Lambda_single(family, alpha1, d1)?;
    let a = scale(family);
    let s = a * a;
    let b = (2 * d2 + 3) as f64;
    let (p, q) = (p_of(family, d2), q_of(d2));
    let x1 = lam1 * lam1 + a * b * lam1;
    let kappa = alpha2.powi(family.alpha_power() as i32) * (x1 + s * p) / (x1 + s * q);
    let c = s * (p - kappa * q) / (1.0 - kappa);
    stable_root(a, b, c)
}

/// Large-`k` limit of `E_k[α₁^{ℒ(d₁)} α₂^{ℒ(d₂)}]`.
pub fn ek_joint_largek(family: Family, alpha1: f64, alpha2: f64, d1: i64, d2: i64) -> Result<f64, AsymptError> {
    if d1 < family.min_d() {
        return Err(AsymptError::Domain(format!(
            "{family}: need d₁ ≥ {}, got {d1}",
            family.min_d()
        )));
    }
    let a = scale(family);
    Ok(
        (Lambda_double(family, alpha1, alpha2, d1, d2)? - Lambda_double(family, alpha1, alpha2, d1 - 1, d2 - 1)? + a)
            / a,
    )
}

/// `μ^{(q)}(τ;w)`.
fn mu_quad(tau: f64, w: Complex64) -> Complex64 {
    let beta = 1.5f64.sqrt();
    let (ch, sh) = ((w * beta).cosh(), (w * beta).sinh());
    let (ch2, sh2) = (ch * ch, sh * sh);
    let w2 = w * w * 9.0;
    let root = (w2 * ch2 / sh2 + 2.0 * tau).sqrt();
    (w * 6f64.sqrt()).exp() * (w2 * ch2 + (w2 - w * 6.0 * root + 2.0 * tau) * sh2) / (w2 + sh2 * (2.0 * tau))
}

/// `μ(τ;Ku)` for either family.
pub fn mu(family: Family, tau: f64, w: Complex64) -> Complex64 {
    match family {
        Family::Quadrangulation => mu_quad(tau, w),
        Family::Triangulation => mu_quad(1.5 * tau, w * (2.0 / 3f64.powf(0.25))),
    }
}

/// `ν - ξ`.
pub fn nu_minus_xi(family: Family, tau: f64, k: Complex64, u: f64) -> Complex64 {
    let a = scale(family);
    let m = mu(family, tau, k * u);
    let e = (k * (a * u)).exp();
    ((e + 1.0) * (e - m).powi(3) / ((e - 1.0).powi(3) * (e + m)) - m) * a
}

pub fn zeta_complex(family: Family, tau: f64, k: Complex64, u: f64) -> Complex64 {
    let a = scale(family);
    let m = mu(family, tau, k * u);
    let eu = (k * (a * u)).exp();
    let e = (k * a).exp();
    e * (eu + 1.0) * (eu - m).powi(3) * (e + m) * (24.0 * a) / ((eu - 1.0).powi(3) * (e - m).powi(3) * (eu + m))
}

fn check_zeta_args(tau: f64, u: f64) -> Result<(), AsymptError> {
    if tau >= 0.0 && u > 0.0 && u < 1.0 {
        Ok(())
    } else {
        Err(AsymptError::Domain(format!(
            "ζ needs τ ≥ 0 and 0 < u < 1, got τ = {tau}, u = {u}"
        )))
    }
}

/// `ζ(τ;K,u)`.
pub fn zeta_scaling(family: Family, tau: f64, k: f64, u: f64) -> Result<f64, AsymptError> {
    check_zeta_args(tau, u)?;
    if !(k > 0.0) {
        return Err(AsymptError::Domain(format!("ζ needs K > 0, got K = {k}")));
    }
    Ok(zeta_complex(family, tau, Complex64::new(k, 0.0), u).re)
}

fn k3_on_circle(family: Family, tau: f64, u: f64, rho: f64) -> f64 {
    let n = CAUCHY_NODES;
    let sum: Complex64 = (0..n)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
            let z = Complex64::from_polar(rho, th);
            zeta_complex(family, tau, z, u) * Complex64::from_polar(1.0, -3.0 * th)
        })
        .sum();
    sum.re / (n as f64 * rho.powi(3))
}

/// `[K³]ζ(τ;K,u)` by the trapezoidal rule on two circles around the pole.
pub fn zeta_k3(family: Family, tau: f64, u: f64) -> Result<f64, AsymptError> {
    check_zeta_args(tau, u)?;
    let [r1, r2] = CAUCHY_RADII;
    let (c1, c2) = (k3_on_circle(family, tau, u, r1), k3_on_circle(family, tau, u, r2));
    let resid = (c1 - c2).abs() / c1.abs().max(1e-300);
    if !(resid < EXTRACTION_TOLERANCE) {
        return Err(AsymptError::NoConvergence(format!(
            "[K³]ζ at τ = {tau}, u = {u}: radii {r1} and {r2} disagree by {resid:e}"
        )));
    }
    Ok(c1)
}

/// `lim E_k[e^{-τL(ku)}] = [K³]ζ(τ) / [K³]ζ(0)`.
pub fn ktau_from_zeta(family: Family, tau: f64, u: f64) -> Result<f64, AsymptError> {
    Ok(zeta_k3(family, tau, u)? / zeta_k3(family, 0.0, u)?)
}
