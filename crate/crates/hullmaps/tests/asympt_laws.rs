use hullmaps::asympt::*;
use hullmaps::genfun::Family;
use hullmaps::numlab::{integrate, linspace, talbot_ilt};
use num::complex::Complex64;
use std::f64::consts::PI;

const CS: [f64; 2] = [1.0 / 3.0, 0.5];
const PLOTTED_U: [f64; 5] = [0.125, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0];

fn mass(f: impl Fn(f64) -> f64) -> f64 {
    integrate(f, 0.0, f64::INFINITY, 1e-12).unwrap()
}

/// For an `R^{-3/2}` tail: `r = r0/s²` on `[r0, ∞)` makes the integrand smooth.
fn mass_heavy(f: impl Fn(f64) -> f64, r0: f64) -> f64 {
    let head = integrate(&f, 0.0, r0, 1e-12).unwrap();
    let tail = integrate(
        |s: f64| {
            if s == 0.0 {
                0.0
            } else {
                f(r0 / (s * s)) * 2.0 * r0 / s.powi(3)
            }
        },
        0.0,
        1.0,
        1e-12,
    );
    head + tail.unwrap()
}

fn mass_loose(f: impl Fn(f64) -> f64) -> f64 {
    integrate(f, 0.0, f64::INFINITY, 1e-10).unwrap()
}

#[test]
fn densities_are_normalised() {
    for c in CS {
        assert!((mass(|l| pinf_density(l, c).unwrap()) - 1.0).abs() < 1e-8);
        for u in PLOTTED_U {
            assert!(
                (mass(|l| pu_density(l, u, c).unwrap()) - 1.0).abs() < 1e-8,
                "c={c} u={u}"
            );
            assert!(
                (mass(|r| ptilde_density(r, u, c).unwrap()) - 1.0).abs() < 1e-8,
                "c={c} u={u}"
            );
        }
        let m = mass_heavy(|r| ptilde1_density(r, c).unwrap(), 10.0);
        assert!((m - 1.0).abs() < 1e-8, "c={c}: {m}");
    }
}

#[test]
fn pinf_duality() {
    for c in CS {
        for l in linspace(0.05, 5.0, 40) {
            let inv = talbot_ilt(|s| pinf_laplace_complex(s, c), l).unwrap();
            let want = pinf_density(l, c).unwrap();
            assert!(
                (inv - want).abs() < 1e-7 * want.max(1e-3),
                "c={c} L={l}: {inv} vs {want}"
            );
        }
    }
}

#[test]
fn ktau_duality() {
    for c in CS {
        for u in [0.25, 0.5, 0.75] {
            for l in linspace(0.05, 5.0, 40) {
                let inv = talbot_ilt(|s| ktau_laplace_complex(s, u, c), l).unwrap();
                let want = pu_density(l, u, c).unwrap();
                assert!(
                    (inv - want).abs() < 1e-7 * want.max(1e-3),
                    "c={c} u={u} L={l}: {inv} vs {want}"
                );
            }
        }
    }
}

#[test]
fn joint_nested_inversion() {
    // inner L₂-inverse in closed form at fixed τ₁, outer by Talbot in τ₁
    let (v, c) = (2.0, 1.0 / 3.0);
    let inner = |tau1: Complex64, l2: f64| {
        let w = (tau1 * c + 1.0).sqrt();
        let g = (w * (v - 1.0)) + 1.0;
        (-(w * w) * (l2 * v * v) / (g * g * c)).exp() / g.powi(3) * (2.0 * (l2 / PI).sqrt() * v.powi(3) / c.powf(1.5))
    };
    // the closed-form inner step is itself an inverse of joint_laplace
    let tau1 = 0.7;
    let l2 = 0.9;
    let talbot_inner = talbot_ilt(|s| joint_laplace_complex(Complex64::new(tau1, 0.0), s, v, c), l2).unwrap();
    assert!((talbot_inner - inner(Complex64::new(tau1, 0.0), l2).re).abs() < 1e-9);

    for (l1, l2) in [(0.2, 0.3), (0.5, 0.5), (1.0, 0.4), (0.6, 1.5), (2.0, 2.0)] {
        let nested = talbot_ilt(|s| inner(s, l2), l1).unwrap();
        let series = joint_density(l1, l2, v, c).unwrap();
        assert!(
            (nested - series).abs() < 1e-7 * series.max(1e-3),
            "({l1},{l2}): {nested} vs {series}"
        );
    }
}

/// Central differences of a Laplace transform at τ = 0 with step `h`.
fn laplace_moments(f: impl Fn(f64) -> f64, h: f64) -> (f64, f64) {
    // one-sided: the transforms are only defined for τ > -1/c, so stay close
    let m1 = -(f(h) - f(-h)) / (2.0 * h);
    let m2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
    (m1, m2)
}

#[test]
fn moments_match_laplace_derivatives() {
    let h = 1e-4;
    for c in CS {
        let m1 = mass(|l| l * pinf_density(l, c).unwrap());
        let m2 = mass(|l| l * l * pinf_density(l, c).unwrap());
        assert!((m1 - 1.5 * c).abs() < 1e-9);
        let (d1, d2) = laplace_moments(|t| (1.0 + c * t).powf(-1.5), h);
        assert!(((m1 - d1) / m1).abs() < 1e-5 && ((m2 - d2) / m2).abs() < 1e-5);

        for u in PLOTTED_U {
            let m1 = mass(|l| l * pu_density(l, u, c).unwrap());
            let m2 = mass(|l| l * l * pu_density(l, u, c).unwrap());
            assert!((m1 - lav(u, c).unwrap()).abs() < 1e-7, "c={c} u={u}: {m1}");
            let f = |t: f64| ktau_laplace_complex(Complex64::new(t, 0.0), u, c).re;
            let (d1, d2) = laplace_moments(f, h);
            assert!(((m1 - d1) / m1).abs() < 1e-5, "c={c} u={u}: {m1} vs {d1}");
            assert!(((m2 - d2) / m2).abs() < 1e-5, "c={c} u={u}: {m2} vs {d2}");
        }
    }
}

#[test]
fn correlation_from_mixed_derivative() {
    let h = 1e-3;
    for c in CS {
        for v in [1.5, 2.0, 4.0, 10.0] {
            let f = |a: f64, b: f64| joint_laplace_complex(Complex64::new(a, 0.0), Complex64::new(b, 0.0), v, c).re;
            // 4-point mixed stencil, O(h²)
            let mixed = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
            let mean = 1.5 * c;
            let got = mixed / (mean * mean) - 1.0;
            assert!((got - cor(v).unwrap()).abs() < 1e-5, "c={c} v={v}: {got}");
            assert!((mixed - 0.75 * c * c * (3.0 + 2.0 / v)).abs() < 1e-6);
        }
    }
}

#[test]
fn joint_limits() {
    let c = 1.0 / 3.0;
    assert!((joint_laplace(1.3, 0.0, 3.0, c).unwrap() - pinf_laplace(1.3, c).unwrap()).abs() < 1e-15);
    let far = joint_laplace(1.0, 2.0, 1e4, c).unwrap();
    let prod = pinf_laplace(1.0, c).unwrap() * pinf_laplace(2.0, c).unwrap();
    assert!((far - prod).abs() < 1e-6 * 10.0, "{far} vs {prod}");
    assert!(joint_laplace(1.0, 1.0, 0.9, c).is_err());
}

#[test]
fn joint_marginal_is_pinf() {
    for c in CS {
        for v in [1.5, 2.0, 4.0] {
            for l1 in [0.1, 0.5, 1.0, 2.0] {
                let m = mass_loose(|l2| joint_density(l1, l2, v, c).unwrap());
                let want = pinf_density(l1, c).unwrap();
                assert!(
                    (m - want).abs() < 1e-6 * want.max(1e-2),
                    "c={c} v={v} L1={l1}: {m} vs {want}"
                );
            }
        }
    }
}

#[test]
fn conditional_mean_and_truncation() {
    let (l1, v, c) = (0.5, 2.0, 1.0 / 3.0);
    let marginal = pinf_density(l1, c).unwrap();
    let full = mass_loose(|l2| l2 * joint_density(l1, l2, v, c).unwrap());
    let trunc = mass_loose(|l2| l2 * joint_density_terms(l1, l2, v, c, Some(2)).unwrap());
    assert!((full / marginal - lav_cond(v, l1, c).unwrap()).abs() < 1e-6);
    assert!((trunc / marginal - lav_cond(v, l1, c).unwrap()).abs() < 1e-6);
    assert!((full - trunc).abs() < 1e-10);
    for (l1, v, c) in [(0.2, 1.5, 0.5), (1.5, 4.0, 1.0 / 3.0)] {
        let full = mass_loose(|l2| l2 * joint_density(l1, l2, v, c).unwrap());
        let trunc = mass_loose(|l2| l2 * joint_density_terms(l1, l2, v, c, Some(2)).unwrap());
        assert!((full - trunc).abs() < 1e-10, "{full} vs {trunc}");
    }
}

#[test]
fn family_universality() {
    // the u-, v- and L-laws see the family only through c
    for f in Family::ALL {
        let c = f.c_f64();
        assert_eq!(ktau_from_zeta(f, 1.0, 0.4).is_ok(), true);
        assert!((ktau_from_zeta(f, 1.0, 0.4).unwrap() - ktau_laplace(1.0, 0.4, c).unwrap()).abs() < 1e-6);
        let w = wk_largek(f, (-1.0f64 / 400.0).exp(), 20).unwrap();
        // E_∞[e^{-τL(d)}] at d = 20 is already close to the d → ∞ law
        assert!((w - pinf_laplace(1.0, c).unwrap()).abs() < 0.05);
    }
}

#[test]
fn profile_and_means() {
    for c in CS {
        assert!((lav(0.0, c).unwrap() - 1.5 * c).abs() < 1e-15);
        assert_eq!(lav(1.0, c).unwrap(), 0.0);
        for u in PLOTTED_U {
            assert!((profile(u, c).unwrap() - u * u * lav(u, c).unwrap()).abs() < 1e-15);
        }
        assert_eq!(lav_cond(1.0, 0.8, c).unwrap(), 0.8);
    }
    assert_eq!(cor(1.0).unwrap(), 2.0 / 3.0);
}

#[test]
fn finite_k_means() {
    for f in Family::ALL {
        for d in [f.min_d(), 3, 12] {
            let e = einf_L(f, d).unwrap();
            let ek = ek_L(f, d, 10_000_000).unwrap();
            assert!(((ek - e) / e).abs() < 1e-5, "{f} d={d}");
        }
    }
    // E_∞(ℒ(d))/d² → 3c/2
    for f in Family::ALL {
        let d = 100_000;
        assert!((einf_L(f, d).unwrap() / (d * d) as f64 - 1.5 * f.c_f64()).abs() < 1e-4);
    }
}
