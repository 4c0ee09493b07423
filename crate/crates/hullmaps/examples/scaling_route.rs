//! The same u-law from the scaling function ζ and from its closed form.

use hullmaps::asympt::{ktau_from_zeta, ktau_laplace, pinf_laplace, wk_largek, zeta_k3, Lambda_single};
use hullmaps::genfun::Family;

fn main() {
    for f in Family::ALL {
        let c = f.c_f64();
        println!("{f} (c = {c:.4}), [K³]ζ(0) = {:.12}", zeta_k3(f, 0.0, 0.5).unwrap());
        for (tau, u) in [(0.5, 0.25), (1.0, 0.5), (2.0, 0.75)] {
            let a = ktau_from_zeta(f, tau, u).unwrap();
            let b = ktau_laplace(tau, u, c).unwrap();
            println!(
                "  τ={tau} u={u}: via ζ {a:.10}, closed form {b:.10}, diff {:.1e}",
                (a - b).abs()
            );
        }
        for d in [5i64, 20, 80] {
            let alpha = (-1.0 / (d * d) as f64).exp();
            println!(
                "  d={d}: Λ = {:.6}, E[α^ℒ] = {:.6} → {:.6}",
                Lambda_single(f, alpha, d).unwrap(),
                wk_largek(f, alpha, d).unwrap(),
                pinf_laplace(1.0, c).unwrap()
            );
        }
    }
}
