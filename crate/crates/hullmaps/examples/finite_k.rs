//! Exact mean hull perimeter at finite distance k to the target.

use hullmaps::asympt::{einf_L, ek_L, ek_l_exact};
use hullmaps::genfun::Family;

fn main() {
    for f in Family::ALL {
        let d = 6;
        println!("{f}, d = {d}: E_∞ = {:.6}", einf_L(f, d).unwrap());
        for k in [d + 1, 10, 20, 100, 1000, 1_000_000] {
            println!("  k = {k:>7}: E_k = {:.6}", ek_L(f, d, k).unwrap());
        }
        println!("  exact at k = 10: {}", ek_l_exact(f, d, 10).unwrap());
    }

    let (f, k) = (Family::Quadrangulation, 60);
    let profile: Vec<String> = (2..k)
        .step_by(6)
        .map(|d| format!("{d}:{:.1}", ek_L(f, d, k).unwrap()))
        .collect();
    println!("quad, k = {k}: {}", profile.join(" "));
}
