//! Hull perimeters of uniform random quadrangulations.
//!
//! `cargo run --release --example monte_carlo -- [faces] [samples]`
//! Conditioned on d(v₀, v₁) ≥ 4·max d.

use hullmaps::asympt::{einf_L, ek_L, winf};
use hullmaps::genfun::Family;
use hullmaps::planarmap::{measure_hulls, MeasureConfig, DEFAULT_SEED};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(50_000);
    let samples = args.next().unwrap_or(200);
    let f = Family::Quadrangulation;

    let mut cfg = MeasureConfig::new(n, vec![3, 4, 6], samples, DEFAULT_SEED);
    cfg.conditioning_factor = 4;
    let batch = measure_hulls(&cfg).expect("sampling");
    println!(
        "{} maps with {n} faces ({} drawn), {}",
        batch.records.len(),
        batch.attempts,
        cfg.conditioning()
    );
    for d in [3usize, 4, 6] {
        let (m, se) = batch.mean_perimeter(d);
        let (a, ase) = batch.mean_alpha_power(d, 0.9);
        let finite_k: f64 = batch
            .records
            .iter()
            .map(|r| ek_L(f, d as i64, r.k as i64).unwrap())
            .sum::<f64>()
            / batch.records.len() as f64;
        println!(
            "d={d}: mean ℒ {m:6.2} ± {se:4.2} (E_k {finite_k:6.2}, E_∞ {:6.2}); E[0.9^ℒ] {a:.4} ± {ase:.4} (W_∞ {:.4})",
            einf_L(f, d as i64).unwrap(),
            winf(f, 0.9, d as i64).unwrap()
        );
    }
}
