//! Numerical Laplace inversion against exact pairs and the closed-form laws.

use hullmaps::asympt::{ktau_laplace_complex, pinf_density, pinf_laplace_complex, pu_density};
use hullmaps::numlab::{
    appendix_a_pairs, linspace, pair_max_relative_error, talbot_ilt, talbot_ilt_with, TALBOT_NODES,
};

fn main() {
    let grid = linspace(0.05, 10.0, 200);
    println!("Talbot with {TALBOT_NODES} nodes");
    for p in appendix_a_pairs() {
        println!(
            "  {:<18} max rel. error {:.2e}",
            p.name(),
            pair_max_relative_error(&p, &grid)
        );
    }

    let c = 1.0 / 3.0;
    for l in [0.1, 1.0, 3.0] {
        let inv = talbot_ilt(|s| pinf_laplace_complex(s, c), l).unwrap();
        let ku = talbot_ilt(|s| ktau_laplace_complex(s, 0.5, c), l).unwrap();
        println!(
            "L={l}: P_inf {inv:.12} vs {:.12}; P(u=1/2) {ku:.12} vs {:.12}",
            pinf_density(l, c).unwrap(),
            pu_density(l, 0.5, c).unwrap()
        );
    }

    // more nodes is not better in f64
    for m in [24, 32, 40, 48, 64] {
        let err = (talbot_ilt_with(|s| ktau_laplace_complex(s, 0.75, c), 3.0, m).unwrap()
            - pu_density(3.0, 0.75, c).unwrap())
        .abs();
        println!("M={m:2}: |error| at u=3/4, L=3: {err:.2e}");
    }
}
