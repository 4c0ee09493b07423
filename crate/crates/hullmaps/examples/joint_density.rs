//! Joint law of the hull perimeters at distances d and vd.

use hullmaps::asympt::{joint_density, lav_cond, pinf_density};
use hullmaps::numlab::integrate;

fn main() {
    let (v, c) = (2.0, 1.0 / 3.0);
    let l2s = [0.1, 0.3, 0.5, 1.0, 2.0];
    print!("{:>6}", "L1\\L2");
    for l2 in l2s {
        print!(" {l2:>10}");
    }
    println!();
    for l1 in [0.1, 0.5, 1.0, 2.0] {
        print!("{l1:>6}");
        for l2 in l2s {
            print!(" {:10.6}", joint_density(l1, l2, v, c).unwrap());
        }
        println!();
    }

    for l1 in [0.2, 0.5, 1.5] {
        let marginal = integrate(|l2| joint_density(l1, l2, v, c).unwrap(), 0.0, f64::INFINITY, 1e-10).unwrap();
        let mean = integrate(
            |l2| l2 * joint_density(l1, l2, v, c).unwrap(),
            0.0,
            f64::INFINITY,
            1e-10,
        )
        .unwrap();
        println!(
            "L1={l1}: ∫dL2 {marginal:.10} vs P_inf {:.10}; E[L2|L1] {:.10} vs {:.10}",
            pinf_density(l1, c).unwrap(),
            mean / marginal,
            lav_cond(v, l1, c).unwrap()
        );
    }
}
