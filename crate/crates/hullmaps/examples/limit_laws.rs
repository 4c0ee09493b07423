//! The d → ∞ laws of the rescaled hull perimeter.

use hullmaps::asympt::*;

fn main() {
    let c = 1.0 / 3.0;
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>12}",
        "L", "P_inf", "P(u=1/4)", "P(u=1/2)", "P(u=3/4)"
    );
    for i in 1..=12 {
        let l = 0.25 * i as f64;
        let p = |u| pu_density(l, u, c).unwrap();
        println!(
            "{l:5.2} {:12.6} {:12.6} {:12.6} {:12.6}",
            pinf_density(l, c).unwrap(),
            p(0.25),
            p(0.5),
            p(0.75)
        );
    }

    println!("\nmean profile and near-target law");
    for u in [0.125, 0.25, 0.5, 0.75, 0.9] {
        println!(
            "u={u:5.3}: L_av {:.5}, u²L_av {:.5}, P̃(R=0.5) {:.5}",
            lav(u, c).unwrap(),
            profile(u, c).unwrap(),
            ptilde_density(0.5, u, c).unwrap()
        );
    }
    println!("P̃(R=0.5; u=1) {:.5}", ptilde1_density(0.5, c).unwrap());

    for v in [1.0, 1.5, 2.0, 4.0] {
        println!(
            "Cor({v}) = {:.5}, L_av(v|L₁=0.5) = {:.5}",
            cor(v).unwrap(),
            lav_cond(v, 0.5, c).unwrap()
        );
    }
}
