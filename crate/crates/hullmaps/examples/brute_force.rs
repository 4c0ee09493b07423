//! Exhaustive enumeration of small maps against the exact series.

use hullmaps::genfun::{z_single, Family};
use hullmaps::planarmap::{enumeration_tables, hull_histograms};

fn main() {
    let hist = hull_histograms(Family::Quadrangulation, 4).unwrap();
    for ((d, k), h) in &hist {
        println!("quad N=4 d={d} k={k}: {h:?}");
    }

    for (family, n) in [(Family::Quadrangulation, 5), (Family::Triangulation, 6)] {
        let tables = enumeration_tables(family, n).unwrap();
        let agree = tables
            .iter()
            .filter(|t| z_single(family, t.d, t.k, n as i64).unwrap().coefficients == t.coefficients)
            .count();
        println!("{family}, up to {n} faces: {agree}/{} (d,k) tables agree", tables.len());
    }
}
