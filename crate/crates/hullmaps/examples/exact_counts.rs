//! Exact perimeter-weighted counts of k-pointed-rooted maps.

use hullmaps::genfun::{appendix_b_check, z_single, Family};

fn main() {
    let z = z_single(Family::Quadrangulation, 2, 3, 6).expect("valid (d, k)");
    println!("quadrangulations, d = 2, k = 3");
    for n in 0..=6 {
        let terms = z.terms(n);
        if terms.is_empty() {
            continue;
        }
        let row: Vec<String> = terms.iter().map(|(l, c)| format!("{c}·α^{l}")).collect();
        println!("  g^{n}: {}", row.join(" + "));
    }

    let tri = z_single(Family::Triangulation, 1, 3, 8).expect("valid (d, k)");
    println!("triangulations, d = 1, k = 3, g^8: {:?}", tri.terms(8));

    let report = appendix_b_check().expect("tables computable");
    println!(
        "reference tables: {}/{} match",
        report.tables_matching, report.tables_checked
    );
}
