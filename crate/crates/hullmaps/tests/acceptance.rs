//! One line per acceptance criterion. The Monte Carlo criterion is
//! statistical and reported without affecting the exit status.
//! `HULLMAPS_MC_SAMPLES` overrides its sample count.

use hullmaps::cli::checks::{run_checks, CheckOptions, Level};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut opts = CheckOptions {
        level: Level::All,
        ..CheckOptions::default()
    };
    if let Some(n) = std::env::var("HULLMAPS_MC_SAMPLES").ok().and_then(|s| s.parse().ok()) {
        opts.mc_samples = n;
    }
    println!("acceptance: {}", serde_json::to_string(&opts).unwrap());
    let outcomes = run_checks(&opts, |o| println!("{o}"));
    let hard: Vec<_> = outcomes.iter().filter(|o| o.deterministic && !o.passed()).collect();
    let soft: Vec<_> = outcomes.iter().filter(|o| !o.deterministic && !o.passed()).collect();
    println!(
        "acceptance: {}/{} pass; {} deterministic failure(s), {} statistical failure(s)",
        outcomes.len() - hard.len() - soft.len(),
        outcomes.len(),
        hard.len(),
        soft.len()
    );
    if hard.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
