//! Numerical oracles: Talbot inversion, adaptive quadrature, sample statistics.

mod pairs;
mod quad;
mod stats;
mod talbot;

pub use pairs::{appendix_a_pairs, TransformPair};
pub use quad::integrate;
pub use stats::{chi_square, compare_to_law, kolmogorov_q, ks_test, moments, StatReport, TabulatedCdf};
pub use talbot::{talbot_ilt, talbot_ilt_with, TALBOT_NODES};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("{0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

/// Largest relative error of the Talbot inversion of `pair` over `grid`.
/// Near a zero of the inverse the error is taken relative to `1e-3` of the
/// largest `|f|` on the grid.
pub fn pair_max_relative_error(pair: &TransformPair, grid: &[f64]) -> f64 {
    let exact: Vec<f64> = grid.iter().map(|&l| pair.inverse(l)).collect();
    let floor = 1e-3 * exact.iter().fold(0.0, |m: f64, y| m.max(y.abs()));
    grid.iter()
        .zip(&exact)
        .map(|(&l, &y)| {
            let got = talbot_ilt(|s| pair.forward(s), l).unwrap_or(f64::NAN);
            (got - y).abs() / y.abs().max(floor)
        })
        .fold(0.0, f64::max)
}

/// `n` equally spaced points on `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}
