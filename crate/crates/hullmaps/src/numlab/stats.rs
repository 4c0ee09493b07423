use super::{integrate, NumError};
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::statistics::Statistics;

/// CDF of a density tabulated by quadrature on a uniform grid over `[a, b]`,
/// linearly interpolated; mass beyond `b` is lumped at `b`.
#[derive(Clone, Debug)]
pub struct TabulatedCdf {
    a: f64,
    h: f64,
    values: Vec<f64>,
}

impl TabulatedCdf {
    pub fn new<F: Fn(f64) -> f64>(density: F, a: f64, b: f64, cells: usize) -> Result<Self, NumError> {
        if !(b > a) || cells == 0 {
            return Err(NumError::Domain("tabulation needs b > a and at least one cell".into()));
        }
        let h = (b - a) / cells as f64;
        let mut values = Vec::with_capacity(cells + 1);
        let mut acc = 0.0;
        values.push(0.0);
        for i in 0..cells {
            let x0 = a + i as f64 * h;
            acc += integrate(&density, x0, x0 + h, 1e-12)?;
            values.push(acc);
        }
        Ok(TabulatedCdf { a, h, values })
    }

    pub fn total_mass(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let pos = (x - self.a) / self.h;
        if pos <= 0.0 {
            return 0.0;
        }
        let i = pos.floor() as usize;
        if i + 1 >= self.values.len() {
            return 1.0;
        }
        let w = pos - i as f64;
        self.values[i] * (1.0 - w) + self.values[i + 1] * w
    }

    /// Inverse of [`Self::cdf`].
    pub fn quantile(&self, p: f64) -> f64 {
        let i = self.values.partition_point(|&v| v < p);
        if i == 0 {
            return self.a;
        }
        if i >= self.values.len() {
            return self.a + self.h * (self.values.len() - 1) as f64;
        }
        let (lo, hi) = (self.values[i - 1], self.values[i]);
        let w = if hi > lo { (p - lo) / (hi - lo) } else { 0.0 };
        self.a + self.h * ((i - 1) as f64 + w)
    }
}

/// Asymptotic Kolmogorov tail `Q(λ) = 2 Σ (-1)^{j-1} e^{-2 j² λ²}`.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let t = (-2.0 * (j * j) as f64 * lambda * lambda).exp();
        sum += if j % 2 == 1 { t } else { -t };
        if t < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample KS statistic and p-value.
pub fn ks_test<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> (f64, f64) {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let d = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max);
    let sn = n.sqrt();
    (d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d))
}

/// Pearson chi-square of observed counts against class probabilities.
/// Returns `(statistic, p-value)`.
pub fn chi_square(counts: &[u64], probabilities: &[f64]) -> (f64, f64) {
    let n: u64 = counts.iter().sum();
    let stat = counts
        .iter()
        .zip(probabilities)
        .filter(|(_, &p)| p > 0.0)
        .map(|(&c, &p)| {
            let e = p * n as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum::<f64>();
    let dof = probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .count()
        .saturating_sub(1)
        .max(1);
    let p = 1.0 - ChiSquared::new(dof as f64).unwrap().cdf(stat);
    (stat, p)
}

#[derive(Clone, Debug, Serialize)]
pub struct StatReport {
    pub n: usize,
    pub mean: f64,
    pub mean_se: f64,
    pub variance: f64,
    pub variance_se: f64,
    /// Mean of the reference law.
    pub law_mean: f64,
    pub ks_statistic: f64,
    pub ks_p_value: f64,
    /// `(statistic, p-value)` of a chi-square test on deciles of the law.
    pub chi_square: (f64, f64),
}

impl StatReport {
    /// `|mean - law_mean| <= 3 SE + systematic * |law_mean|`.
    pub fn mean_compatible(&self, systematic: f64) -> bool {
        (self.mean - self.law_mean).abs() <= 3.0 * self.mean_se + systematic * self.law_mean.abs()
    }
}

/// Sample mean, its standard error, sample variance and its standard error.
pub fn moments(xs: &[f64]) -> (f64, f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.mean();
    let var = xs.variance();
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    let var_se = ((m4 - var * var * (n - 3.0) / (n - 1.0)) / n).max(0.0).sqrt();
    (mean, (var / n).sqrt(), var, var_se)
}

/// Compares a sample with a density on `[0, ∞)`: moments, KS against the
/// quadrature CDF, and a decile chi-square.
pub fn compare_to_law<F: Fn(f64) -> f64 + Sync>(sample: &[f64], density: F) -> Result<StatReport, NumError> {
    if sample.len() < 2 {
        return Err(NumError::Domain("comparison needs at least two sample points".into()));
    }
    let law_mean = integrate(|x| x * density(x), 0.0, f64::INFINITY, 1e-10)?;
    let top = sample.iter().copied().fold(0.0, f64::max).max(law_mean * 20.0);
    let table = TabulatedCdf::new(&density, 0.0, top * 1.001, 20_000)?;
    let (mean, mean_se, variance, variance_se) = moments(sample);
    let (ks_statistic, ks_p_value) = ks_test(sample, |x| table.cdf(x));
    let edges: Vec<f64> = (1..10).map(|i| table.quantile(i as f64 / 10.0)).collect();
    let mut counts = [0u64; 10];
    for &x in sample {
        counts[edges.partition_point(|&e| e <= x)] += 1;
    }
    let chi = chi_square(&counts, &[0.1; 10]);
    Ok(StatReport {
        n: sample.len(),
        mean,
        mean_se,
        variance,
        variance_se,
        law_mean,
        ks_statistic,
        ks_p_value,
        chi_square: chi,
    })
}
