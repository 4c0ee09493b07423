use super::{hull_perimeter, quadrangulation_from_tree, HalfEdgeMap, LabeledTree, PlanarError, SliceView};
use crate::genfun::Family;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::statistics::Statistics;

pub const DEFAULT_SEED: u64 = 0x4855_4c4c;

/// Attempts allowed per sample before the conditioning is declared hopeless.
const MAX_ATTEMPTS: usize = 100;

/// Uniform plane tree with `n` edges and i.i.d. uniform label increments in
/// `{-1, 0, 1}`; root label 0.
pub fn sample_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LabeledTree {
    // cycle lemma: the rotation of a shuffled word with n ups and n+1 downs
    // starting after its first minimum is a Dyck word followed by a down
    let mut word: Vec<bool> = std::iter::repeat(true)
        .take(n)
        .chain(std::iter::repeat(false).take(n + 1))
        .collect();
    word.shuffle(rng);
    let (mut h, mut best, mut at) = (0i64, 0i64, 0usize);
    for (i, &up) in word.iter().enumerate() {
        h += if up { 1 } else { -1 };
        if h < best {
            best = h;
            at = i + 1;
        }
    }
    let len = word.len();
    word.rotate_left(at % len);
    word.pop();
    let mut labels = vec![0i64; n + 1];
    let mut stack = vec![0usize];
    let mut next_id = 1;
    for &up in &word {
        if up {
            labels[next_id] = labels[*stack.last().unwrap()] + rng.gen_range(-1..=1);
            stack.push(next_id);
            next_id += 1;
        } else {
            stack.pop();
        }
    }
    LabeledTree::new(word, labels).expect("sampled tree is valid")
}

/// Uniform pointed quadrangulation with `n` faces, rooted at a uniform
/// distance-decreasing half-edge. Returns the map and its origin vertex.
pub fn sample_quadrangulation(n: usize, seed: u64) -> (HalfEdgeMap, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = quadrangulation_from_tree(&sample_tree(n, &mut rng));
    let v0 = m.v0();
    (m, v0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureConfig {
    pub family: Family,
    /// Faces per map.
    pub n: usize,
    pub d_list: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    /// `v1` is drawn among vertices at distance at least this factor times
    /// the largest requested `d`.
    pub conditioning_factor: usize,
}

impl MeasureConfig {
    pub fn new(n: usize, d_list: Vec<usize>, samples: usize, seed: u64) -> Self {
        MeasureConfig {
            family: Family::Quadrangulation,
            n,
            d_list,
            samples,
            seed,
            conditioning_factor: 5,
        }
    }

    pub fn min_distance(&self) -> usize {
        self.conditioning_factor * self.d_list.iter().copied().max().unwrap_or(0)
    }

    pub fn conditioning(&self) -> String {
        format!(
            "uniform v1 with d(v0,v1) >= {}; leftmost descending root at v1",
            self.min_distance()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullPoint {
    pub d: usize,
    #[serde(rename = "L")]
    pub perimeter: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub k: usize,
    pub hulls: Vec<HullPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub config: MeasureConfig,
    pub records: Vec<SampleRecord>,
    /// Maps drawn in total, including rejected ones.
    pub attempts: usize,
}

impl SampleBatch {
    pub fn perimeters(&self, d: usize) -> Vec<f64> {
        self.records
            .iter()
            .filter_map(|r| r.hulls.iter().find(|p| p.d == d))
            .map(|p| p.perimeter as f64)
            .collect()
    }

    /// Sample mean of `f(ℒ(d))` and its standard error.
    pub fn mean_of(&self, d: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
        let xs: Vec<f64> = self.perimeters(d).into_iter().map(f).collect();
        let n = xs.len() as f64;
        let mean = xs.iter().mean();
        let se = if xs.len() > 1 {
            xs.iter().std_dev() / n.sqrt()
        } else {
            f64::NAN
        };
        (mean, se)
    }

    pub fn mean_perimeter(&self, d: usize) -> (f64, f64) {
        self.mean_of(d, |l| l)
    }

    /// Empirical `E[α^ℒ(d)]`.
    pub fn mean_alpha_power(&self, d: usize, alpha: f64) -> (f64, f64) {
        self.mean_of(d, |l| alpha.powf(l))
    }

    pub fn success_rate(&self) -> f64 {
        self.records.len() as f64 / self.attempts.max(1) as f64
    }

    /// Header line with the configuration, then one line per sample.
    pub fn to_jsonl(&self) -> String {
        let header = serde_json::json!({
            "config": self.config,
            "seed": self.config.seed,
            "conditioning": self.config.conditioning(),
            "attempts": self.attempts,
        });
        let mut out = header.to_string();
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }
}

/// RNG of sample `i`: ChaCha8 seeded with `seed`, stream `i`.
fn sample_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

fn leftmost_descending(m: &HalfEdgeMap, v: usize) -> usize {
    let want = m.label(v) - 1;
    m.darts_around(v)
        .find(|&h| m.label(m.target(h)) == want)
        .expect("every vertex but v0 has a lower neighbour")
}

fn one_sample(cfg: &MeasureConfig, i: usize) -> Result<(SampleRecord, usize), PlanarError> {
    let mut rng = sample_rng(cfg.seed, i);
    let threshold = cfg.min_distance() as u32;
    for attempt in 1..=MAX_ATTEMPTS {
        let m = quadrangulation_from_tree(&sample_tree(cfg.n, &mut rng));
        let far: Vec<usize> = (0..m.n_vertices())
            .filter(|&v| m.label(v) >= threshold.max(1))
            .collect();
        let Some(&v1) = far.choose(&mut rng) else {
            continue;
        };
        let s = SliceView::new(&m, cfg.family, leftmost_descending(&m, v1))?;
        let hulls = cfg
            .d_list
            .iter()
            .map(|&d| {
                hull_perimeter(&s, d).map(|r| HullPoint {
                    d,
                    perimeter: r.perimeter,
                })
            })
            .collect::<Result<_, _>>()?;
        return Ok((SampleRecord { k: s.k(), hulls }, attempt));
    }
    Err(PlanarError::Conditioning { rate: 0.0 })
}

/// Draws `samples` maps, conditions on a far vertex `v1`, and records `ℒ(d)`
/// for every requested `d`. Sample `i` depends only on `(seed, i)`.
pub fn measure_hulls(cfg: &MeasureConfig) -> Result<SampleBatch, PlanarError> {
    if cfg.family != Family::Quadrangulation {
        return Err(PlanarError::Unsupported(
            "uniform sampling is only implemented for quadrangulations".into(),
        ));
    }
    if cfg.n == 0 || cfg.d_list.is_empty() || cfg.d_list.contains(&0) {
        return Err(PlanarError::OutOfRange(
            "need N >= 1 and a nonempty list of distances d >= 1".into(),
        ));
    }
    let out: Vec<(SampleRecord, usize)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| one_sample(cfg, i))
        .collect::<Result<_, _>>()?;
    let attempts = out.iter().map(|o| o.1).sum();
    let batch = SampleBatch {
        config: cfg.clone(),
        records: out.into_iter().map(|o| o.0).collect(),
        attempts,
    };
    if cfg.samples > 0 && batch.success_rate() < 0.01 {
        return Err(PlanarError::Conditioning {
            rate: batch.success_rate(),
        });
    }
    Ok(batch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarmap::validate_map;

    #[test]
    fn trees_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 10, 100] {
            let t = sample_tree(n, &mut rng);
            assert_eq!(t.n_edges(), n);
        }
    }

    #[test]
    fn sampled_map_validates() {
        let (m, v0) = sample_quadrangulation(1000, 3);
        assert_eq!(v0, m.v0());
        assert_eq!(m.n_vertices(), 1002);
        assert_eq!(validate_map(&m, Family::Quadrangulation), Ok(()));
    }

    #[test]
    fn deterministic() {
        let (a, _) = sample_quadrangulation(200, 11);
        let (b, _) = sample_quadrangulation(200, 11);
        assert_eq!(
            crate::planarmap::canonical_code(&a),
            crate::planarmap::canonical_code(&b)
        );
    }

    #[test]
    fn d_one_is_zero() {
        let cfg = MeasureConfig::new(500, vec![1], 20, 5);
        let b = measure_hulls(&cfg).unwrap();
        assert_eq!(b.records.len(), 20);
        assert!(b.records.iter().all(|r| r.hulls[0].perimeter == 0));
        assert_eq!(b.to_jsonl().lines().count(), 21);
    }

    #[test]
    fn joint_records() {
        let cfg = MeasureConfig::new(2000, vec![2, 3], 10, 9);
        let b = measure_hulls(&cfg).unwrap();
        for r in &b.records {
            assert_eq!(r.hulls.len(), 2);
            assert!(r.hulls.iter().all(|p| p.d < r.k && p.perimeter % 2 == 0));
        }
        assert_eq!(b, measure_hulls(&cfg).unwrap());
    }
}
