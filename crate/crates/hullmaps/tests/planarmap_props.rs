use hullmaps::genfun::{appendix_b_tables, z_single, Family};
use hullmaps::planarmap::*;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

fn all_maps(family: Family, max_n: usize) -> Vec<HalfEdgeMap> {
    let step = if family == Family::Triangulation { 2 } else { 1 };
    (step..=max_n)
        .step_by(step)
        .flat_map(|n| enumerate_pointed_rooted(family, n).unwrap())
        .map(|(m, _)| m)
        .collect()
}

#[test]
fn brute_force_matches_exact_tables() {
    for (family, max_n) in [(Family::Quadrangulation, 5), (Family::Triangulation, 6)] {
        let tables = enumeration_tables(family, max_n).unwrap();
        for t in &tables {
            let z = z_single(family, t.d, t.k, max_n as i64).unwrap();
            assert_eq!(t.coefficients, z.coefficients, "{family} d={} k={}", t.d, t.k);
        }
        for e in appendix_b_tables().iter().filter(|e| e.family == family) {
            let t = tables
                .iter()
                .find(|t| (t.d, t.k) == (e.d, e.k))
                .expect("pair reached by enumeration");
            assert_eq!(&t.coefficients[..=max_n], &e.coefficients[..=max_n]);
        }
    }
}

#[test]
fn small_counts() {
    let quad = |n, k| {
        enumerate_pointed_rooted(Family::Quadrangulation, n)
            .unwrap()
            .iter()
            .filter(|m| m.1 == k)
            .count()
    };
    assert_eq!(quad(2, 3), 1);
    assert_eq!(quad(3, 4), 1);
    let tri = enumerate_pointed_rooted(Family::Triangulation, 2).unwrap();
    assert_eq!(tri.iter().filter(|m| m.1 == 2).count(), 1);

    let h = hull_histograms(Family::Quadrangulation, 4).unwrap();
    assert_eq!(h[&(2, 3)], BTreeMap::from([(2, 178), (4, 1)]));
}

#[test]
fn conventions_at_smallest_distance() {
    for family in Family::ALL {
        for m in all_maps(family, 4) {
            let s = cut_to_slice(&m, family).unwrap();
            let d = (family.min_d() - 1) as usize;
            assert_eq!(hull_perimeter(&s, d).unwrap().perimeter, 0);
        }
    }
}

#[test]
fn cut_and_reglue_is_identity() {
    for family in Family::ALL {
        for m in all_maps(family, 5) {
            let s = cut_to_slice(&m, family).unwrap();
            let p = physical_cut(&s);
            assert_eq!(p.map.euler_characteristic(), 2);
            assert_eq!(canonical_code(&reglue(&p)), canonical_code(&m));
        }
    }
}

/// Number of shortest paths from `from` to `to`, counting parallel edges
/// separately.
fn geodesic_count(m: &HalfEdgeMap, from: usize, to: usize) -> (u32, u64) {
    let dist = bfs_distances(m, to).unwrap();
    let mut order: Vec<usize> = (0..m.n_vertices()).collect();
    order.sort_by_key(|&v| dist[v]);
    let mut count = vec![0u64; m.n_vertices()];
    count[to] = 1;
    for &v in &order[1..] {
        count[v] = m
            .darts_around(v)
            .filter(|&h| dist[m.target(h)] + 1 == dist[v])
            .map(|h| count[m.target(h)])
            .sum();
    }
    (dist[from], count[from])
}

#[test]
fn slice_boundaries_are_geodesics() {
    for family in Family::ALL {
        for m in all_maps(family, 4) {
            let s = cut_to_slice(&m, family).unwrap();
            let k = s.k() as u32;
            let p = physical_cut(&s);
            let v1 = p.map.origin(m.root());
            assert_eq!(geodesic_count(&p.map, v1, p.apex).0, k);
            assert_eq!(geodesic_count(&p.map, p.right_start, p.apex), (k - 1, 1));
        }
    }
}

fn check_walk(s: &SliceView<'_>, d: usize) {
    let m = s.map();
    let r = hull_perimeter_traced(s, d).unwrap();
    let trace = r.trace.unwrap();
    match s.family() {
        Family::Quadrangulation => {
            assert_eq!(r.perimeter % 2, 0);
            for (i, &h) in trace.iter().enumerate() {
                let want = if i % 2 == 0 { d } else { d - 1 };
                assert_eq!(m.label(m.target(h)) as usize, want);
            }
            assert_eq!(m.origin(trace[0]), s.seam_vertex(d - 1));
            assert_eq!(m.target(*trace.last().unwrap()), s.seam_vertex(d - 1));
        }
        Family::Triangulation => {
            assert!(trace.iter().all(|&h| m.label(m.target(h)) as usize == d));
            assert_eq!(m.origin(trace[0]), s.seam_vertex(d));
            assert_eq!(m.target(*trace.last().unwrap()), s.seam_vertex(d));
        }
    }
    // removing the walk separates v1 from v0
    let cut: HashSet<usize> = trace.iter().map(|&h| m.origin(h)).collect();
    let v1 = m.origin(s.root());
    let mut seen = vec![false; m.n_vertices()];
    seen[v1] = true;
    let mut queue = VecDeque::from([v1]);
    while let Some(v) = queue.pop_front() {
        for h in m.darts_around(v) {
            let w = m.target(h);
            if !seen[w] && !cut.contains(&w) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    assert!(!seen[m.v0()], "walk at d = {d} does not separate");
}

#[test]
fn walk_shape_and_separation() {
    for family in Family::ALL {
        for m in all_maps(family, 5) {
            let s = cut_to_slice(&m, family).unwrap();
            for d in family.min_d() as usize..s.k() {
                check_walk(&s, d);
            }
        }
    }
}

fn chi_square_uniform(n: usize, draws: u64, seed: u64) -> f64 {
    let classes: HashMap<Vec<u32>, usize> = enumerate_pointed_rooted(Family::Quadrangulation, n)
        .unwrap()
        .iter()
        .enumerate()
        .map(|(i, (m, _))| (canonical_code(m), i))
        .collect();
    let mut counts = vec![0u64; classes.len()];
    for i in 0..draws {
        let (m, _) = sample_quadrangulation(n, seed.wrapping_add(i));
        counts[classes[&canonical_code(&m)]] += 1;
    }
    let expected = draws as f64 / classes.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dist = ChiSquared::new((classes.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

#[test]
fn sampler_is_uniform_on_small_maps() {
    for n in [2, 3] {
        let p = chi_square_uniform(n, 100_000, 1000 * n as u64);
        assert!(p > 0.001, "N = {n}: p = {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, rng_seed: RngSeed::Fixed(17), ..ProptestConfig::default() })]

    #[test]
    fn sampled_maps_satisfy_invariants(n in 20usize..400, seed in any::<u64>()) {
        let (m, _) = sample_quadrangulation(n, seed);
        prop_assert_eq!(validate_map(&m, Family::Quadrangulation), Ok(()));
        let s = cut_to_slice(&m, Family::Quadrangulation).unwrap();
        for d in 2..s.k() {
            check_walk(&s, d);
        }
        prop_assert_eq!(canonical_code(&reglue(&physical_cut(&s))), canonical_code(&m));
    }

    #[test]
    fn distances_are_lipschitz(n in 5usize..200, seed in any::<u64>()) {
        let (m, v0) = sample_quadrangulation(n, seed);
        let dist = bfs_distances(&m, v0).unwrap();
        for h in 0..m.n_darts() {
            prop_assert_eq!(dist[m.origin(h)].abs_diff(dist[m.target(h)]), 1);
        }
    }
}
