use super::{cut_to_slice, hull_perimeter, quadrangulation_from_tree, HalfEdgeMap, LabeledTree, PlanarError};
use crate::exactalg::{int, Poly};
use crate::genfun::{Family, ZTable};
use std::collections::BTreeMap;

pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// `(d, k) -> (ℒ -> number of maps)`.
pub type HullHistograms = BTreeMap<(usize, usize), BTreeMap<usize, u64>>;

/// Calls `f` once for every k-pointed-rooted map with `n` faces (any `k`).
pub fn for_each_pointed_rooted<F: FnMut(&HalfEdgeMap)>(
    family: Family,
    n: usize,
    cap: usize,
    mut f: F,
) -> Result<(), PlanarError> {
    if n > cap {
        return Err(PlanarError::CapExceeded { n, cap });
    }
    match family {
        Family::Quadrangulation => quadrangulations(n, &mut f),
        Family::Triangulation => triangulations(n, &mut f),
    }
    Ok(())
}

/// All k-pointed-rooted maps with `n` faces, paired with `k`.
pub fn enumerate_pointed_rooted(family: Family, n: usize) -> Result<Vec<(HalfEdgeMap, usize)>, PlanarError> {
    let mut out = Vec::new();
    for_each_pointed_rooted(family, n, DEFAULT_ENUMERATION_CAP, |m| {
        out.push((m.clone(), m.k() as usize))
    })?;
    Ok(out)
}

/// Brute-force hull perimeter histograms over all maps with `n` faces.
pub fn hull_histograms(family: Family, n: usize) -> Result<HullHistograms, PlanarError> {
    let mut hist = HullHistograms::new();
    let lo = family.min_d() as usize;
    let mut failure = None;
    for_each_pointed_rooted(family, n, DEFAULT_ENUMERATION_CAP, |m| {
        let s = match cut_to_slice(m, family) {
            Ok(s) => s,
            Err(e) => {
                failure.get_or_insert(e);
                return;
            }
        };
        let k = s.k();
        for d in lo..k {
            match hull_perimeter(&s, d) {
                Ok(r) => *hist.entry((d, k)).or_default().entry(r.perimeter).or_default() += 1,
                Err(e) => {
                    failure.get_or_insert(e);
                }
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(hist),
    }
}

/// Brute-force counterparts of the exact tables, one per `(d, k)` seen, with
/// all sizes up to `max_n` faces.
pub fn enumeration_tables(family: Family, max_n: usize) -> Result<Vec<ZTable>, PlanarError> {
    let mut tables: BTreeMap<(usize, usize), ZTable> = BTreeMap::new();
    for n in 1..=max_n {
        for ((d, k), h) in hull_histograms(family, n)? {
            let t = tables.entry((d, k)).or_insert_with(|| ZTable {
                family,
                d: d as i64,
                k: k as i64,
                order: max_n as i64,
                coefficients: vec![Poly::zero(); max_n + 1],
            });
            let top = *h.keys().max().unwrap();
            let mut c = vec![int(0); top + 1];
            for (l, count) in h {
                c[l] = int(count as i64);
            }
            t.coefficients[n] = Poly::new(c);
        }
    }
    Ok(tables.into_values().collect())
}

/// All contour words of plane trees with `n` edges.
fn dyck_words(n: usize) -> Vec<Vec<bool>> {
    fn go(up: usize, down: usize, n: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if cur.len() == 2 * n {
            out.push(cur.clone());
            return;
        }
        if up < n {
            cur.push(true);
            go(up + 1, down, n, cur, out);
            cur.pop();
        }
        if down < up {
            cur.push(false);
            go(up, down + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Every labeled tree (root label 0) gives one pointed quadrangulation rooted
/// at a distance-decreasing half-edge, and conversely.
fn quadrangulations<F: FnMut(&HalfEdgeMap)>(n: usize, f: &mut F) {
    if n == 0 {
        return;
    }
    for word in dyck_words(n) {
        let mut parent = vec![0usize; n + 1];
        let mut stack = vec![0usize];
        let mut next_id = 1;
        for &up in &word {
            if up {
                parent[next_id] = *stack.last().unwrap();
                stack.push(next_id);
                next_id += 1;
            } else {
                stack.pop();
            }
        }
        for code in 0..3usize.pow(n as u32) {
            let mut labels = vec![0i64; n + 1];
            let mut c = code;
            for v in 1..=n {
                labels[v] = labels[parent[v]] + (c % 3) as i64 - 1;
                c /= 3;
            }
            let t = LabeledTree::new(word.clone(), labels).expect("valid labeled tree");
            f(&quadrangulation_from_tree(&t));
        }
    }
}

/// Rooted triangulations (loops and multiple edges allowed) by canonical
/// gluing: triangle `i` has half-edges `3i, 3i+1, 3i+2` in face order, the
/// root is half-edge 0, and the smallest unmatched half-edge is always glued
/// next, either to an open half-edge or to the first half-edge of a new
/// triangle. Each rooted map arises once; non-planar gluings are dropped.
fn triangulations<F: FnMut(&HalfEdgeMap)>(n: usize, f: &mut F) {
    rooted_triangulations(n, &mut |m: &HalfEdgeMap| {
        for v in 0..m.n_vertices() {
            let p = m.with_v0(v);
            if p.label(p.origin(0)) == p.label(p.target(0)) + 1 {
                f(&p);
            }
        }
    });
}

fn rooted_triangulations<F: FnMut(&HalfEdgeMap)>(n: usize, f: &mut F) {
    if n == 0 || n % 2 == 1 {
        return;
    }
    let mut opp = vec![usize::MAX; 3 * n];
    glue(n, 1, &mut opp, f);
}

fn glue<F: FnMut(&HalfEdgeMap)>(n: usize, t: usize, opp: &mut Vec<usize>, f: &mut F) {
    let Some(h) = (0..3 * t).find(|&h| opp[h] == usize::MAX) else {
        if t == n {
            emit_triangulation(n, opp, f);
        }
        return;
    };
    for h2 in h + 1..3 * t {
        if opp[h2] == usize::MAX {
            opp[h] = h2;
            opp[h2] = h;
            glue(n, t, opp, f);
            opp[h] = usize::MAX;
            opp[h2] = usize::MAX;
        }
    }
    if t < n {
        opp[h] = 3 * t;
        opp[3 * t] = h;
        glue(n, t + 1, opp, f);
        opp[h] = usize::MAX;
        opp[3 * t] = usize::MAX;
    }
}

fn emit_triangulation<F: FnMut(&HalfEdgeMap)>(n: usize, opp: &[usize], f: &mut F) {
    let phi = |h: usize| 3 * (h / 3) + (h + 1) % 3;
    let next: Vec<usize> = (0..3 * n).map(|h| phi(opp[h])).collect();
    let m = HalfEdgeMap::from_rotation(opp.to_vec(), next, 0, 0).expect("gluing yields a rotation system");
    if m.n_vertices() == n / 2 + 2 {
        f(&m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarmap::{canonical_code, validate_map};
    use std::collections::HashSet;

    #[test]
    fn dyck_counts() {
        let c: Vec<usize> = (1..=6).map(|n| dyck_words(n).len()).collect();
        assert_eq!(c, vec![1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn quadrangulations_valid_and_distinct() {
        for n in 1..=4 {
            let maps = enumerate_pointed_rooted(Family::Quadrangulation, n).unwrap();
            let codes: HashSet<Vec<u32>> = maps.iter().map(|(m, _)| canonical_code(m)).collect();
            assert_eq!(codes.len(), maps.len());
            for (m, _) in &maps {
                assert_eq!(validate_map(m, Family::Quadrangulation), Ok(()));
            }
        }
    }

    #[test]
    fn rooted_triangulation_counts() {
        let mut counts = Vec::new();
        for n in [2, 4, 6, 8] {
            let mut seen = HashSet::new();
            rooted_triangulations(n, &mut |m: &HalfEdgeMap| {
                seen.insert(canonical_code(m));
            });
            counts.push(seen.len());
        }
        assert_eq!(counts, vec![4, 32, 336, 4096]);
        for_each_pointed_rooted(Family::Triangulation, 6, 6, |m| {
            assert_eq!(validate_map(m, Family::Triangulation), Ok(()));
        })
        .unwrap();
    }

    #[test]
    fn cap() {
        assert!(enumerate_pointed_rooted(Family::Quadrangulation, 7).is_err());
    }
}
