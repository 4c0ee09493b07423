//! Half-edge planar maps, distance labels, slices and hull walks.
//!
//! Conventions: `next(h)` is the next half-edge counterclockwise around the
//! origin of `h`; faces are the orbits of `h -> next(opp(h))`.

mod enumerate;
mod hull;
mod sampler;
mod schaeffer;
mod slice;

pub use enumerate::{
    enumerate_pointed_rooted, enumeration_tables, for_each_pointed_rooted, hull_histograms, HullHistograms,
    DEFAULT_ENUMERATION_CAP,
};
pub use hull::{check_hull_walk, hull_perimeter, hull_perimeter_traced, HullRecord};
pub use sampler::{
    measure_hulls, sample_quadrangulation, sample_tree, HullPoint, MeasureConfig, SampleBatch, SampleRecord,
    DEFAULT_SEED,
};
pub use schaeffer::{quadrangulation_from_tree, LabeledTree};
pub use slice::{cut_to_slice, physical_cut, reglue, PhysicalSlice, Side, SliceView};

use crate::genfun::Family;
use std::collections::VecDeque;
use thiserror::Error;

pub const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlanarError {
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("map is disconnected")]
    Disconnected,
    #[error("root half-edge must decrease the distance by one (labels {from} -> {to})")]
    RootNotDescending { from: u32, to: u32 },
    #[error("{0}")]
    OutOfRange(String),
    #[error("enumeration of {n} faces exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("conditioning success rate {rate:.4} is below 1%; increase N or lower the d-list")]
    Conditioning { rate: f64 },
    #[error("{0}")]
    Unsupported(String),
}

/// First invariant violated by a map, as reported by [`validate_map`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapViolation {
    #[error("half-edge {0} is its own opposite")]
    FixedPoint(usize),
    #[error("opposite is not an involution at half-edge {0}")]
    NotInvolution(usize),
    #[error("rotation is inconsistent at half-edge {0}")]
    Rotation(usize),
    #[error("map is disconnected")]
    Disconnected,
    #[error("Euler characteristic is {0}, expected 2")]
    Euler(i64),
    #[error("face through half-edge {dart} has degree {degree}, expected {expected}")]
    FaceDegree {
        dart: usize,
        degree: usize,
        expected: usize,
    },
    #[error("stored distance labels disagree with BFS at vertex {0}")]
    Labels(usize),
    #[error("root runs from label {from} to label {to}")]
    Root { from: u32, to: u32 },
}

/// A rooted, pointed combinatorial map given by a rotation system.
#[derive(Clone, Debug)]
pub struct HalfEdgeMap {
    opp: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    origin: Vec<usize>,
    first: Vec<usize>,
    root: usize,
    v0: usize,
    labels: Vec<u32>,
}

impl HalfEdgeMap {
    /// Builds a map from `opp` and `next`. `v0_dart` is any half-edge leaving
    /// the origin vertex. Only the shape of the arrays is checked here; use
    /// [`validate_map`] for the combinatorial invariants.
    pub fn from_rotation(opp: Vec<usize>, next: Vec<usize>, root: usize, v0_dart: usize) -> Result<Self, PlanarError> {
        let n = next.len();
        if opp.len() != n || n == 0 {
            return Err(PlanarError::InvalidRotation(
                "opp and next must have the same nonzero length".into(),
            ));
        }
        if root >= n || v0_dart >= n || opp.iter().chain(&next).any(|&h| h >= n) {
            return Err(PlanarError::InvalidRotation("half-edge index out of range".into()));
        }
        let mut prev = vec![usize::MAX; n];
        for (h, &s) in next.iter().enumerate() {
            if prev[s] != usize::MAX {
                return Err(PlanarError::InvalidRotation(format!(
                    "next is not a permutation at {s}"
                )));
            }
            prev[s] = h;
        }
        let mut origin = vec![usize::MAX; n];
        let mut first = Vec::new();
        for h in 0..n {
            if origin[h] != usize::MAX {
                continue;
            }
            let v = first.len();
            first.push(h);
            let mut c = h;
            loop {
                origin[c] = v;
                c = next[c];
                if c == h {
                    break;
                }
            }
        }
        let mut m = HalfEdgeMap {
            opp,
            next,
            prev,
            origin,
            first,
            root,
            v0: 0,
            labels: Vec::new(),
        };
        m.v0 = m.origin[v0_dart];
        m.labels = m.distances_from(m.v0);
        Ok(m)
    }

    pub fn n_darts(&self) -> usize {
        self.next.len()
    }

    pub fn n_edges(&self) -> usize {
        self.next.len() / 2
    }

    pub fn n_vertices(&self) -> usize {
        self.first.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces().len()
    }

    #[inline]
    pub fn opp(&self, h: usize) -> usize {
        self.opp[h]
    }

    #[inline]
    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    #[inline]
    pub fn prev(&self, h: usize) -> usize {
        self.prev[h]
    }

    #[inline]
    pub fn origin(&self, h: usize) -> usize {
        self.origin[h]
    }

    #[inline]
    pub fn target(&self, h: usize) -> usize {
        self.origin[self.opp[h]]
    }

    /// Successor of `h` along its face.
    #[inline]
    pub fn face_next(&self, h: usize) -> usize {
        self.next[self.opp[h]]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn v0(&self) -> usize {
        self.v0
    }

    #[inline]
    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Distance of the root's origin from `v0`.
    pub fn k(&self) -> u32 {
        self.labels[self.origin[self.root]]
    }

    pub fn first_dart(&self, v: usize) -> usize {
        self.first[v]
    }

    /// Half-edges leaving `v`, counterclockwise.
    pub fn darts_around(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.first[v];
        let mut cur = Some(start);
        std::iter::from_fn(move || {
            let h = cur?;
            let n = self.next[h];
            cur = (n != start).then_some(n);
            Some(h)
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.darts_around(v).count()
    }

    /// Face cycles, each listed from its smallest half-edge.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for h in 0..n {
            if seen[h] {
                continue;
            }
            let mut f = Vec::new();
            let mut c = h;
            while !seen[c] {
                seen[c] = true;
                f.push(c);
                c = self.face_next(c);
            }
            out.push(f);
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges() as i64 + self.n_faces() as i64
    }

    /// Same map with another root half-edge.
    pub fn with_root(&self, root: usize) -> Self {
        HalfEdgeMap { root, ..self.clone() }
    }

    /// Same map pointed at another vertex; labels are recomputed.
    pub fn with_v0(&self, v0: usize) -> Self {
        let labels = self.distances_from(v0);
        HalfEdgeMap {
            v0,
            labels,
            ..self.clone()
        }
    }

    fn distances_from(&self, v0: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.n_vertices()];
        dist[v0] = 0;
        let mut queue = VecDeque::from([v0]);
        while let Some(v) = queue.pop_front() {
            for h in self.darts_around(v) {
                let w = self.target(h);
                if dist[w] == UNREACHED {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Graph distances from `v0`.
pub fn bfs_distances(m: &HalfEdgeMap, v0: usize) -> Result<Vec<u32>, PlanarError> {
    let d = m.distances_from(v0);
    if d.contains(&UNREACHED) {
        return Err(PlanarError::Disconnected);
    }
    Ok(d)
}

/// Checks the involution, rotation consistency, planarity, face degrees,
/// distance labels and the root condition, in that order.
pub fn validate_map(m: &HalfEdgeMap, family: Family) -> Result<(), MapViolation> {
    for h in 0..m.n_darts() {
        if m.opp(h) == h {
            return Err(MapViolation::FixedPoint(h));
        }
        if m.opp(m.opp(h)) != h {
            return Err(MapViolation::NotInvolution(h));
        }
        if m.prev(m.next(h)) != h || m.origin(m.next(h)) != m.origin(h) {
            return Err(MapViolation::Rotation(h));
        }
    }
    let dist = bfs_distances(m, m.v0()).map_err(|_| MapViolation::Disconnected)?;
    let chi = m.euler_characteristic();
    if chi != 2 {
        return Err(MapViolation::Euler(chi));
    }
    let expected = family.face_degree();
    for f in m.faces() {
        if f.len() != expected {
            return Err(MapViolation::FaceDegree {
                dart: f[0],
                degree: f.len(),
                expected,
            });
        }
    }
    if let Some(v) = (0..m.n_vertices()).find(|&v| dist[v] != m.label(v)) {
        return Err(MapViolation::Labels(v));
    }
    let (from, to) = (m.label(m.origin(m.root())), m.label(m.target(m.root())));
    if from != to + 1 {
        return Err(MapViolation::Root { from, to });
    }
    Ok(())
}

/// Relabeling-invariant code of a rooted pointed map: half-edges are numbered
/// in breadth-first order from the root, and each is recorded with the codes
/// of its `next`, its `opp` and its origin label.
pub fn canonical_code(m: &HalfEdgeMap) -> Vec<u32> {
    let n = m.n_darts();
    let mut id = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    id[m.root()] = 0;
    order.push(m.root());
    let mut i = 0;
    while i < order.len() {
        let h = order[i];
        for g in [m.next(h), m.opp(h)] {
            if id[g] == u32::MAX {
                id[g] = order.len() as u32;
                order.push(g);
            }
        }
        i += 1;
    }
    let mut code = Vec::with_capacity(3 * order.len());
    for &h in &order {
        code.extend([id[m.next(h)], id[m.opp(h)], m.label(m.origin(h))]);
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path a-b-c seen as a quadrangulation with a single face of degree 4;
    /// rooted at c -> b, pointed at a.
    fn path_map() -> HalfEdgeMap {
        // edges: 0/1 = a->b / b->a, 2/3 = b->c / c->b
        let opp = vec![1, 0, 3, 2];
        let next = vec![0, 2, 1, 3];
        HalfEdgeMap::from_rotation(opp, next, 3, 0).unwrap()
    }

    #[test]
    fn smallest_quadrangulation() {
        let m = path_map();
        assert_eq!(m.n_vertices(), 3);
        assert_eq!(m.n_faces(), 1);
        assert_eq!(m.k(), 2);
        assert_eq!(validate_map(&m, Family::Quadrangulation), Ok(()));
    }

    #[test]
    fn single_edge_labels() {
        let m = HalfEdgeMap::from_rotation(vec![1, 0], vec![0, 1], 1, 0).unwrap();
        assert_eq!(bfs_distances(&m, m.v0()).unwrap(), vec![0, 1]);
    }

    #[test]
    fn self_opposite_is_reported() {
        let m = HalfEdgeMap::from_rotation(vec![0, 2, 1, 3], vec![0, 2, 1, 3], 3, 0).unwrap();
        assert_eq!(
            validate_map(&m, Family::Quadrangulation),
            Err(MapViolation::FixedPoint(0))
        );
    }

    #[test]
    fn disconnected_is_reported() {
        let m = HalfEdgeMap::from_rotation(vec![1, 0, 3, 2], vec![0, 1, 2, 3], 1, 0).unwrap();
        assert_eq!(bfs_distances(&m, 0), Err(PlanarError::Disconnected));
    }

    #[test]
    fn code_is_relabeling_invariant() {
        let m = path_map();
        // swap half-edge names 0 <-> 2 and 1 <-> 3
        let p = [2, 3, 0, 1];
        let mut opp = vec![0; 4];
        let mut next = vec![0; 4];
        for h in 0..4 {
            opp[p[h]] = p[m.opp(h)];
            next[p[h]] = p[m.next(h)];
        }
        let r = HalfEdgeMap::from_rotation(opp, next, p[m.root()], p[m.first_dart(m.v0())]).unwrap();
        assert_eq!(canonical_code(&m), canonical_code(&r));
        assert_ne!(canonical_code(&m), canonical_code(&m.with_root(1)));
    }
}
