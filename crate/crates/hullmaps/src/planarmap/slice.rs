use super::{HalfEdgeMap, PlanarError};
use crate::genfun::Family;
use std::collections::{HashMap, HashSet};

/// Which copy of a cut vertex a walk is on. `B` borders the right boundary,
/// `A` the left boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
    /// Vertex not on the cut line.
    Whole,
}

/// A k-slice obtained by marking the leftmost geodesic from the root as a
/// seam. The map itself is not modified.
#[derive(Clone, Debug)]
pub struct SliceView<'a> {
    map: &'a HalfEdgeMap,
    family: Family,
    root: usize,
    /// `path[j-1]` runs from `u_j` to `u_{j-1}`; `path[k-1]` is the root.
    path: Vec<usize>,
    /// `u_j -> j` for the split vertices `1 <= j <= k-1`.
    seam: HashMap<usize, usize>,
    /// Half-edges strictly inside the `B` wedge of a split vertex.
    b_wedge: HashSet<usize>,
    on_path: HashSet<usize>,
}

/// Slice of `m` rooted at `m.root()`.
pub fn cut_to_slice(m: &HalfEdgeMap, family: Family) -> Result<SliceView<'_>, PlanarError> {
    SliceView::new(m, family, m.root())
}

impl<'a> SliceView<'a> {
    /// Slice for an arbitrary distance-decreasing root half-edge.
    pub fn new(map: &'a HalfEdgeMap, family: Family, root: usize) -> Result<Self, PlanarError> {
        let (from, to) = (map.label(map.origin(root)), map.label(map.target(root)));
        if from != to + 1 {
            return Err(PlanarError::RootNotDescending { from, to });
        }
        let k = from as usize;
        let mut rev = vec![root];
        let mut cur = root;
        while map.label(map.target(cur)) > 0 {
            let w = map.target(cur);
            let want = map.label(w) - 1;
            let mut h = map.prev(map.opp(cur));
            while map.label(map.target(h)) != want {
                h = map.prev(h);
            }
            rev.push(h);
            cur = h;
        }
        rev.reverse();
        let path = rev;
        debug_assert_eq!(path.len(), k);

        let mut seam = HashMap::new();
        let mut b_wedge = HashSet::new();
        for j in 1..k {
            let g = path[j - 1];
            let up = map.opp(path[j]);
            seam.insert(map.origin(g), j);
            let mut h = map.next(g);
            while h != up {
                b_wedge.insert(h);
                h = map.next(h);
            }
        }
        let on_path = path.iter().flat_map(|&h| [h, map.opp(h)]).collect();
        Ok(SliceView {
            map,
            family,
            root,
            path,
            seam,
            b_wedge,
            on_path,
        })
    }

    pub fn map(&self) -> &'a HalfEdgeMap {
        self.map
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn k(&self) -> usize {
        self.path.len()
    }

    pub fn apex(&self) -> usize {
        self.map.v0()
    }

    /// Vertex `u_j` of the cut line, `u_0 = v0` and `u_k = v1`.
    pub fn seam_vertex(&self, j: usize) -> usize {
        if j == 0 {
            self.map.v0()
        } else {
            self.map.origin(self.path[j - 1])
        }
    }

    /// Left boundary from `v1` to the apex (length `k`).
    pub fn left_boundary(&self) -> Vec<usize> {
        self.path.iter().rev().copied().collect()
    }

    /// Right boundary from the base's endpoint to the apex (length `k-1`).
    /// The half-edges are shared with the left boundary and read on side `B`.
    pub fn right_boundary(&self) -> Vec<usize> {
        self.path[..self.k() - 1].iter().rev().copied().collect()
    }

    /// Index `j` if `v = u_j` is a split vertex.
    pub fn seam_index(&self, v: usize) -> Option<usize> {
        self.seam.get(&v).copied()
    }

    pub fn is_seam_dart(&self, h: usize) -> bool {
        self.on_path.contains(&h)
    }

    /// Towards the apex from `u_j`.
    pub(crate) fn down_dart(&self, j: usize) -> usize {
        self.path[j - 1]
    }

    /// Copy of `target(h)` reached along `h` when leaving from copy `from`.
    pub(crate) fn arrival_side(&self, h: usize, from: Side) -> Side {
        let x = self.map.target(h);
        if !self.seam.contains_key(&x) {
            return Side::Whole;
        }
        if self.on_path.contains(&h) {
            return from;
        }
        if self.b_wedge.contains(&self.map.opp(h)) {
            Side::B
        } else {
            Side::A
        }
    }

    /// Whether the half-edge `h` leaving a vertex is usable from copy `side`.
    pub(crate) fn allowed(&self, h: usize, side: Side) -> bool {
        match side {
            Side::Whole => true,
            _ if self.on_path.contains(&h) => true,
            Side::B => self.b_wedge.contains(&h),
            Side::A => !self.b_wedge.contains(&h),
        }
    }

    /// Half-edges around the copy `side` of `origin(reference)`, clockwise,
    /// starting after `reference` and ending before it.
    pub(crate) fn clockwise_from(&self, reference: usize, side: Side) -> impl Iterator<Item = usize> + '_ {
        let m = self.map;
        let mut h = m.prev(reference);
        std::iter::from_fn(move || {
            while h != reference {
                let c = h;
                h = m.prev(h);
                if self.allowed(c, side) {
                    return Some(c);
                }
            }
            None
        })
    }
}

/// The slice cut open for real: the seam is doubled and an outer face of
/// degree `2k` appears. Used to check that cutting is reversible.
#[derive(Clone, Debug)]
pub struct PhysicalSlice {
    pub map: HalfEdgeMap,
    /// Any half-edge of the outer face.
    pub outer: usize,
    pub apex: usize,
    /// Lower end of the right boundary.
    pub right_start: usize,
    pub k: usize,
}

/// Performs the surgery described by a [`SliceView`].
pub fn physical_cut(s: &SliceView<'_>) -> PhysicalSlice {
    let m = s.map();
    let n = m.n_darts();
    let k = s.k();
    let qhat = |j: usize| n + j - 1;
    let phat = |j: usize| n + k + j - 1;
    let mut opp: Vec<usize> = (0..n).map(|h| m.opp(h)).collect();
    opp.resize(n + 2 * k, 0);
    let mut phi: Vec<usize> = (0..n).map(|h| m.face_next(h)).collect();
    phi.resize(n + 2 * k, 0);
    for j in 1..=k {
        let p = s.path[j - 1];
        let q = m.opp(p);
        opp[p] = qhat(j);
        opp[qhat(j)] = p;
        opp[q] = phat(j);
        opp[phat(j)] = q;
        phi[qhat(j)] = if j < k { qhat(j + 1) } else { phat(k) };
        phi[phat(j)] = if j > 1 { phat(j - 1) } else { qhat(1) };
    }
    let next: Vec<usize> = (0..n + 2 * k).map(|h| phi[opp[h]]).collect();
    let map = HalfEdgeMap::from_rotation(opp, next, s.root(), m.first_dart(m.v0())).expect("slice surgery");
    let apex = map.origin(qhat(1));
    let right_start = map.target(phat(k));
    PhysicalSlice {
        map,
        outer: qhat(1),
        apex,
        right_start,
        k,
    }
}

/// Glues the left boundary of a physical slice onto its base and right
/// boundary. Half-edges of the outer face are dropped and the rest renumbered.
pub fn reglue(s: &PhysicalSlice) -> HalfEdgeMap {
    let m = &s.map;
    let mut cycle = vec![s.outer];
    let mut h = m.face_next(s.outer);
    while h != s.outer {
        cycle.push(h);
        h = m.face_next(h);
    }
    assert_eq!(cycle.len(), 2 * s.k, "outer face of a k-slice has degree 2k");
    let start = cycle
        .iter()
        .position(|&h| m.origin(h) == s.apex && m.label(m.target(h)) == 1)
        .expect("left boundary leaves the apex");
    cycle.rotate_left(start);

    let outer: HashSet<usize> = cycle.iter().copied().collect();
    let mut opp: Vec<usize> = (0..m.n_darts()).map(|h| m.opp(h)).collect();
    for i in 0..s.k {
        let (a, b) = (m.opp(cycle[i]), m.opp(cycle[2 * s.k - 1 - i]));
        opp[a] = b;
        opp[b] = a;
    }
    let kept: Vec<usize> = (0..m.n_darts()).filter(|h| !outer.contains(h)).collect();
    let mut new_id = vec![usize::MAX; m.n_darts()];
    for (i, &h) in kept.iter().enumerate() {
        new_id[h] = i;
    }
    let new_opp: Vec<usize> = kept.iter().map(|&h| new_id[opp[h]]).collect();
    // faces of the glued map are the inner faces of the slice
    let new_next: Vec<usize> = kept.iter().map(|&h| new_id[m.face_next(opp[h])]).collect();
    let v0_dart = kept
        .iter()
        .position(|&h| m.origin(h) == s.apex)
        .expect("apex keeps a half-edge");
    HalfEdgeMap::from_rotation(new_opp, new_next, new_id[m.root()], v0_dart).expect("glued map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarmap::{canonical_code, quadrangulation_from_tree, LabeledTree};

    fn sample() -> HalfEdgeMap {
        // a path of three edges below the root, root at distance 3
        let t = LabeledTree::new(vec![true, true, true, false, false, false], vec![0, -1, -2, -1]).unwrap();
        quadrangulation_from_tree(&t)
    }

    #[test]
    fn boundaries() {
        let m = sample();
        let s = cut_to_slice(&m, Family::Quadrangulation).unwrap();
        assert_eq!(s.k() as u32, m.k());
        assert_eq!(s.left_boundary().len(), s.k());
        assert_eq!(s.right_boundary().len(), s.k() - 1);
        for (i, &h) in s.left_boundary().iter().enumerate() {
            assert_eq!(m.label(m.origin(h)) as usize, s.k() - i);
        }
    }

    #[test]
    fn round_trip() {
        let m = sample();
        let s = cut_to_slice(&m, Family::Quadrangulation).unwrap();
        let p = physical_cut(&s);
        assert_eq!(p.map.euler_characteristic(), 2);
        let back = reglue(&p);
        assert_eq!(canonical_code(&back), canonical_code(&m));
    }

    #[test]
    fn not_descending() {
        let m = sample();
        assert!(SliceView::new(&m, Family::Quadrangulation, m.opp(m.root())).is_err());
    }
}
