use super::slice::{Side, SliceView};
use super::PlanarError;
use crate::genfun::Family;
use serde::Serialize;
use std::collections::{HashSet, VecDeque};

/// Hull perimeter `ℒ(d)` of a slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullRecord {
    pub d: usize,
    pub perimeter: usize,
    /// Half-edges traversed by the walk, in order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<usize>>,
}

pub fn hull_perimeter(s: &SliceView<'_>, d: usize) -> Result<HullRecord, PlanarError> {
    let mut r = hull_perimeter_traced(s, d)?;
    r.trace = None;
    Ok(r)
}

/// Like [`hull_perimeter`], keeping the walk.
pub fn hull_perimeter_traced(s: &SliceView<'_>, d: usize) -> Result<HullRecord, PlanarError> {
    let k = s.k();
    let trivial = match s.family() {
        Family::Quadrangulation => d == 1,
        Family::Triangulation => d == 0,
    };
    if trivial {
        return Ok(HullRecord {
            d,
            perimeter: 0,
            trace: Some(Vec::new()),
        });
    }
    let lo = s.family().min_d() as usize;
    if d < lo || d >= k {
        return Err(PlanarError::OutOfRange(format!(
            "{}: hull at distance d needs {lo} <= d <= k-1 (k = {k}), got d = {d}",
            s.family()
        )));
    }
    let trace = match s.family() {
        Family::Quadrangulation => quad_walk(s, d),
        Family::Triangulation => tri_walk(s, d),
    };
    let perimeter = trace.len();
    Ok(HullRecord {
        d,
        perimeter,
        trace: Some(trace),
    })
}

/// Checks the walk at distance `d`: its vertices alternate between labels
/// `d` and `d-1` (quad) or all sit at label `d` (tri), it closes at the seam
/// vertex it started from, and removing it separates `v1` from `v0`.
pub fn check_hull_walk(s: &SliceView<'_>, d: usize) -> Result<(), String> {
    let m = s.map();
    let r = hull_perimeter_traced(s, d).map_err(|e| e.to_string())?;
    let trace = r.trace.unwrap_or_default();
    let Some(&last) = trace.last() else {
        return Err(format!("empty walk at d = {d}"));
    };
    let (start, label_ok): (usize, Box<dyn Fn(usize, usize) -> bool>) = match s.family() {
        Family::Quadrangulation => (
            s.seam_vertex(d - 1),
            Box::new(|i, l| l == if i % 2 == 0 { d } else { d - 1 }),
        ),
        Family::Triangulation => (s.seam_vertex(d), Box::new(|_, l| l == d)),
    };
    if let Some(i) = (0..trace.len()).find(|&i| !label_ok(i, m.label(m.target(trace[i])) as usize)) {
        return Err(format!("step {i} of the walk at d = {d} has the wrong label"));
    }
    if m.origin(trace[0]) != start || m.target(last) != start {
        return Err(format!("walk at d = {d} does not close at the seam"));
    }
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
    if seen[m.v0()] {
        return Err(format!("walk at d = {d} does not separate v1 from v0"));
    }
    Ok(())
}

struct Visits(HashSet<(usize, Side)>);

impl Visits {
    fn new(v: usize, side: Side) -> Self {
        Visits(HashSet::from([(v, side)]))
    }

    fn enter(&mut self, v: usize, side: Side, d: usize) {
        assert!(self.0.insert((v, side)), "hull walk at d = {d} revisits vertex {v}");
    }
}

/// Leftmost `d-1 -> d -> d-1` paths from the right to the left copy of `u_{d-1}`.
fn quad_walk(s: &SliceView<'_>, d: usize) -> Vec<usize> {
    let m = s.map();
    let (lo, hi) = (d as u32 - 1, d as u32);
    let start = s.seam_vertex(d - 1);
    let (mut v, mut side, mut reference) = (start, Side::B, s.down_dart(d - 1));
    let mut visits = Visits::new(v, side);
    let mut trace = Vec::new();
    let cap = m.n_darts();
    loop {
        let step = s
            .clockwise_from(reference, side)
            .filter(|&h| m.label(m.target(h)) == hi)
            .find_map(|h| {
                let x_side = s.arrival_side(h, side);
                s.clockwise_from(m.opp(h), x_side)
                    .find(|&h2| m.label(m.target(h2)) == lo && (m.target(h2), s.arrival_side(h2, x_side)) != (v, side))
                    .map(|h2| (h, x_side, h2))
            });
        let (h, x_side, h2) = step.unwrap_or_else(|| panic!("hull walk at d = {d} is stuck at vertex {v}"));
        let x = m.target(h);
        let y = m.target(h2);
        let y_side = s.arrival_side(h2, x_side);
        trace.push(h);
        trace.push(h2);
        if y == start && y_side == Side::A {
            return trace;
        }
        visits.enter(x, x_side, d);
        visits.enter(y, y_side, d);
        assert!(trace.len() <= cap, "hull walk at d = {d} does not terminate");
        (v, side, reference) = (y, y_side, m.opp(h2));
    }
}

/// Leftmost same-distance edges from the right to the left copy of `u_d`.
fn tri_walk(s: &SliceView<'_>, d: usize) -> Vec<usize> {
    let m = s.map();
    let level = d as u32;
    let start = s.seam_vertex(d);
    let (mut v, mut side, mut reference) = (start, Side::B, s.down_dart(d));
    let mut visits = Visits::new(v, side);
    let mut trace = Vec::new();
    let cap = m.n_darts();
    loop {
        let h = s
            .clockwise_from(reference, side)
            .find(|&h| m.label(m.target(h)) == level && (m.target(h), s.arrival_side(h, side)) != (v, side))
            .unwrap_or_else(|| panic!("hull walk at d = {d} is stuck at vertex {v}"));
        let w = m.target(h);
        let w_side = s.arrival_side(h, side);
        trace.push(h);
        if w == start && w_side == Side::A {
            return trace;
        }
        visits.enter(w, w_side, d);
        assert!(trace.len() <= cap, "hull walk at d = {d} does not terminate");
        (v, side, reference) = (w, w_side, m.opp(h));
    }
}
