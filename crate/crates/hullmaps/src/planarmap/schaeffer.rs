use super::{HalfEdgeMap, PlanarError};

/// A plane tree given by its contour word (`true` = step to a new child)
/// together with integer vertex labels, vertices numbered in order of
/// discovery. Adjacent labels differ by at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    steps: Vec<bool>,
    labels: Vec<i64>,
}

impl LabeledTree {
    pub fn new(steps: Vec<bool>, labels: Vec<i64>) -> Result<Self, PlanarError> {
        let mut depth = 0i64;
        for &up in &steps {
            depth += if up { 1 } else { -1 };
            if depth < 0 {
                return Err(PlanarError::OutOfRange("contour word goes below the root".into()));
            }
        }
        if depth != 0 {
            return Err(PlanarError::OutOfRange(
                "contour word does not return to the root".into(),
            ));
        }
        let n = steps.len() / 2;
        if labels.len() != n + 1 {
            return Err(PlanarError::OutOfRange(format!(
                "need {} labels, got {}",
                n + 1,
                labels.len()
            )));
        }
        let t = LabeledTree { steps, labels };
        let mut stack = vec![0usize];
        let mut next_id = 1;
        for &up in &t.steps {
            if up {
                let p = *stack.last().unwrap();
                if (t.labels[next_id] - t.labels[p]).abs() > 1 {
                    return Err(PlanarError::OutOfRange(format!(
                        "labels jump by more than 1 at vertex {next_id}"
                    )));
                }
                stack.push(next_id);
                next_id += 1;
            } else {
                stack.pop();
            }
        }
        Ok(t)
    }

    /// Number of edges, i.e. faces of the associated quadrangulation.
    pub fn n_edges(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Vertex at each corner of the contour.
    fn corner_vertices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut stack = vec![0usize];
        let mut next_id = 1;
        for &up in &self.steps {
            out.push(*stack.last().unwrap());
            if up {
                stack.push(next_id);
                next_id += 1;
            } else {
                stack.pop();
            }
        }
        out
    }
}

/// Pointed quadrangulation of a labeled tree: every corner is joined to the
/// next corner in contour order with label one less, or to an extra vertex
/// `v0` if there is none. The root is the arc leaving the root corner, so it
/// decreases the distance to `v0`.
pub fn quadrangulation_from_tree(t: &LabeledTree) -> HalfEdgeMap {
    let n = t.n_edges();
    assert!(n >= 1, "tree must have at least one edge");
    let len = 2 * n;
    let corner_vertex = t.corner_vertices();
    let lab: Vec<i64> = corner_vertex.iter().map(|&v| t.labels[v]).collect();
    let min = *lab.iter().min().unwrap();
    let max = *lab.iter().max().unwrap();

    let mut next_pos = vec![usize::MAX; (max - min + 1) as usize];
    let mut succ = vec![usize::MAX; len];
    for i in (0..2 * len).rev() {
        let p = i % len;
        let l = (lab[p] - min) as usize;
        if i < len && l > 0 && next_pos[l - 1] != usize::MAX {
            succ[p] = next_pos[l - 1] % len;
        }
        next_pos[l] = i;
    }

    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); len];
    for (i, &c) in succ.iter().enumerate() {
        if c != usize::MAX {
            incoming[c].push(i);
        }
    }
    let mut corners_of: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (c, &v) in corner_vertex.iter().enumerate() {
        corners_of[v].push(c);
    }

    // arc i: half-edge 2i leaves corner i, 2i+1 arrives there from succ(i)
    let mut next = vec![0usize; 2 * len];
    let mut rotation = Vec::new();
    fn close(rot: &[usize], next: &mut [usize]) {
        for w in 0..rot.len() {
            next[rot[w]] = rot[(w + 1) % rot.len()];
        }
    }
    for corners in &corners_of {
        rotation.clear();
        for &c in corners {
            let mut inc = incoming[c].clone();
            inc.sort_by_key(|&i| (c + len - i) % len);
            rotation.extend(inc.into_iter().map(|i| 2 * i + 1));
            rotation.push(2 * c);
        }
        close(&rotation, &mut next);
    }
    let to_v0: Vec<usize> = (0..len)
        .rev()
        .filter(|&i| succ[i] == usize::MAX)
        .map(|i| 2 * i + 1)
        .collect();
    close(&to_v0, &mut next);
    let opp: Vec<usize> = (0..2 * len).map(|h| h ^ 1).collect();
    HalfEdgeMap::from_rotation(opp, next, 0, to_v0[0]).expect("tree bijection yields a rotation system")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::Family;
    use crate::planarmap::validate_map;

    #[test]
    fn single_edge_tree() {
        for l in -1..=1 {
            let t = LabeledTree::new(vec![true, false], vec![0, l]).unwrap();
            let m = quadrangulation_from_tree(&t);
            assert_eq!(m.n_vertices(), 3);
            assert_eq!(validate_map(&m, Family::Quadrangulation), Ok(()));
        }
    }

    #[test]
    fn labels_are_shifted_distances() {
        let t = LabeledTree::new(vec![true, true, false, true, false, false], vec![0, 1, 0, 2]).unwrap();
        let m = quadrangulation_from_tree(&t);
        assert_eq!(validate_map(&m, Family::Quadrangulation), Ok(()));
        let min = *t.labels().iter().min().unwrap();
        for (c, &v) in t.corner_vertices().iter().enumerate() {
            assert_eq!(m.label(m.origin(2 * c)) as i64, t.labels()[v] - min + 1);
        }
    }

    #[test]
    fn rejects_bad_trees() {
        assert!(LabeledTree::new(vec![false, true], vec![0, 0]).is_err());
        assert!(LabeledTree::new(vec![true, false], vec![0, 2]).is_err());
        assert!(LabeledTree::new(vec![true, false], vec![0]).is_err());
    }
}
