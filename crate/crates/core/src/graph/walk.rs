use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, VertexMap};

/// A closed walk `(v0, v1, ..., vk, v0)`, stored without the closing repeat of `v0`.
///
/// A step between equal consecutive vertices is allowed only at a looped vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClosedWalk(Vec<usize>);

impl ClosedWalk {
    /// Wraps a vertex sequence without checking it against any graph.
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "a closed walk needs at least one vertex");
        ClosedWalk(vertices)
    }

    /// Wraps `vertices` after checking every step (including the closing one) in `g`.
    pub fn in_graph(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        let w = ClosedWalk(vertices);
        w.validate(g)?;
        Ok(w)
    }

    pub fn constant(v: usize) -> Self {
        ClosedWalk(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    /// Number of steps, which equals the number of stored vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn basepoint(&self) -> usize {
        self.0[0]
    }

    /// The steps `(v_i, v_{i+1})`, closing step included. A one-vertex walk has none.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.0.len();
        (0..if k == 1 { 0 } else { k }).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        if self.0.is_empty() {
            return Err(GraphError::InvalidWalk("empty walk".into()));
        }
        for &v in &self.0 {
            g.check_vertex(v)?;
        }
        for (a, b) in self.steps() {
            if !g.adjacent(a, b) {
                return Err(GraphError::InvalidWalk(format!("no edge or loop between {a} and {b}")));
            }
        }
        Ok(())
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&v| v == self.0[0])
    }

    /// True when no vertex repeats.
    pub fn is_simple(&self) -> bool {
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Same basepoint, opposite direction.
    pub fn reversed(&self) -> Self {
        let mut v = Vec::with_capacity(self.0.len());
        v.push(self.0[0]);
        v.extend(self.0[1..].iter().rev());
        ClosedWalk(v)
    }

    /// Image under a vertex map, step for step.
    pub fn map(&self, f: &VertexMap) -> Self {
        ClosedWalk(self.0.iter().map(|&v| f.apply(v)).collect())
    }

    pub fn map_with(&self, f: impl Fn(usize) -> usize) -> Self {
        ClosedWalk(self.0.iter().map(|&v| f(v)).collect())
    }

    /// Concatenation of two closed walks sharing a basepoint. The one-vertex
    /// walk is the identity.
    pub fn concat(&self, other: &ClosedWalk) -> Option<Self> {
        if self.basepoint() != other.basepoint() {
            return None;
        }
        if self.0.len() == 1 {
            return Some(other.clone());
        }
        if other.0.len() == 1 {
            return Some(self.clone());
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Some(ClosedWalk(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_cycle;

    #[test]
    fn closing_step_is_checked() {
        let c4 = make_cycle(4, false);
        assert!(ClosedWalk::in_graph(&c4, vec![0, 1, 2, 3]).is_ok());
        assert!(ClosedWalk::in_graph(&c4, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn equal_steps_need_a_loop() {
        let bare = make_cycle(4, false);
        let looped = make_cycle(4, true);
        assert!(ClosedWalk::in_graph(&bare, vec![2]).is_ok());
        assert!(ClosedWalk::in_graph(&bare, vec![2, 2]).is_err());
        assert!(ClosedWalk::in_graph(&looped, vec![2, 2]).is_ok());
        assert!(ClosedWalk::in_graph(&looped, vec![0, 0, 1]).is_ok());
    }

    #[test]
    fn reversal_keeps_basepoint() {
        let w = ClosedWalk::new(vec![0, 1, 2, 3]);
        assert_eq!(w.reversed().vertices(), &[0, 3, 2, 1]);
        assert_eq!(w.reversed().reversed(), w);
    }
}
