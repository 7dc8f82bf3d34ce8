use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// A total function between vertex sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap(Vec<usize>);

impl VertexMap {
    pub fn new(assignment: Vec<usize>) -> Self {
        VertexMap(assignment)
    }

    pub fn identity(n: usize) -> Self {
        VertexMap((0..n).collect())
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap(self.0.iter().map(|&v| other.apply(v)).collect())
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// A vertex map checked to be edge preserving: every edge and every loop of the
/// source lands on an edge or a loop of the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Homomorphism(Vec<usize>);

impl Homomorphism {
    pub fn new(source: &Graph, target: &Graph, assignment: Vec<usize>) -> Result<Self, GraphError> {
        check_homomorphism(source, target, &assignment)?;
        Ok(Homomorphism(assignment))
    }

    /// Skips validation; callers must already know the map is a homomorphism.
    pub(crate) fn new_unchecked(assignment: Vec<usize>) -> Self {
        Homomorphism(assignment)
    }

    pub fn constant(source: &Graph, target: &Graph, value: usize) -> Result<Self, GraphError> {
        Homomorphism::new(source, target, vec![value; source.n()])
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn to_vertex_map(&self) -> VertexMap {
        VertexMap(self.0.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

pub(crate) fn check_homomorphism(source: &Graph, target: &Graph, f: &[usize]) -> Result<(), GraphError> {
    if f.len() != source.n() {
        return Err(GraphError::MapLength { got: f.len(), expected: source.n() });
    }
    for &x in f {
        target.check_vertex(x)?;
    }
    for (u, v) in source.edges() {
        if !target.adjacent(f[u], f[v]) {
            return Err(GraphError::NotHomomorphism(u, v, f[u], f[v]));
        }
    }
    for v in source.loop_vertices() {
        if !target.has_loop(f[v]) {
            return Err(GraphError::NotHomomorphism(v, v, f[v], f[v]));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_path};

    #[test]
    fn looped_source_vertices_need_looped_images() {
        let p = make_path(1, true);
        let bare = make_cycle(4, false);
        assert!(Homomorphism::new(&p, &bare, vec![0, 1]).is_err());
        assert!(Homomorphism::new(&p, &make_cycle(4, true), vec![0, 1]).is_ok());
    }

    #[test]
    fn rotation_of_a_cycle_is_a_homomorphism_and_a_jump_is_not() {
        let c = make_cycle(5, true);
        assert!(Homomorphism::new(&c, &c, vec![1, 2, 3, 4, 0]).is_ok());
        let err = Homomorphism::new(&c, &c, vec![0, 2, 2, 3, 4]).unwrap_err();
        assert_eq!(err, GraphError::NotHomomorphism(0, 1, 0, 2));
    }
}
