//! Finite simple graphs with optional loops.
//!
//! Vertices are dense indices `0..n`. Loops are kept apart from the edge set:
//! an edge always joins two distinct vertices, and a loop is a per-vertex flag.
//! Every labelled object built on top of a graph (cycles, gadget registries)
//! lives in a side table and refers to vertices by index.

mod construct;
mod dot;
mod io;
mod map;
mod metrics;
mod walk;

pub use construct::{
    add_cone, disjoint_union, identify_vertices, induced_subgraph, make_complete, make_cycle,
    make_path, tensor_product, IdentificationResult,
};
pub use dot::export_dot;
pub use io::{GraphJson, MapJson};
pub use map::{Homomorphism, VertexMap};
pub use metrics::{components, distance, distances_from, girth_cycle, is_connected, is_triangle_free};
pub use walk::ClosedWalk;

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("identification classes overlap at vertex {0}")]
    OverlappingClasses(usize),
    #[error("graph is acyclic")]
    Acyclic,
    #[error("vertices {0} and {1} are not connected")]
    Unreachable(usize, usize),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("cone base must have distinct vertices; {0} repeats")]
    RepeatedVertex(usize),
    #[error("map has length {got}, expected {expected}")]
    MapLength { got: usize, expected: usize },
    #[error("map sends edge {{{0},{1}}} to non-adjacent pair {{{2},{3}}}")]
    NotHomomorphism(usize, usize, usize, usize),
}

/// An undirected graph whose vertices may carry loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    name: Option<String>,
    adj: Vec<Vec<usize>>,
    loops: Vec<bool>,
    edge_count: usize,
}

impl Graph {
    /// The graph with `n` vertices and nothing else.
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    /// Builds a graph from vertex pairs. A pair `(v, v)` is read as a loop.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in pairs {
            b.try_add_pair(u, v)?;
        }
        Ok(b.build())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges between distinct vertices.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    /// Sorted neighbours of `v`, never including `v` itself.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Adjacency between distinct vertices.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// `u ~ v` in the homomorphism sense: an edge, or a loop when `u == v`.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.loops[u]
        } else {
            self.has_edge(u, v)
        }
    }

    /// All edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn loop_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops.iter().enumerate().filter(|(_, &l)| l).map(|(v, _)| v)
    }

    /// Every vertex carries a loop. The empty graph counts as reflexive.
    pub fn is_reflexive(&self) -> bool {
        self.loops.iter().all(|&l| l)
    }

    pub fn is_irreflexive(&self) -> bool {
        self.loops.iter().all(|&l| !l)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Copy of this graph with every vertex looped.
    pub fn reflexive_closure(&self) -> Graph {
        let mut g = self.clone();
        g.loops.iter_mut().for_each(|l| *l = true);
        g
    }

    pub(crate) fn builder_from(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new(self.n());
        for (u, v) in self.edges() {
            b.add_edge(u, v);
        }
        for v in self.loop_vertices() {
            b.add_loop(v);
        }
        b
    }
}

/// Accumulates edges and loops with set semantics, then freezes into a [`Graph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    loops: Vec<bool>,
    name: Option<String>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { n, edges: BTreeSet::new(), loops: vec![false; n], name: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self, looped: bool) -> usize {
        self.loops.push(looped);
        self.n += 1;
        self.n - 1
    }

    /// Panics on out-of-range endpoints; use [`GraphBuilder::try_add_pair`] for input data.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        if u == v {
            self.loops[u] = true;
        } else {
            self.edges.insert((u.min(v), u.max(v)));
        }
    }

    pub fn add_loop(&mut self, v: usize) {
        self.loops[v] = true;
    }

    pub fn try_add_pair(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn build(self) -> Graph {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for ns in &mut adj {
            ns.sort_unstable();
        }
        Graph { name: self.name, adj, loops: self.loops, edge_count: self.edges.len() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_with_equal_endpoints_become_loops() {
        let g = Graph::from_edges(3, [(0, 1), (1, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_loop(1));
        assert!(!g.has_loop(0));
        assert!(g.adjacent(1, 1));
        assert!(!g.adjacent(0, 0));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn out_of_range_endpoint_is_rejected() {
        let err = Graph::from_edges(2, [(0, 2)]).unwrap_err();
        assert_eq!(err, GraphError::VertexOutOfRange { vertex: 2, n: 2 });
    }

    #[test]
    fn empty_graph_is_reflexive_and_irreflexive() {
        let g = Graph::empty(0);
        assert!(g.is_reflexive());
        assert!(g.is_irreflexive());
    }
}
