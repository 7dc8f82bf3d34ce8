//! Oriented chain complex of the clique complex, truncated at dimension 2.
//!
//! Only nondegenerate cells are modelled: 1-cells are non-loop edges `[u,v]`
//! with `u < v`, 2-cells are triangles `[a,b,c]` with `a < b < c`. Degenerate
//! simplices only make loops null and `[v,u] = -[u,v]`, and both facts are
//! built into how walks become chains.

use crate::graph::{ClosedWalk, Graph, GraphError};

/// Column-sparse integer matrix; each column is sorted by row index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        debug_assert!(cols.iter().flatten().all(|&(r, _)| r < rows));
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols.len()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                out[i][j] = x;
            }
        }
        out
    }

    /// Whether `self * other` is the zero matrix.
    pub fn product_is_zero(&self, other: &SparseMatrix) -> bool {
        assert_eq!(self.cols(), other.rows(), "dimension mismatch");
        let mut acc = vec![0i128; self.rows];
        for col in &other.cols {
            let mut touched = Vec::new();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k] {
                    acc[i] += a as i128 * b as i128;
                    touched.push(i);
                }
            }
            let nonzero = touched.iter().any(|&i| acc[i] != 0);
            for &i in &touched {
                acc[i] = 0;
            }
            if nonzero {
                return false;
            }
        }
        true
    }
}

/// Integer coefficients on the oriented edges of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector(pub Vec<i64>);

impl ChainVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    // edges with smaller endpoint u occupy edges[first_edge[u]..first_edge[u + 1]]
    first_edge: Vec<usize>,
    triangles: Vec<[usize; 3]>,
    d1: SparseMatrix,
    d2: SparseMatrix,
}

pub fn build_chain_complex(g: &Graph) -> ChainComplex {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut first_edge = vec![0; n + 1];
    for &(u, _) in &edges {
        first_edge[u + 1] += 1;
    }
    for u in 0..n {
        first_edge[u + 1] += first_edge[u];
    }

    let mut triangles = Vec::new();
    for &(a, b) in &edges {
        let (na, nb) = (g.neighbors(a), g.neighbors(b));
        let (mut i, mut j) = (na.partition_point(|&x| x <= b), nb.partition_point(|&x| x <= b));
        while i < na.len() && j < nb.len() {
            match na[i].cmp(&nb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    triangles.push([a, b, na[i]]);
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    let d1 = SparseMatrix::new(n, edges.iter().map(|&(u, v)| vec![(u, -1), (v, 1)]).collect());
    let mut cx = ChainComplex { n_vertices: n, edges, first_edge, triangles, d1, d2: SparseMatrix::new(0, vec![]) };
    let d2_cols = cx
        .triangles
        .iter()
        .map(|&[a, b, c]| {
            let mut col = vec![(cx.edge_id(b, c).unwrap(), 1), (cx.edge_id(a, c).unwrap(), -1), (cx.edge_id(a, b).unwrap(), 1)];
            col.sort_unstable();
            col
        })
        .collect();
    cx.d2 = SparseMatrix::new(cx.edges.len(), d2_cols);
    cx
}

impl ChainComplex {
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Oriented 1-cells `(u, v)`, `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Oriented 2-cells `[a, b, c]`, `a < b < c`, in lexicographic order.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn d1(&self) -> &SparseMatrix {
        &self.d1
    }

    pub fn d2(&self) -> &SparseMatrix {
        &self.d2
    }

    /// Index of the 1-cell on `{u, v}`, in either order.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        if a == b || b >= self.n_vertices {
            return None;
        }
        let (lo, hi) = (self.first_edge[a], self.first_edge[a + 1]);
        self.edges[lo..hi].binary_search_by_key(&b, |e| e.1).ok().map(|k| lo + k)
    }

    /// Signed incidence chain of a walk. Loop steps contribute nothing.
    pub fn chain_of_walk(&self, g: &Graph, w: &ClosedWalk) -> Result<ChainVector, GraphError> {
        w.validate(g)?;
        let mut chain = vec![0i64; self.edges.len()];
        for (a, b) in w.steps() {
            if a == b {
                continue;
            }
            let e = self.edge_id(a, b).ok_or_else(|| GraphError::InvalidWalk(format!("{a} -> {b} is not an edge")))?;
            chain[e] += if a < b { 1 } else { -1 };
        }
        Ok(ChainVector(chain))
    }

    /// Boundary of the 2-cell `t` as a closed walk `a -> b -> c -> a`.
    pub fn triangle_walk(&self, t: usize) -> ClosedWalk {
        let [a, b, c] = self.triangles[t];
        ClosedWalk::new(vec![a, b, c])
    }

    pub fn is_closed(&self, chain: &ChainVector) -> bool {
        let mut acc = vec![0i64; self.n_vertices];
        for (e, &x) in chain.0.iter().enumerate() {
            if x != 0 {
                let (u, v) = self.edges[e];
                acc[u] -= x;
                acc[v] += x;
            }
        }
        acc.iter().all(|&x| x == 0)
    }
}
