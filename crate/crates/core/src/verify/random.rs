//! Small random graphs for the randomized suites. All are reflexive.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{ClosedWalk, Graph, GraphBuilder};

/// A random tree on `n` vertices plus each remaining pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut b = GraphBuilder::new(0);
    for v in 0..n {
        b.add_vertex(true);
        if v > 0 {
            let u = rng.gen_range(0..v);
            b.add_edge(u, v);
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// The cycle `0..k` with a random number (from `pendants`) of tree vertices hung off it and, when
/// `hung` is set, one more cycle of that length sharing a single vertex.
/// Neither attachment shortens distances along the base cycle.
pub fn cycle_with_attachments<R: Rng>(rng: &mut R, k: usize, pendants: std::ops::Range<usize>, hung: Option<usize>) -> Graph {
    let mut b = GraphBuilder::new(0);
    for _ in 0..k {
        b.add_vertex(true);
    }
    for v in 0..k {
        b.add_edge(v, (v + 1) % k);
    }
    if let Some(m) = hung {
        let at = rng.gen_range(0..b.n());
        let first = b.n();
        for _ in 1..m {
            b.add_vertex(true);
        }
        let ring: Vec<usize> = std::iter::once(at).chain(first..first + m - 1).collect();
        for i in 0..m {
            b.add_edge(ring[i], ring[(i + 1) % m]);
        }
    }
    for _ in 0..rng.gen_range(pendants) {
        let u = rng.gen_range(0..b.n());
        let v = b.add_vertex(true);
        b.add_edge(u, v);
    }
    b.build()
}

/// The base cycle of [`cycle_with_attachments`], rotated to start anywhere.
pub fn base_cycle<R: Rng>(rng: &mut R, k: usize) -> ClosedWalk {
    let r = rng.gen_range(0..k);
    let mut vs: Vec<usize> = (0..k).map(|i| (i + r) % k).collect();
    if rng.gen_bool(0.5) {
        vs[1..].reverse();
    }
    ClosedWalk::new(vs)
}

pub fn pick<T: Clone, R: Rng>(rng: &mut R, xs: &[T]) -> Option<T> {
    xs.choose(rng).cloned()
}
