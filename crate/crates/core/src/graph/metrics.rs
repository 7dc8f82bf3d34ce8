use std::collections::VecDeque;

use super::{ClosedWalk, Graph, GraphError};

/// Component label per vertex (numbered by smallest member) and the component count.
pub fn components(g: &Graph) -> (Vec<usize>, usize) {
    let mut comp = vec![usize::MAX; g.n()];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).1 <= 1
}

/// BFS distances from `s`; `None` for unreachable vertices.
pub fn distances_from(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn distance(g: &Graph, u: usize, v: usize) -> Result<usize, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    distances_from(g, u)[v].ok_or(GraphError::Unreachable(u, v))
}

pub fn is_triangle_free(g: &Graph) -> bool {
    g.edges().all(|(u, v)| {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    })
}

/// Length of a shortest cycle through `s`, or `None`. Loops are ignored.
fn shortest_cycle_through(g: &Graph, s: usize) -> Option<usize> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut best = usize::MAX;
    while let Some(u) = queue.pop_front() {
        if 2 * dist[u] + 1 >= best {
            break;
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if parent[u] != w {
                best = best.min(dist[u] + dist[w] + 1);
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// A shortest cycle of length at least 3.
///
/// The girth is found by BFS from every vertex. The reported cycle starts at
/// the smallest vertex lying on a girth cycle and is the lexicographically
/// smallest such walk from there.
pub fn girth_cycle(g: &Graph) -> Result<ClosedWalk, GraphError> {
    let girth = (0..g.n()).filter_map(|s| shortest_cycle_through(g, s)).min().ok_or(GraphError::Acyclic)?;
    for s in 0..g.n() {
        let dist = distances_from(g, s);
        let mut path = vec![s];
        let mut on_path = vec![false; g.n()];
        on_path[s] = true;
        if extend_cycle(g, girth, &dist, &mut path, &mut on_path) {
            return Ok(ClosedWalk::new(path));
        }
    }
    unreachable!("a cycle of length {girth} was measured but not found")
}

fn extend_cycle(g: &Graph, len: usize, dist: &[Option<usize>], path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
    let s = path[0];
    let u = *path.last().unwrap();
    if path.len() == len {
        return g.has_edge(u, s);
    }
    for &w in g.neighbors(u) {
        // Vertices below s were already ruled out as starting points.
        if on_path[w] || w < s {
            continue;
        }
        // w must still be able to get back to s in the remaining steps
        let remaining = len - path.len();
        if dist[w].is_none_or(|d| d > remaining) {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        if extend_cycle(g, len, dist, path, on_path) {
            return true;
        }
        on_path[w] = false;
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{add_cone, make_cycle, make_path, GraphBuilder};

    #[test]
    fn distance_on_cycle_and_unreachable_pair() {
        let c8 = make_cycle(8, true);
        assert_eq!(distance(&c8, 0, 4).unwrap(), 4);
        let two = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(distance(&two, 0, 2).unwrap_err(), GraphError::Unreachable(0, 2));
    }

    #[test]
    fn triangle_scan() {
        let c4 = make_cycle(4, true);
        assert!(is_triangle_free(&c4));
        let wheel = add_cone(&c4, &ClosedWalk::new(vec![0, 1, 2, 3])).unwrap();
        assert!(!is_triangle_free(&wheel));
    }

    #[test]
    fn girth_of_cycles_trees_and_chords() {
        assert_eq!(girth_cycle(&make_cycle(6, false)).unwrap().vertices(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(girth_cycle(&make_path(5, true)).unwrap_err(), GraphError::Acyclic);
        let mut b = GraphBuilder::new(4);
        for v in 0..4 {
            b.add_edge(v, (v + 1) % 4);
        }
        b.add_edge(1, 3);
        let chorded = b.build();
        let c = girth_cycle(&chorded).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 3]);
    }

    #[test]
    fn girth_cycle_starts_at_smallest_vertex_on_a_girth_cycle() {
        // a 5-cycle on 2..7 with a pendant path from 0
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 2)]).unwrap();
        assert_eq!(girth_cycle(&g).unwrap().vertices(), &[2, 3, 4, 5, 6]);
    }
}
