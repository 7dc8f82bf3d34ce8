//! Moves on closed walks of a target graph, and a bounded search for contractions.
//!
//! A walk `[x0, ..., xl]` closes back to `x0`. The moves are: duplicate or
//! merge equal consecutive vertices; replace `x_i` (`0 < i < l`) when
//! `x_{i-1} = x_{i+1}`; and drop the basepoint `x0` when `x1` equals the last
//! vertex, which leaves the walk `x1 ... x_{l-1}` based at `x1` (or add one).

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::graph::{ClosedWalk, Graph};

/// A closed walk in the target together with its basepoint (the first vertex).
pub type PiState = ClosedWalk;

fn closed_neighbourhood(h: &Graph, x: usize) -> impl Iterator<Item = usize> + '_ {
    h.neighbors(x).iter().copied().chain(h.has_loop(x).then_some(x))
}

/// Every state one move away from `x`, sorted and without duplicates.
pub fn pi_neighbors(x: &PiState, h: &Graph) -> Vec<PiState> {
    let v = x.vertices();
    let len = v.len();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();

    // duplicate a vertex
    for i in 0..len {
        if h.has_loop(v[i]) {
            let mut y = v.to_vec();
            y.insert(i, v[i]);
            out.insert(y);
        }
    }
    // merge a repeated vertex, keeping the basepoint
    for i in 0..len.saturating_sub(1) {
        if v[i] == v[i + 1] {
            let mut y = v.to_vec();
            y.remove(i + 1);
            out.insert(y);
        }
    }
    if len > 1 && v[len - 1] == v[0] {
        out.insert(v[..len - 1].to_vec());
    }
    // replace a vertex between two equal ones
    for i in 1..len.saturating_sub(1) {
        if v[i - 1] == v[i + 1] {
            for c in closed_neighbourhood(h, v[i - 1]) {
                if c != v[i] {
                    let mut y = v.to_vec();
                    y[i] = c;
                    out.insert(y);
                }
            }
        }
    }
    // drop the basepoint
    if len >= 2 && v[1] == v[len - 1] {
        out.insert(if len == 2 { vec![v[1]] } else { v[1..len - 1].to_vec() });
    }
    // add a basepoint
    for c in closed_neighbourhood(h, v[0]) {
        let mut y = vec![c];
        y.extend_from_slice(v);
        y.push(v[0]);
        out.insert(y);
        if len == 1 {
            out.insert(vec![c, v[0]]);
        }
    }

    out.remove(v);
    out.into_iter().map(ClosedWalk::new).filter(|w| w.validate(h).is_ok()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PiVerdict {
    /// A constant walk was reached after this many moves.
    Contractible { moves: usize },
    /// The search stopped without reaching a constant walk.
    NotWithinBudget { explored: usize },
}

/// Breadth-first search over states of length at most `max_len`, expanding at
/// most `max_states` of them. Only a positive answer is conclusive.
pub fn pi_contractible_bounded(x: &PiState, h: &Graph, max_len: usize, max_states: usize) -> PiVerdict {
    if x.is_constant() {
        return PiVerdict::Contractible { moves: 0 };
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::from([x.vertices().to_vec()]);
    let mut queue = VecDeque::from([(x.clone(), 0usize)]);
    let mut explored = 0;
    while let Some((cur, d)) = queue.pop_front() {
        if explored >= max_states {
            break;
        }
        explored += 1;
        for y in pi_neighbors(&cur, h) {
            if y.len() > max_len || !seen.insert(y.vertices().to_vec()) {
                continue;
            }
            if y.is_constant() {
                return PiVerdict::Contractible { moves: d + 1 };
            }
            queue.push_back((y, d + 1));
        }
    }
    PiVerdict::NotWithinBudget { explored }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_path};

    #[test]
    fn duplication_is_a_move() {
        let c4 = make_cycle(4, true);
        let n = pi_neighbors(&ClosedWalk::new(vec![1, 1]), &c4);
        assert!(n.contains(&ClosedWalk::new(vec![1, 1, 1])));
        assert!(n.contains(&ClosedWalk::new(vec![1])));
    }

    #[test]
    fn replacement_between_equal_vertices() {
        let c4 = make_cycle(4, true);
        let n = pi_neighbors(&ClosedWalk::new(vec![0, 1, 0]), &c4);
        assert!(n.contains(&ClosedWalk::new(vec![0, 3, 0])));
        assert!(n.contains(&ClosedWalk::new(vec![0, 0, 0])));
    }

    #[test]
    fn square_has_no_replacement_move() {
        let c4 = make_cycle(4, true);
        let x = ClosedWalk::new(vec![0, 1, 2, 3]);
        for y in pi_neighbors(&x, &c4) {
            // every neighbour keeps or adds vertices; nothing substitutes inside
            let same_len_changed = y.len() == 4 && y != x;
            assert!(!same_len_changed, "{y:?}");
        }
    }

    #[test]
    fn contractions() {
        let c4 = make_cycle(4, true);
        assert_eq!(pi_contractible_bounded(&ClosedWalk::new(vec![2]), &c4, 4, 10), PiVerdict::Contractible { moves: 0 });
        let back = ClosedWalk::new(vec![0, 1]);
        assert!(matches!(pi_contractible_bounded(&back, &c4, 4, 1000), PiVerdict::Contractible { .. }));
        let square = ClosedWalk::new(vec![0, 1, 2, 3]);
        assert!(matches!(pi_contractible_bounded(&square, &c4, 7, 20_000), PiVerdict::NotWithinBudget { .. }));
        let p = make_path(4, true);
        let there_and_back = ClosedWalk::new(vec![0, 1, 2, 3, 2, 1]);
        assert!(matches!(pi_contractible_bounded(&there_and_back, &p, 7, 20_000), PiVerdict::Contractible { .. }));
    }
}
