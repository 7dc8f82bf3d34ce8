//! Homomorphism search, the Hom-graph, and cycle moves in the target.

mod csp;
mod homgraph;
mod pi;

pub(crate) use homgraph::hom_neighbors_where;
pub use homgraph::{hom_adjacent, hom_neighbors, mix_bruteforce, reconfig_path, single_vertex_walk, HomGraphReport};
pub use pi::{pi_contractible_bounded, pi_neighbors, PiState, PiVerdict};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::config::Budget;
use crate::graph::{Graph, GraphError, Homomorphism};
use csp::{Control, Problem, SampleOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is pinned to two different values")]
    PinConflict(usize),
    #[error("search budget exceeded after {nodes} nodes ({found} maps found)")]
    BudgetExceeded { nodes: u64, found: usize },
    #[error("no homomorphism found within a budget of {0} nodes")]
    UnsatWithinBudget(u64),
}

/// Homomorphisms `G -> H`, either all of them or a sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomSet {
    pub maps: Vec<Homomorphism>,
    /// true when `maps` is exhaustive
    pub complete: bool,
}

fn pin_table(g: &Graph, h: &Graph, pins: &[(usize, usize)]) -> Result<Vec<Option<usize>>, SearchError> {
    let mut table = vec![None; g.n()];
    for &(v, x) in pins {
        g.check_vertex(v)?;
        h.check_vertex(x)?;
        match table[v] {
            Some(y) if y != x => return Err(SearchError::PinConflict(v)),
            _ => table[v] = Some(x),
        }
    }
    Ok(table)
}

fn pinned_problem<'a>(g: &'a Graph, h: &Graph, pins: &[(usize, usize)]) -> Result<Problem<'a>, SearchError> {
    let table = pin_table(g, h, pins)?;
    Ok(Problem::new(g, h, |v, x| table[v].is_none_or(|y| y == x)))
}

/// Every homomorphism respecting `pins`, in lexicographic order.
pub fn enumerate_homs(g: &Graph, h: &Graph, pins: &[(usize, usize)], budget: &Budget) -> Result<HomSet, SearchError> {
    let p = pinned_problem(g, h, pins)?;
    let ctl = Control::new(budget.max_nodes, budget.max_maps);
    let (maps, complete) = csp::enumerate(&p, &ctl);
    if !complete {
        return Err(SearchError::BudgetExceeded {
            nodes: ctl.nodes.load(std::sync::atomic::Ordering::Relaxed),
            found: maps.len(),
        });
    }
    Ok(HomSet { maps: maps.into_iter().map(Homomorphism::new_unchecked).collect(), complete: true })
}

/// Number of homomorphisms respecting `pins`; only the node budget applies.
pub fn count_homs(g: &Graph, h: &Graph, pins: &[(usize, usize)], budget: &Budget) -> Result<u64, SearchError> {
    let p = pinned_problem(g, h, pins)?;
    let ctl = Control::new(budget.max_nodes, usize::MAX);
    let (count, complete) = csp::count(&p, &ctl);
    if !complete {
        return Err(SearchError::BudgetExceeded {
            nodes: ctl.nodes.load(std::sync::atomic::Ordering::Relaxed),
            found: count as usize,
        });
    }
    Ok(count)
}

/// `k` homomorphisms from independent randomised searches. Each search gets
/// the full node budget. If a search runs dry after some maps were found,
/// the set is returned short.
pub fn sample_homs(
    g: &Graph,
    h: &Graph,
    pins: &[(usize, usize)],
    k: usize,
    seed: u64,
    budget: &Budget,
) -> Result<HomSet, SearchError> {
    let p = pinned_problem(g, h, pins)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maps = Vec::with_capacity(k);
    for _ in 0..k {
        match csp::sample_one(&p, &mut rng, budget.max_nodes) {
            SampleOutcome::Found(m) => maps.push(Homomorphism::new(g, h, m)?),
            SampleOutcome::Exhausted if maps.is_empty() => return Ok(HomSet { maps, complete: true }),
            _ if maps.is_empty() => return Err(SearchError::UnsatWithinBudget(budget.max_nodes)),
            _ => break,
        }
    }
    Ok(HomSet { maps, complete: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_path};

    #[test]
    fn looped_point_into_h_gives_one_map_per_vertex() {
        let k1 = make_cycle(1, true);
        let c5 = make_cycle(5, true);
        let s = enumerate_homs(&k1, &c5, &[], &Budget::default()).unwrap();
        assert_eq!(s.maps.len(), 5);
        assert!(s.complete);
    }

    #[test]
    fn reflexive_edge_into_reflexive_square() {
        let p1 = make_path(1, true);
        let c4 = make_cycle(4, true);
        let all = enumerate_homs(&p1, &c4, &[], &Budget::default()).unwrap();
        assert_eq!(all.maps.len(), 12);
        let mut sorted = all.maps.clone();
        sorted.sort();
        assert_eq!(sorted, all.maps);
        let pinned = enumerate_homs(&p1, &c4, &[(0, 0)], &Budget::default()).unwrap();
        let filtered: Vec<_> = all.maps.iter().filter(|m| m.apply(0) == 0).cloned().collect();
        assert_eq!(pinned.maps, filtered);
        assert_eq!(count_homs(&p1, &c4, &[], &Budget::default()).unwrap(), 12);
    }

    #[test]
    fn pin_conflicts_and_budget() {
        let c4 = make_cycle(4, true);
        assert_eq!(
            enumerate_homs(&c4, &c4, &[(0, 1), (0, 2)], &Budget::default()).unwrap_err(),
            SearchError::PinConflict(0)
        );
        let tiny = Budget::default().with_nodes(3);
        assert!(matches!(enumerate_homs(&c4, &c4, &[], &tiny), Err(SearchError::BudgetExceeded { .. })));
        let few = Budget::default().with_maps(5);
        assert!(matches!(enumerate_homs(&c4, &c4, &[], &few), Err(SearchError::BudgetExceeded { .. })));
    }

    #[test]
    fn sampling_returns_valid_maps_and_respects_full_pins() {
        let c4 = make_cycle(4, true);
        let s = sample_homs(&c4, &c4, &[], 50, 3, &Budget::default()).unwrap();
        assert_eq!(s.maps.len(), 50);
        assert!(!s.complete);
        let pins: Vec<(usize, usize)> = (0..4).map(|v| (v, v)).collect();
        let s = sample_homs(&c4, &c4, &pins, 5, 9, &Budget::default()).unwrap();
        assert!(s.maps.iter().all(|m| m.as_slice() == [0, 1, 2, 3]));
    }

    #[test]
    fn sampling_is_reproducible_per_seed() {
        let g = make_cycle(6, true);
        let h = make_cycle(4, true);
        let a = sample_homs(&g, &h, &[], 20, 11, &Budget::default()).unwrap();
        let b = sample_homs(&g, &h, &[], 20, 11, &Budget::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unsatisfiable_pins_give_nothing() {
        let c4 = make_cycle(4, true);
        // 0 and 1 adjacent in the source but 0 and 2 are not adjacent in the target
        let s = enumerate_homs(&c4, &c4, &[(0, 0), (1, 2)], &Budget::default()).unwrap();
        assert!(s.maps.is_empty());
        let s = sample_homs(&c4, &c4, &[(0, 0), (1, 2)], 3, 0, &Budget::default()).unwrap();
        assert!(s.maps.is_empty() && s.complete);
    }
}
