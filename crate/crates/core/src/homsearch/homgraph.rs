//! The Hom-graph: homomorphisms as vertices, adjacent when they agree along edges.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::csp::{self, Control, Problem};
use super::{enumerate_homs, SearchError};
use crate::config::Budget;
use crate::graph::{Graph, Homomorphism};
use crate::unionfind::UnionFind;

/// `φ ~ ψ`: for every edge `uv` of `G` (and every loop `uu`), `φ(u)ψ(v)` and
/// `φ(v)ψ(u)` are edges or loops of `H`.
pub fn hom_adjacent(g: &Graph, h: &Graph, phi: &Homomorphism, psi: &Homomorphism) -> bool {
    g.edges().all(|(u, v)| h.adjacent(phi.apply(u), psi.apply(v)) && h.adjacent(phi.apply(v), psi.apply(u)))
        && g.loop_vertices().all(|u| h.adjacent(phi.apply(u), psi.apply(u)))
}

/// All Hom-graph neighbours of `φ`, including `φ` itself, in lexicographic order.
///
/// A neighbour `ψ` must send `v` into the common neighbourhood of `φ(N(v))`
/// (with `v` itself counted when looped), so this is a pinned homomorphism search.
pub fn hom_neighbors(g: &Graph, h: &Graph, phi: &Homomorphism, budget: &Budget) -> Result<Vec<Homomorphism>, SearchError> {
    hom_neighbors_where(g, h, phi, &|_, _| true, budget)
}

/// As [`hom_neighbors`], keeping only neighbours with `allowed(v, ψ(v))` everywhere.
pub(crate) fn hom_neighbors_where(
    g: &Graph,
    h: &Graph,
    phi: &Homomorphism,
    allowed: &dyn Fn(usize, usize) -> bool,
    budget: &Budget,
) -> Result<Vec<Homomorphism>, SearchError> {
    let p = neighbour_problem(g, h, phi, allowed);
    let ctl = Control::new(budget.max_nodes, budget.max_maps);
    let (maps, complete) = csp::enumerate(&p, &ctl);
    if !complete {
        return Err(SearchError::BudgetExceeded {
            nodes: ctl.nodes.load(std::sync::atomic::Ordering::Relaxed),
            found: maps.len(),
        });
    }
    Ok(maps.into_iter().map(Homomorphism::new_unchecked).collect())
}

fn neighbour_problem<'a>(g: &'a Graph, h: &Graph, phi: &Homomorphism, allowed: &dyn Fn(usize, usize) -> bool) -> Problem<'a> {
    Problem::new(g, h, |v, x| {
        allowed(v, x)
            && g.neighbors(v).iter().all(|&u| h.adjacent(phi.apply(u), x)) && (!g.has_loop(v) || h.adjacent(phi.apply(v), x))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomGraphReport {
    pub vertex_count: usize,
    pub component_count: usize,
    /// component of `maps[i]`; components are numbered by their smallest map
    pub component_of: Vec<usize>,
    /// smallest map of each component
    pub representatives: Vec<Homomorphism>,
    #[serde(skip)]
    pub maps: Vec<Homomorphism>,
}

impl HomGraphReport {
    pub fn connected(&self) -> bool {
        self.component_count <= 1
    }

    pub fn index_of(&self, phi: &Homomorphism) -> Option<usize> {
        self.maps.binary_search(phi).ok()
    }

    pub fn component_of_map(&self, phi: &Homomorphism) -> Option<usize> {
        self.index_of(phi).map(|i| self.component_of[i])
    }

    /// Components containing a constant map.
    pub fn constant_components(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.maps.iter().zip(&self.component_of).filter(|(m, _)| m.is_constant()).map(|(_, &c)| c).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.component_count];
        for &c in &self.component_of {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Components of the Hom-graph by exhaustive enumeration. Edges are generated
/// per map by a neighbour search and never stored.
pub fn mix_bruteforce(g: &Graph, h: &Graph, budget: &Budget) -> Result<HomGraphReport, SearchError> {
    let maps = enumerate_homs(g, h, &[], budget)?.maps;
    let mut uf = UnionFind::new(maps.len());
    for (i, phi) in maps.iter().enumerate() {
        for psi in hom_neighbors(g, h, phi, budget)? {
            let j = maps.binary_search(&psi).expect("neighbour is a homomorphism");
            uf.union(i, j);
        }
    }
    let (component_of, component_count) = uf.labels();
    let mut representatives: Vec<Option<Homomorphism>> = vec![None; component_count];
    for (m, &c) in maps.iter().zip(&component_of) {
        representatives[c].get_or_insert_with(|| m.clone());
    }
    Ok(HomGraphReport {
        vertex_count: maps.len(),
        component_count,
        component_of,
        representatives: representatives.into_iter().map(Option::unwrap).collect(),
        maps,
    })
}

/// Shortest walk in the Hom-graph from `φ` to `ψ`, listing the maps after `φ`.
/// `Ok(None)` means the component of `φ` was exhausted without meeting `ψ`.
pub fn reconfig_path(
    g: &Graph,
    h: &Graph,
    phi: &Homomorphism,
    psi: &Homomorphism,
    budget: &Budget,
) -> Result<Option<Vec<Homomorphism>>, SearchError> {
    let phi = Homomorphism::new(g, h, phi.as_slice().to_vec())?;
    let psi = Homomorphism::new(g, h, psi.as_slice().to_vec())?;
    if phi == psi {
        return Ok(Some(Vec::new()));
    }
    let mut parent: HashMap<Homomorphism, Option<Homomorphism>> = HashMap::from([(phi.clone(), None)]);
    let mut queue = VecDeque::from([phi]);
    while let Some(cur) = queue.pop_front() {
        for next in hom_neighbors(g, h, &cur, budget)? {
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some(cur.clone()));
            if next == psi {
                let mut path = vec![next];
                while let Some(Some(prev)) = parent.get(path.last().unwrap()) {
                    path.push(prev.clone());
                }
                path.pop();
                path.reverse();
                return Ok(Some(path));
            }
            if parent.len() > budget.max_maps {
                return Err(SearchError::BudgetExceeded { nodes: 0, found: parent.len() });
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// A random walk in the Hom-graph by single-vertex recolourings: each step
/// picks a vertex and moves it to a random value compatible with its
/// neighbourhood (a Hom-graph edge). Returns the final map.
pub fn single_vertex_walk<R: Rng>(g: &Graph, h: &Graph, phi: &Homomorphism, steps: usize, rng: &mut R) -> Homomorphism {
    let mut cur = phi.as_slice().to_vec();
    if g.n() == 0 {
        return phi.clone();
    }
    let mut options = Vec::new();
    for _ in 0..steps {
        let v = rng.gen_range(0..g.n());
        options.clear();
        options.extend((0..h.n()).filter(|&x| {
            (!g.has_loop(v) || (h.has_loop(x) && h.adjacent(cur[v], x)))
                && g.neighbors(v).iter().all(|&u| h.adjacent(cur[u], x))
        }));
        if let Some(&x) = options.choose(rng) {
            cur[v] = x;
        }
    }
    Homomorphism::new_unchecked(cur)
}
