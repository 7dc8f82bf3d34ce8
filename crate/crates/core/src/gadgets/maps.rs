//! The winding maps `β`, `α_k` from the long cycle `B = C_{sg}` onto `Z = C_g`,
//! and the Hom-graph paths joining them.

use std::collections::HashMap;

use super::GadgetError;
use crate::config::Budget;
use crate::graph::{make_cycle, make_path, tensor_product, Graph, Homomorphism};
use crate::homsearch::hom_neighbors_where;

pub(crate) fn check_params(s: usize, g: usize) -> Result<(), GadgetError> {
    if s < 2 || g < 4 {
        return Err(GadgetError::BadParameters { s, g });
    }
    Ok(())
}

/// `β(i·s + j) = i`: constant on consecutive blocks of `s`, winding once around `Z`.
pub fn beta_map(s: usize, g: usize) -> Result<Homomorphism, GadgetError> {
    check_params(s, g)?;
    let b = make_cycle(s * g, true);
    let z = make_cycle(g, true);
    Ok(Homomorphism::new(&b, &z, (0..s * g).map(|x| x / s).collect())?)
}

/// `α_k(i·g + j) = j` on block `k`, and `0` elsewhere.
pub fn alpha_map(k: usize, s: usize, g: usize) -> Result<Homomorphism, GadgetError> {
    check_params(s, g)?;
    if k >= s {
        return Err(GadgetError::BadParameters { s, g });
    }
    let b = make_cycle(s * g, true);
    let z = make_cycle(g, true);
    Ok(Homomorphism::new(&b, &z, (0..s * g).map(|x| if x / g == k { x % g } else { 0 }).collect())?)
}

/// `ℓ` together with, for each `i`, the slices `φ_i|t×B` for `t = 0..=ℓ`:
/// slice 0 is `α_i`, slice `ℓ` is `β`, and every slice fixes vertex 0 at 0.
#[derive(Clone, Debug)]
pub struct EllWitness {
    pub s: usize,
    pub g: usize,
    pub ell: usize,
    /// shortest Hom-graph distance from each `α_i` to `β`
    pub distances: Vec<usize>,
    pub slices: Vec<Vec<Homomorphism>>,
}

impl EllWitness {
    /// `φ_i` as a map on `P_ℓ × B`, vertex `(t, x)` at index `t·sg + x`.
    pub fn product_map(&self, i: usize) -> Vec<usize> {
        self.slices[i].iter().flat_map(|f| f.as_slice().iter().copied()).collect()
    }
}

/// Shortest Hom-graph paths in `Hom(B, Z)` with vertex 0 pinned to 0, from
/// each `α_i` to `β` (bidirectional breadth-first search). Paths are padded
/// with `β` to a common length `ℓ ≥ 2`, and the resulting maps on `P_ℓ × B`
/// are validated.
pub fn find_ell(s: usize, g: usize) -> Result<EllWitness, GadgetError> {
    check_params(s, g)?;
    let b = make_cycle(s * g, true);
    let z = make_cycle(g, true);
    let beta = beta_map(s, g)?;
    let alphas: Vec<Homomorphism> = (0..s).map(|k| alpha_map(k, s, g)).collect::<Result<_, _>>()?;

    let mut paths = Vec::with_capacity(s);
    for alpha in &alphas {
        paths.push(shortest_path(&b, &z, alpha, &beta)?.ok_or(GadgetError::NoPath { s, g })?);
    }
    let distances: Vec<usize> = paths.iter().map(|p| p.len() - 1).collect();
    let ell = distances.iter().copied().max().unwrap_or(0).max(2);
    let slices: Vec<Vec<Homomorphism>> = paths
        .into_iter()
        .map(|mut p| {
            p.resize(ell + 1, beta.clone());
            p
        })
        .collect();
    let w = EllWitness { s, g, ell, distances, slices };
    validate_ell(&w, &b, &z, &beta, &alphas)?;
    Ok(w)
}

/// parent and depth of every map reached from one side
type Parents = HashMap<Homomorphism, (Option<Homomorphism>, usize)>;

/// Level-synchronous bidirectional search, always growing the smaller side.
fn shortest_path(b: &Graph, z: &Graph, from: &Homomorphism, to: &Homomorphism) -> Result<Option<Vec<Homomorphism>>, GadgetError> {
    if from == to {
        return Ok(Some(vec![from.clone()]));
    }
    let budget = Budget::default();
    let pinned = |v: usize, x: usize| v != 0 || x == 0;
    let mut seen: [Parents; 2] = [HashMap::from([(from.clone(), (None, 0))]), HashMap::from([(to.clone(), (None, 0))])];
    let mut frontier: [Vec<Homomorphism>; 2] = [vec![from.clone()], vec![to.clone()]];
    while !frontier[0].is_empty() && !frontier[1].is_empty() {
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let mut next = Vec::new();
        // every meeting point of this level has the same depth on this side;
        // keep the one closest to the other side
        let mut meet: Option<(usize, Homomorphism)> = None;
        for cur in std::mem::take(&mut frontier[side]) {
            let depth = seen[side][&cur].1 + 1;
            for nb in hom_neighbors_where(b, z, &cur, &pinned, &budget)? {
                if seen[side].contains_key(&nb) {
                    continue;
                }
                seen[side].insert(nb.clone(), (Some(cur.clone()), depth));
                if let Some(&(_, d)) = seen[1 - side].get(&nb) {
                    if meet.as_ref().is_none_or(|(best, _)| d < *best) {
                        meet = Some((d, nb.clone()));
                    }
                }
                next.push(nb);
            }
        }
        if let Some((_, m)) = meet {
            let walk = |parents: &Parents| {
                let mut out = vec![m.clone()];
                while let Some((Some(p), _)) = parents.get(out.last().unwrap()) {
                    out.push(p.clone());
                }
                out
            };
            let mut path = walk(&seen[0]);
            path.reverse();
            path.extend(walk(&seen[1]).into_iter().skip(1));
            return Ok(Some(path));
        }
        frontier[side] = next;
    }
    Ok(None)
}

fn validate_ell(w: &EllWitness, b: &Graph, z: &Graph, beta: &Homomorphism, alphas: &[Homomorphism]) -> Result<(), GadgetError> {
    let prod = tensor_product(&make_path(w.ell, true), b);
    let n = b.n();
    for (i, alpha) in alphas.iter().enumerate() {
        let phi = Homomorphism::new(&prod, z, w.product_map(i))?;
        let ok = phi.as_slice()[..n] == *alpha.as_slice()
            && phi.as_slice()[w.ell * n..] == *beta.as_slice()
            && (0..=w.ell).all(|t| phi.apply(t * n) == 0);
        if !ok {
            return Err(GadgetError::Invariant(format!("path map {i} for (s, g) = ({}, {}) fails its boundary conditions", w.s, w.g)));
        }
    }
    Ok(())
}
