//! The sum gadget `S_s`: a path of `sg`-cycles whose last slice is folded onto
//! `Z` and whose first slice is pinched into `s` copies of `Z`, each then pushed
//! out along a reflexive `P_1 × Z`.

use serde::Serialize;

use super::maps::{check_params, find_ell, EllWitness};
use super::GadgetError;
use crate::graph::{
    identify_vertices, induced_subgraph, is_connected, make_cycle, make_path, tensor_product, ClosedWalk,
    Graph, Homomorphism,
};
use crate::homology::{h1_presentation, is_free_basis, H1Presentation};

#[derive(Clone, Debug, Serialize)]
pub struct SumGadget {
    pub graph: Graph,
    pub s: usize,
    pub g: usize,
    pub ell: usize,
    pub z: ClosedWalk,
    pub a: Vec<ClosedWalk>,
    pub a_prime: Vec<ClosedWalk>,
    /// vertices of the tree `T`, sorted
    pub t: Vec<usize>,
    /// slices `0..ℓ` of the product (projected), then `Z`, then the `A_i`
    pub gadget_cycles: Vec<ClosedWalk>,
    /// the vertex `0` of `Z`, `A_0`, ..., `A_{s-1}`
    pub zero_vertices: Vec<usize>,
    #[serde(skip)]
    pub(crate) witness: EllWitness,
    /// product vertex `(t, x)` at `t·sg + x` -> gadget vertex
    #[serde(skip)]
    pub(crate) projection: Vec<usize>,
}

impl SumGadget {
    /// `Z` followed by the `A_i`.
    pub fn end_cycles(&self) -> Vec<ClosedWalk> {
        std::iter::once(self.z.clone()).chain(self.a.iter().cloned()).collect()
    }
}

pub fn build_sum_gadget(s: usize, g: usize) -> Result<SumGadget, GadgetError> {
    check_params(s, g)?;
    let witness = find_ell(s, g)?;
    build_from_witness(witness)
}

pub(crate) fn build_from_witness(witness: EllWitness) -> Result<SumGadget, GadgetError> {
    let (s, g, ell) = (witness.s, witness.g, witness.ell);
    let sg = s * g;
    let prod = tensor_product(&make_path(ell, true), &make_cycle(sg, true));
    let at = |t: usize, x: usize| t * sg + x;

    // (1) fold the last slice onto Z; (2) pinch the first slice at the block starts
    let mut classes: Vec<Vec<usize>> = (0..g).map(|j| (0..s).map(|i| at(ell, i + j * s)).collect()).collect();
    classes.push((0..s).map(|i| at(0, i * g)).collect());
    let q = identify_vertices(&prod, &classes)?;
    let projection = q.projection.into_vec();
    let z = ClosedWalk::new((0..g).map(|j| projection[at(ell, j * s)]).collect());
    let a_prime: Vec<ClosedWalk> =
        (0..s).map(|i| ClosedWalk::new((0..g).map(|k| projection[at(0, i * g + k)]).collect())).collect();

    // (3) a reflexive P_1 × Z on each A'_i
    let base = q.quotient.n();
    let mut b = crate::graph::GraphBuilder::new(0);
    for _ in 0..base {
        b.add_vertex(true);
    }
    for (u, v) in q.quotient.edges() {
        b.add_edge(u, v);
    }
    let mut a = Vec::with_capacity(s);
    for ap in &a_prime {
        let first = b.n();
        for _ in 0..g {
            b.add_vertex(true);
        }
        let new = |k: usize| first + k % g;
        for k in 0..g {
            b.add_edge(new(k), new(k + 1));
            for d in [0, 1, g - 1] {
                b.add_edge(new(k), ap.vertices()[(k + d) % g]);
            }
        }
        a.push(ClosedWalk::new((0..g).map(new).collect()));
    }
    let graph = b.name(format!("S{s}")).build();

    let mut t: Vec<usize> = (0..=ell).map(|i| projection[at(i, 0)]).chain(a.iter().map(|c| c.basepoint())).collect();
    t.sort_unstable();
    t.dedup();

    let mut gadget_cycles: Vec<ClosedWalk> =
        (0..ell).map(|i| ClosedWalk::new((0..sg).map(|x| projection[at(i, x)]).collect())).collect();
    gadget_cycles.push(z.clone());
    gadget_cycles.extend(a.iter().cloned());
    let zero_vertices = std::iter::once(z.basepoint()).chain(a.iter().map(|c| c.basepoint())).collect();

    let sum = SumGadget { graph, s, g, ell, z, a, a_prime, t, gadget_cycles, zero_vertices, witness, projection };
    check_sum_gadget(&sum)?;
    Ok(sum)
}

/// The build-time invariants: end cycles are simple, pairwise at distance at
/// least 2, `T` is a tree through their zero vertices, `H_1` has rank `s` with
/// the `A_i` as a basis, and `[Z] = Σ [A_i]`.
pub fn check_sum_gadget(sg: &SumGadget) -> Result<H1Presentation, GadgetError> {
    let fail = |m: String| Err(GadgetError::Invariant(format!("S{}: {m}", sg.s)));
    let ends = sg.end_cycles();
    for c in &ends {
        c.validate(&sg.graph)?;
        if c.len() != sg.g || !c.is_simple() {
            return fail(format!("end cycle {:?} is not a simple {}-cycle", c.vertices(), sg.g));
        }
    }
    for (i, c) in ends.iter().enumerate() {
        let near = multi_source_distances(&sg.graph, c.vertices());
        for d in &ends[i + 1..] {
            if d.vertices().iter().any(|&v| near[v].is_some_and(|x| x < 2)) {
                return fail("two end cycles are closer than 2".into());
            }
        }
    }
    let (tree, _) = induced_subgraph(&sg.graph, &sg.t)?;
    if !is_connected(&tree) || tree.edge_count() + 1 != tree.n() {
        return fail("T is not a tree".into());
    }
    if !sg.zero_vertices.iter().all(|v| sg.t.binary_search(v).is_ok()) {
        return fail("T misses a zero vertex".into());
    }
    let p = h1_presentation(&sg.graph)?;
    if p.rank() != sg.s || !p.torsion().is_empty() {
        return fail(format!("rank {} torsion {:?}", p.rank(), p.torsion()));
    }
    let classes: Vec<_> = sg.a.iter().map(|c| p.cycle_class(c)).collect::<Result<_, _>>()?;
    if !is_free_basis(&classes, sg.s) {
        return fail("the A cycles are not a basis".into());
    }
    let total = classes.iter().fold(p.zero(), |acc, c| p.add(&acc, c));
    if p.cycle_class(&sg.z)? != total {
        return fail("[Z] differs from the sum of the [A_i]".into());
    }
    Ok(p)
}

pub(crate) fn multi_source_distances(g: &Graph, sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
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

/// `Γ_i : S → Z` (labels `0..g` on `C_g`): `φ_i` pushed through the
/// identifications, acting on `A_i` as it does on `A'_i`.
pub fn gamma_colouring(sg: &SumGadget, i: usize) -> Result<Homomorphism, GadgetError> {
    if i >= sg.s {
        return Err(GadgetError::BadParameters { s: sg.s, g: sg.g });
    }
    let phi = sg.witness.product_map(i);
    let mut out = vec![usize::MAX; sg.graph.n()];
    for (x, &v) in sg.projection.iter().enumerate() {
        if out[v] != usize::MAX && out[v] != phi[x] {
            return Err(GadgetError::Invariant(format!("path map {i} is not constant on an identified class")));
        }
        out[v] = phi[x];
    }
    for (ap, a) in sg.a_prime.iter().zip(&sg.a) {
        for (&p, &q) in ap.vertices().iter().zip(a.vertices()) {
            out[q] = out[p];
        }
    }
    let z = make_cycle(sg.g, true);
    let gamma = Homomorphism::new(&sg.graph, &z, out)?;

    let fail = |m: &str| Err(GadgetError::Invariant(format!("Gamma_{i} on S{}: {m}", sg.s)));
    if sg.t.iter().any(|&v| gamma.apply(v) != 0) {
        return fail("not 0 on T");
    }
    for (j, a) in sg.a.iter().enumerate() {
        let image: Vec<usize> = a.vertices().iter().map(|&v| gamma.apply(v)).collect();
        let expected: Vec<usize> = if j == i { (0..sg.g).collect() } else { vec![0; sg.g] };
        if image != expected {
            return fail(&format!("A_{j} maps to {image:?}"));
        }
    }
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{cycle_class, is_flat};

    #[test]
    fn two_four_gadget_invariants() {
        let sg = build_sum_gadget(2, 4).unwrap();
        let p = check_sum_gadget(&sg).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(sg.gadget_cycles.len(), sg.ell + 1 + 2);
        for c in &sg.gadget_cycles {
            c.validate(&sg.graph).unwrap();
        }
        assert!(sg.graph.is_reflexive());
    }

    #[test]
    fn gamma_sends_its_cycle_around_z() {
        let sg = build_sum_gadget(2, 4).unwrap();
        let z = make_cycle(4, true);
        let pz = h1_presentation(&z).unwrap();
        let gen = cycle_class(&pz, &ClosedWalk::new(vec![0, 1, 2, 3])).unwrap();
        for i in 0..2 {
            let gamma = gamma_colouring(&sg, i).unwrap();
            assert!(!is_flat(&sg.graph, &z, &gamma).unwrap());
            let img = sg.a[i].map_with(|v| gamma.apply(v));
            assert_eq!(pz.cycle_class(&img).unwrap(), gen);
            let zimg = sg.z.map_with(|v| gamma.apply(v));
            assert_eq!(pz.cycle_class(&zimg).unwrap(), gen);
        }
    }
}
