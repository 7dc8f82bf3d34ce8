//! `G^a` and `G*`: sum gadgets glued along a shared `Z*` and per-vertex
//! `A`-cycles, then plugged so that only end gadget-cycles carry homology.

use serde::{Deserialize, Serialize};

use super::sum::{build_sum_gadget, gamma_colouring, SumGadget};
use super::GadgetError;
use crate::graph::{
    girth_cycle, identify_vertices, induced_subgraph, is_connected, is_triangle_free, ClosedWalk, Graph, GraphBuilder,
    Homomorphism,
};
use crate::homology::{class_matrix, h1_presentation, nt_basis, smith_normal_form, ClassVector, H1Presentation};
use crate::unionfind::UnionFind;

/// A 3-colouring of the source graph, one entry in `0..3` per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreeColouring(pub Vec<u8>);

impl ThreeColouring {
    pub fn new(g: &Graph, colours: Vec<u8>) -> Result<Self, GadgetError> {
        let c = ThreeColouring(colours);
        c.check(g)?;
        Ok(c)
    }

    pub fn colour(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    /// Length, range and properness on `g`.
    pub fn check(&self, g: &Graph) -> Result<(), GadgetError> {
        if self.0.len() != g.n() {
            return Err(GadgetError::ColouringLength { got: self.0.len(), expected: g.n() });
        }
        if let Some(v) = self.0.iter().position(|&c| c > 2) {
            return Err(GadgetError::ImproperColouring { u: v, v });
        }
        match g.edges().find(|&(u, v)| self.0[u] == self.0[v]) {
            Some((u, v)) => Err(GadgetError::ImproperColouring { u, v }),
            None => Ok(()),
        }
    }

    /// Every proper 3-colouring of `g`, lexicographically.
    pub fn all_proper(g: &Graph) -> Vec<ThreeColouring> {
        let n = g.n();
        let mut out = Vec::new();
        let mut cur = vec![0u8; n];
        fn rec(g: &Graph, v: usize, cur: &mut Vec<u8>, out: &mut Vec<ThreeColouring>) {
            if v == cur.len() {
                out.push(ThreeColouring(cur.clone()));
                return;
            }
            for c in 0..3u8 {
                if g.neighbors(v).iter().all(|&u| u >= v || cur[u] != c) {
                    cur[v] = c;
                    rec(g, v + 1, cur, out);
                }
            }
        }
        rec(g, 0, &mut cur, &mut out);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GadgetKind {
    /// `S^v`, an `S_3` whose `Z` is `Z*` and whose `A_i` is `A^v_i`
    Vertex { v: usize },
    /// `S^v_{i,j}`, an `S_2` joining `A^v_i` to `A^v_j` reversed
    VertexPair { v: usize, i: usize, j: usize },
    /// `S^{uv}_i`, an `S_2` joining `A^u_i` to `A^v_i`
    Edge { u: usize, v: usize, i: usize },
}

impl GadgetKind {
    pub fn label(&self) -> String {
        match *self {
            GadgetKind::Vertex { v } => format!("S3[{v}]"),
            GadgetKind::VertexPair { v, i, j } => format!("S2[{v};{i},{j}]"),
            GadgetKind::Edge { u, v, i } => format!("S2[{u},{v};{i}]"),
        }
    }

    fn arity(&self) -> usize {
        match self {
            GadgetKind::Vertex { .. } => 3,
            _ => 2,
        }
    }
}

/// Where one gadget copy went: local vertex `x` of the gadget is vertex
/// `map[x]` of `G*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: GadgetKind,
    pub map: Vec<usize>,
    /// the copy's `Z` in `G*`
    pub z: ClosedWalk,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedWalk {
    pub name: String,
    pub walk: ClosedWalk,
}

/// The reduction output. Vertices `0..ga_vertices` of `gstar` form `G^a`;
/// the plug vertices follow in the order of `basis_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionArtifact {
    pub source: Graph,
    pub target: Graph,
    /// girth cycle of the target; label `k` of a gadget colouring means `zcycle_h[k]`
    pub zcycle_h: ClosedWalk,
    pub g: usize,
    pub gstar: Graph,
    pub ga_vertices: usize,
    pub zstar: ClosedWalk,
    /// `av[v][i]` is `A^v_i`
    pub av: Vec<Vec<ClosedWalk>>,
    pub gadget_cycles: Vec<NamedWalk>,
    pub tstar: Vec<usize>,
    pub basis_t: Vec<ClosedWalk>,
    /// `plug_vertices[k]` cones `basis_t[k]`
    pub plug_vertices: Vec<usize>,
    pub provenance: Vec<Provenance>,
    /// `ℓ` of the `S_3` and `S_2` used
    pub ell: [usize; 2],
    /// `Γ_i` of `S_3` (index 0) and `S_2` (index 1), as label vectors
    pub gammas: [Vec<Vec<usize>>; 2],
}

impl ReductionArtifact {
    /// `Z*`, the `A^v_i`, and every gadget-cycle, for highlighting and export.
    pub fn named_walks(&self) -> Vec<(String, ClosedWalk)> {
        let mut out = vec![("Zstar".to_string(), self.zstar.clone())];
        for (v, cycles) in self.av.iter().enumerate() {
            for (i, c) in cycles.iter().enumerate() {
                out.push((format!("A_{v}_{i}"), c.clone()));
            }
        }
        out.extend(self.gadget_cycles.iter().map(|nw| (nw.name.clone(), nw.walk.clone())));
        for (k, c) in self.basis_t.iter().enumerate() {
            out.push((format!("T.basis[{k}]"), c.clone()));
        }
        out
    }

    pub fn walk(&self, name: &str) -> Option<ClosedWalk> {
        self.named_walks().into_iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    /// `Z*`, all `A^v_i`, and the `Z` of every `S_2` copy.
    pub fn end_cycles(&self) -> Vec<ClosedWalk> {
        std::iter::once(self.zstar.clone())
            .chain(self.av.iter().flatten().cloned())
            .chain(self.provenance.iter().filter(|p| p.kind.arity() == 2).map(|p| p.z.clone()))
            .collect()
    }
}

/// `G^a` before plugging, with the gadgets it was glued from.
#[derive(Clone, Debug)]
pub struct GaBuild {
    pub artifact: ReductionArtifact,
    pub s3: SumGadget,
    pub s2: SumGadget,
}

fn check_instance(source: &Graph, target: &Graph) -> Result<ClosedWalk, GadgetError> {
    if !source.is_irreflexive() {
        return Err(GadgetError::SourceNotIrreflexive);
    }
    let bad = |m: &str| Err(GadgetError::TargetUnsuitable(m.into()));
    if target.n() == 0 || !is_connected(target) {
        return bad("target is not connected");
    }
    if !target.is_reflexive() {
        return bad("target is not reflexive");
    }
    if !is_triangle_free(target) {
        return bad("target has a triangle");
    }
    let z = girth_cycle(target).or_else(|_| bad("target is acyclic"))?;
    if z.len() < 4 {
        return bad("girth below 4");
    }
    Ok(z)
}

/// Glues one `S_3` per source vertex onto `Z*`, an `S_2` per vertex and pair
/// of colours, and an `S_2` per edge and colour.
pub fn build_ga(source: &Graph, target: &Graph) -> Result<GaBuild, GadgetError> {
    let zcycle_h = check_instance(source, target)?;
    let g = zcycle_h.len();
    let (s3, s2) = rayon::join(|| build_sum_gadget(3, g), || build_sum_gadget(2, g));
    let (s3, s2) = (s3?, s2?);
    let n = source.n();

    let mut kinds = Vec::new();
    for v in 0..n {
        kinds.push(GadgetKind::Vertex { v });
    }
    for v in 0..n {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            kinds.push(GadgetKind::VertexPair { v, i, j });
        }
    }
    for (u, v) in source.edges() {
        for i in 0..3 {
            kinds.push(GadgetKind::Edge { u, v, i });
        }
    }

    // base blocks: Z* at 0..g, then A^v_i at g·(1 + 3v + i); gadget copies after
    let block = |v: usize, i: usize| g * (1 + 3 * v + i);
    let mut offsets = Vec::with_capacity(kinds.len());
    let mut total = g * (1 + 3 * n);
    for k in &kinds {
        offsets.push(total);
        total += if k.arity() == 3 { s3.graph.n() } else { s2.graph.n() };
    }

    let mut b = GraphBuilder::new(0);
    for _ in 0..total {
        b.add_vertex(true);
    }
    for blk in 0..1 + 3 * n {
        for k in 0..g {
            b.add_edge(blk * g + k, blk * g + (k + 1) % g);
        }
    }
    let mut uf = UnionFind::new(total);
    for (kind, &off) in kinds.iter().zip(&offsets) {
        let sg = if kind.arity() == 3 { &s3 } else { &s2 };
        for (u, v) in sg.graph.edges() {
            b.add_edge(off + u, off + v);
        }
        let z = sg.z.vertices();
        let a = |i: usize, k: usize| off + sg.a[i].vertices()[k];
        for k in 0..g {
            match *kind {
                GadgetKind::Vertex { v } => {
                    uf.union(off + z[k], k);
                    for i in 0..3 {
                        uf.union(a(i, k), block(v, i) + k);
                    }
                }
                GadgetKind::VertexPair { v, i, j } => {
                    uf.union(a(0, k), block(v, i) + k);
                    uf.union(a(1, k), block(v, j) + (g - k) % g);
                }
                GadgetKind::Edge { u, v, i } => {
                    uf.union(a(0, k), block(u, i) + k);
                    uf.union(a(1, k), block(v, i) + k);
                }
            }
        }
    }
    let unglued = b.name("Ga").build();
    let q = identify_vertices(&unglued, &uf.nontrivial_classes())?;
    let proj = q.projection;
    let ga = q.quotient;
    let base = |start: usize| ClosedWalk::new((start..start + g).map(|x| proj.apply(x)).collect());
    let zstar = base(0);
    let av: Vec<Vec<ClosedWalk>> = (0..n).map(|v| (0..3).map(|i| base(block(v, i))).collect()).collect();

    let mut provenance = Vec::with_capacity(kinds.len());
    let mut gadget_cycles = Vec::new();
    let mut tstar = vec![zstar.basepoint()];
    for (kind, &off) in kinds.iter().zip(&offsets) {
        let sg = if kind.arity() == 3 { &s3 } else { &s2 };
        let map: Vec<usize> = (0..sg.graph.n()).map(|x| proj.apply(off + x)).collect();
        let label = kind.label();
        for (t, c) in sg.gadget_cycles[..sg.ell].iter().enumerate() {
            gadget_cycles.push(NamedWalk { name: format!("{label}.slice[{t}]"), walk: c.map_with(|x| map[x]) });
        }
        gadget_cycles.push(NamedWalk { name: format!("{label}.Z"), walk: sg.z.map_with(|x| map[x]) });
        for (i, c) in sg.a.iter().enumerate() {
            gadget_cycles.push(NamedWalk { name: format!("{label}.A[{i}]"), walk: c.map_with(|x| map[x]) });
        }
        tstar.extend(sg.t.iter().map(|&x| map[x]));
        provenance.push(Provenance { kind: *kind, z: sg.z.map_with(|x| map[x]), map });
    }
    tstar.sort_unstable();
    tstar.dedup();

    let (tgraph, _) = induced_subgraph(&ga, &tstar)?;
    if !is_connected(&tgraph) {
        return Err(GadgetError::Invariant("T* is not connected".into()));
    }
    let gammas = |sg: &SumGadget| -> Result<Vec<Vec<usize>>, GadgetError> {
        (0..sg.s).map(|i| Ok(gamma_colouring(sg, i)?.into_vec())).collect()
    };
    let artifact = ReductionArtifact {
        source: source.clone(),
        target: target.clone(),
        zcycle_h,
        g,
        ga_vertices: ga.n(),
        gstar: ga,
        zstar,
        av,
        gadget_cycles,
        tstar,
        basis_t: Vec::new(),
        plug_vertices: Vec::new(),
        provenance,
        ell: [s3.ell, s2.ell],
        gammas: [gammas(&s3)?, gammas(&s2)?],
    };
    Ok(GaBuild { artifact, s3, s2 })
}

/// `G^a` with a looped cone vertex over every cycle of an NT-basis of `T*`.
pub fn build_gstar(source: &Graph, target: &Graph) -> Result<ReductionArtifact, GadgetError> {
    let mut r = build_ga(source, target)?.artifact;
    let (tgraph, back) = induced_subgraph(&r.gstar, &r.tstar)?;
    r.basis_t = nt_basis(&tgraph)?.iter().map(|c| c.map(&back)).collect();

    let mut b = r.gstar.builder_from();
    for c in &r.basis_t {
        let apex = b.add_vertex(true);
        let mut vs = c.vertices().to_vec();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            b.add_edge(apex, v);
        }
        r.plug_vertices.push(apex);
    }
    r.gstar = b.name("Gstar").build();
    Ok(r)
}

/// `φ*` for a proper colouring: `Γ_{c(v)}` on `S^v`, the matching `Γ` (or 0) on
/// the `S_2` copies, 0 on plugs; labels are read on the target's girth cycle.
pub fn witness_hom(r: &ReductionArtifact, c: &ThreeColouring) -> Result<Homomorphism, GadgetError> {
    c.check(&r.source)?;
    let g = r.g;
    let mut labels = vec![usize::MAX; r.gstar.n()];
    for p in &r.provenance {
        let local: Vec<usize> = match p.kind {
            GadgetKind::Vertex { v } => r.gammas[0][c.colour(v)].clone(),
            GadgetKind::VertexPair { v, i, j } => {
                let gam = &r.gammas[1];
                if c.colour(v) == i {
                    gam[0].clone()
                } else if c.colour(v) == j {
                    // A_1 is glued to A^v_j reversed, so compose with the reflection
                    gam[1].iter().map(|&x| (g - x) % g).collect()
                } else {
                    vec![0; gam[0].len()]
                }
            }
            GadgetKind::Edge { u, v, i } => {
                let gam = &r.gammas[1];
                if c.colour(u) == i {
                    gam[0].clone()
                } else if c.colour(v) == i {
                    gam[1].clone()
                } else {
                    vec![0; gam[0].len()]
                }
            }
        };
        for (x, &y) in p.map.iter().enumerate() {
            if labels[y] != usize::MAX && labels[y] != local[x] {
                return Err(GadgetError::Invariant(format!("{} disagrees with an earlier gadget at vertex {y}", p.kind.label())));
            }
            labels[y] = local[x];
        }
    }
    for &p in &r.plug_vertices {
        labels[p] = 0;
    }
    if r.source.n() == 0 {
        // no gadget touches Z*; wind it once
        for (k, &z) in r.zstar.vertices().iter().enumerate() {
            labels[z] = k;
        }
    }
    if labels.contains(&usize::MAX) {
        return Err(GadgetError::Invariant("witness leaves a vertex unassigned".into()));
    }
    let zc = r.zcycle_h.vertices();
    let phi = Homomorphism::new(&r.gstar, &r.target, labels.iter().map(|&k| zc[k]).collect())?;

    let hp = h1_presentation(&r.target)?;
    if hp.cycle_class(&r.zstar.map_with(|v| phi.apply(v)))?.is_zero() {
        return Err(GadgetError::Invariant("witness is flat on Z*".into()));
    }
    Ok(phi)
}

/// Reads the colouring off a map that is non-flat on `Z*`: `c(v)` is the one
/// colour whose `A^v_i` carries the class of `Z*`.
pub fn extract_colouring(r: &ReductionArtifact, phi: &Homomorphism) -> Result<ThreeColouring, GadgetError> {
    let phi = Homomorphism::new(&r.gstar, &r.target, phi.as_slice().to_vec())?;
    let hp = h1_presentation(&r.target)?;
    let class = |w: &ClosedWalk| hp.cycle_class(&w.map_with(|v| phi.apply(v)));
    let z = class(&r.zstar)?;
    if z.is_zero() {
        return Err(GadgetError::NotNonflat);
    }
    let mut colours = Vec::with_capacity(r.source.n());
    for (v, cycles) in r.av.iter().enumerate() {
        let classes: Vec<ClassVector> = cycles.iter().map(class).collect::<Result<_, _>>()?;
        let nonzero: Vec<usize> = (0..3).filter(|&i| !classes[i].is_zero()).collect();
        match nonzero[..] {
            [i] if classes[i] == z => colours.push(i as u8),
            _ => {
                return Err(GadgetError::ClaimViolation(format!(
                    "vertex {v}: A-cycle classes {:?} against [Z*] = {:?}",
                    classes.iter().map(|c| &c.free).collect::<Vec<_>>(),
                    z.free
                )))
            }
        }
    }
    let c = ThreeColouring(colours);
    match c.check(&r.source) {
        Ok(()) => Ok(c),
        Err(GadgetError::ImproperColouring { u, v }) => {
            Err(GadgetError::ClaimViolation(format!("extracted colouring is improper on edge {{{u},{v}}}")))
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NtBasisReport {
    pub rank: usize,
    pub torsion: Vec<i64>,
    pub predicted_rank: usize,
    pub end_cycles: usize,
    /// rank of the end-cycle class matrix
    pub span_rank: usize,
    /// the end-cycle classes generate `H_1` (all invariant factors are 1)
    pub spans: bool,
    pub passed: bool,
}

/// Computes `H_1(G*)` and checks it is free of rank `2|V|+1`, generated by the
/// end gadget-cycles.
pub fn verify_nt_basis(r: &ReductionArtifact) -> Result<NtBasisReport, GadgetError> {
    let p = h1_presentation(&r.gstar)?;
    nt_report(r, &p)
}

/// The same report with the last plug vertex deleted, which should leave
/// one extra generator behind.
pub fn nt_report_without_last_plug(r: &ReductionArtifact) -> Result<NtBasisReport, GadgetError> {
    let mut m = r.clone();
    if let Some(p) = m.plug_vertices.pop() {
        m.basis_t.pop();
        let keep: Vec<usize> = (0..m.gstar.n()).filter(|&v| v != p).collect();
        m.gstar = induced_subgraph(&m.gstar, &keep)?.0;
    }
    verify_nt_basis(&m)
}

pub(crate) fn nt_report(r: &ReductionArtifact, p: &H1Presentation) -> Result<NtBasisReport, GadgetError> {
    let ends = r.end_cycles();
    let classes: Vec<ClassVector> = ends.iter().map(|c| p.cycle_class(c)).collect::<Result<_, _>>()?;
    let rank = p.rank();
    let (span_rank, spans) = if rank == 0 {
        (0, true)
    } else {
        let d = smith_normal_form(&class_matrix(&classes)).invariant_factors();
        (d.len(), d.len() == rank && d.iter().all(|x| *x == 1.into()))
    };
    let predicted_rank = 2 * r.source.n() + 1;
    Ok(NtBasisReport {
        rank,
        torsion: p.torsion().to_vec(),
        predicted_rank,
        end_cycles: ends.len(),
        span_rank,
        spans,
        passed: rank == predicted_rank && p.torsion().is_empty() && spans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle};
    use crate::homology::is_flat;

    #[test]
    fn k2_pipeline_round_trips() {
        let k2 = make_complete(2, false);
        let c4 = make_cycle(4, true);
        let r = build_gstar(&k2, &c4).unwrap();
        assert!(r.gstar.is_reflexive());
        let rep = verify_nt_basis(&r).unwrap();
        assert!(rep.passed, "{rep:?}");
        for c in ThreeColouring::all_proper(&k2) {
            let phi = witness_hom(&r, &c).unwrap();
            assert!(!is_flat(&r.gstar, &c4, &phi).unwrap());
            assert!(r.tstar.iter().chain(&r.plug_vertices).all(|&v| phi.apply(v) == r.zcycle_h.basepoint()));
            assert_eq!(extract_colouring(&r, &phi).unwrap(), c);
        }
    }

    #[test]
    fn constant_map_is_not_nonflat() {
        let k1 = make_complete(1, false);
        let c4 = make_cycle(4, true);
        let r = build_gstar(&k1, &c4).unwrap();
        let k = Homomorphism::constant(&r.gstar, &c4, 2).unwrap();
        assert_eq!(extract_colouring(&r, &k).unwrap_err(), GadgetError::NotNonflat);
    }

    #[test]
    fn improper_colouring_and_bad_targets_are_rejected() {
        let k2 = make_complete(2, false);
        let c4 = make_cycle(4, true);
        let r = build_gstar(&k2, &c4).unwrap();
        assert!(matches!(witness_hom(&r, &ThreeColouring(vec![1, 1])), Err(GadgetError::ImproperColouring { .. })));
        assert!(matches!(build_ga(&k2, &make_complete(3, true)), Err(GadgetError::TargetUnsuitable(_))));
        assert!(matches!(build_ga(&k2, &make_cycle(4, false)), Err(GadgetError::TargetUnsuitable(_))));
        assert!(matches!(build_ga(&k2.reflexive_closure(), &c4), Err(GadgetError::SourceNotIrreflexive)));
    }
}
