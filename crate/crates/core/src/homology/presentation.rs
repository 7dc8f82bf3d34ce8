use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::complex::{build_chain_complex, ChainComplex, ChainVector};
use super::reduce::{back_substitute, eliminate_units, SparseRow};
use super::snf::{smith_normal_form, IntMatrix};
use super::HomologyError;
use crate::graph::{components, ClosedWalk, Graph, Homomorphism};

/// A homology class: free coordinates followed by torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassVector {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl ClassVector {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&x| x == 0)
    }
}

/// One connected component's share of the survivors and its Smith transform.
#[derive(Clone, Debug)]
struct Block {
    /// survivor indices of this component
    surv: Vec<usize>,
    /// `V` of the Smith form, `None` when there were no residual relations
    v: Option<Vec<Vec<i64>>>,
    v_inv: Option<Vec<Vec<i64>>>,
    /// diagonal of `D`, padded with zeros to `surv.len()`
    diag: Vec<i64>,
}

/// `H_1` of the clique complex of a graph, with a coordinate map on closed walks.
#[derive(Clone, Debug)]
pub struct H1Presentation {
    graph: Graph,
    cx: ChainComplex,
    parent: Vec<usize>,
    gen_of_edge: Vec<usize>,
    edge_of_gen: Vec<usize>,
    surv_of_gen: Vec<usize>,
    gen_of_surv: Vec<usize>,
    /// eliminated generator -> combination of survivors
    finals: Vec<Option<SparseRow>>,
    roots: Vec<usize>,
    comp: Vec<usize>,
    blocks: Vec<Block>,
    torsion: Vec<i64>,
    basis: Vec<ClosedWalk>,
}

const NONE: usize = usize::MAX;

pub fn h1_presentation(g: &Graph) -> Result<H1Presentation, HomologyError> {
    h1_presentation_rooted(g, &[])
}

/// As [`h1_presentation`], with the spanning tree of a component grown from
/// the given vertex instead of its smallest one.
pub fn h1_presentation_rooted(g: &Graph, root_overrides: &[usize]) -> Result<H1Presentation, HomologyError> {
    for &r in root_overrides {
        g.check_vertex(r)?;
    }
    let n = g.n();
    let cx = build_chain_complex(g);
    let (comp, ncomp) = components(g);
    let mut roots: Vec<usize> = vec![NONE; ncomp];
    for &r in root_overrides {
        if roots[comp[r]] == NONE {
            roots[comp[r]] = r;
        }
    }
    for v in 0..n {
        if roots[comp[v]] == NONE {
            roots[comp[v]] = v;
        }
    }

    let mut parent = vec![NONE; n];
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; cx.edges().len()];
    for &r in &roots {
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    tree_edge[cx.edge_id(u, w).expect("neighbour edge")] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut gen_of_edge = vec![NONE; cx.edges().len()];
    let mut edge_of_gen = Vec::new();
    for e in 0..cx.edges().len() {
        if !tree_edge[e] {
            gen_of_edge[e] = edge_of_gen.len();
            edge_of_gen.push(e);
        }
    }
    let ngens = edge_of_gen.len();

    let relations: Vec<SparseRow> = (0..cx.triangles().len())
        .map(|t| {
            cx.d2()
                .column(t)
                .iter()
                .filter(|&&(e, _)| gen_of_edge[e] != NONE)
                .map(|&(e, x)| (gen_of_edge[e], x))
                .collect()
        })
        .collect();
    let elim = eliminate_units(ngens, relations)?;
    let finals_by_gen = back_substitute(&elim, ngens)?;

    let mut surv_of_gen = vec![NONE; ngens];
    let mut gen_of_surv = Vec::new();
    for c in 0..ngens {
        if !elim.eliminated[c] {
            surv_of_gen[c] = gen_of_surv.len();
            gen_of_surv.push(c);
        }
    }
    let finals: Vec<Option<SparseRow>> = finals_by_gen
        .into_iter()
        .map(|f| f.map(|row| row.into_iter().map(|(c, k)| (surv_of_gen[c], k)).collect()))
        .collect();

    // group survivors and residual relations by component
    let comp_of_gen = |c: usize| comp[cx.edges()[edge_of_gen[c]].0];
    let mut block_surv: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for (s, &c) in gen_of_surv.iter().enumerate() {
        block_surv[comp_of_gen(c)].push(s);
    }
    let mut block_rows: Vec<Vec<SparseRow>> = vec![Vec::new(); ncomp];
    for row in elim.residual {
        let k = comp_of_gen(row[0].0);
        block_rows[k].push(row);
    }

    let mut blocks = Vec::new();
    for (surv, rows) in block_surv.into_iter().zip(block_rows) {
        if surv.is_empty() {
            continue;
        }
        blocks.push(smith_block(surv, &rows, &surv_of_gen)?);
    }

    let mut p = H1Presentation {
        graph: g.clone(),
        cx,
        parent,
        gen_of_edge,
        edge_of_gen,
        surv_of_gen,
        gen_of_surv,
        finals,
        roots,
        comp,
        torsion: blocks.iter().flat_map(|b| b.diag.iter().copied().filter(|&d| d > 1)).collect(),
        blocks,
        basis: Vec::new(),
    };
    p.basis = p.realize_basis();
    Ok(p)
}

fn smith_block(surv: Vec<usize>, rows: &[SparseRow], surv_of_gen: &[usize]) -> Result<Block, HomologyError> {
    let k = surv.len();
    if rows.is_empty() {
        return Ok(Block { diag: vec![0; k], surv, v: None, v_inv: None });
    }
    let mut local = vec![NONE; surv_of_gen.len()];
    let mut dense = vec![vec![0i64; k]; rows.len()];
    for (j, &s) in surv.iter().enumerate() {
        local[s] = j;
    }
    for (i, row) in rows.iter().enumerate() {
        for &(c, x) in row {
            dense[i][local[surv_of_gen[c]]] = x;
        }
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(&dense));
    let to_i64 = |x: &BigInt| x.to_i64().ok_or(HomologyError::Overflow);
    let mut diag = vec![0; k];
    for (j, d) in diag.iter_mut().enumerate().take(rows.len().min(k)) {
        *d = to_i64(snf.d.get(j, j))?;
    }
    let grab = |m: &IntMatrix| -> Result<Vec<Vec<i64>>, HomologyError> {
        (0..m.rows()).map(|i| m.row(i).iter().map(to_i64).collect()).collect()
    };
    Ok(Block { v: Some(grab(&snf.v)?), v_inv: Some(grab(&snf.v_inv)?), diag, surv })
}

impl H1Presentation {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.cx
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.diag.iter().filter(|&&d| d == 0).count()).sum()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Closed walks whose classes are the standard free coordinates.
    pub fn basis_cycles(&self) -> &[ClosedWalk] {
        &self.basis
    }

    pub fn zero(&self) -> ClassVector {
        ClassVector { free: vec![0; self.rank()], torsion: vec![0; self.torsion.len()] }
    }

    /// Class of a closed chain.
    pub fn class_of_chain(&self, chain: &ChainVector) -> Result<ClassVector, HomologyError> {
        let m = self.cx.edges().len();
        if chain.0.len() != m {
            return Err(HomologyError::ChainLength { got: chain.0.len(), expected: m });
        }
        if !self.cx.is_closed(chain) {
            return Err(HomologyError::NotClosed);
        }
        let mut coef = vec![0i128; self.gen_of_surv.len()];
        for (e, &x) in chain.0.iter().enumerate() {
            let c = self.gen_of_edge[e];
            if x == 0 || c == NONE {
                continue;
            }
            match &self.finals[c] {
                None => coef[self.surv_of_gen[c]] += x as i128,
                Some(expr) => {
                    for &(s, k) in expr {
                        coef[s] += x as i128 * k as i128;
                    }
                }
            }
        }
        let narrow = |x: i128| i64::try_from(x).map_err(|_| HomologyError::Overflow);
        let mut out = ClassVector { free: Vec::new(), torsion: Vec::new() };
        for b in &self.blocks {
            for (j, &d) in b.diag.iter().enumerate() {
                let y: i128 = match &b.v {
                    None => coef[b.surv[j]],
                    Some(v) => b.surv.iter().enumerate().map(|(i, &s)| coef[s] * v[i][j] as i128).sum(),
                };
                match d {
                    0 => out.free.push(narrow(y)?),
                    1 => {}
                    _ => out.torsion.push(narrow(y.rem_euclid(d as i128))?),
                }
            }
        }
        Ok(out)
    }

    pub fn cycle_class(&self, w: &ClosedWalk) -> Result<ClassVector, HomologyError> {
        let chain = self.cx.chain_of_walk(&self.graph, w)?;
        self.class_of_chain(&chain)
    }

    pub fn add(&self, a: &ClassVector, b: &ClassVector) -> ClassVector {
        ClassVector {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a.torsion.iter().zip(&b.torsion).zip(&self.torsion).map(|((x, y), d)| (x + y).rem_euclid(*d)).collect(),
        }
    }

    pub fn neg(&self, a: &ClassVector) -> ClassVector {
        ClassVector {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a.torsion.iter().zip(&self.torsion).map(|(x, d)| (-x).rem_euclid(*d)).collect(),
        }
    }

    /// Tree path from `v` up to its root, inclusive.
    fn path_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut path = vec![v];
        while self.parent[v] != NONE {
            v = self.parent[v];
            path.push(v);
        }
        path
    }

    /// The fundamental cycle of a generator, traversing its edge from the smaller endpoint.
    pub(crate) fn fundamental_cycle(&self, gen: usize) -> ClosedWalk {
        let (u, v) = self.cx.edges()[self.edge_of_gen[gen]];
        let mut up_u = self.path_to_root(u);
        let mut up_v = self.path_to_root(v);
        // strip the common part above the lowest common ancestor
        while up_u.len() >= 2 && up_v.len() >= 2 && up_u[up_u.len() - 2] == up_v[up_v.len() - 2] {
            up_u.pop();
            up_v.pop();
        }
        let mut seq = vec![u];
        seq.extend_from_slice(&up_v);
        seq.extend(up_u.iter().rev().skip(1));
        seq.pop();
        ClosedWalk::new(seq)
    }

    /// A walk from the component root around generator `gen`'s edge and back, `times` times
    /// (negative reverses direction).
    fn rooted_loop(&self, gen: usize, times: i64, out: &mut Vec<usize>) {
        let (mut a, mut b) = self.cx.edges()[self.edge_of_gen[gen]];
        if times < 0 {
            std::mem::swap(&mut a, &mut b);
        }
        let down_a: Vec<usize> = self.path_to_root(a).into_iter().rev().collect();
        let up_b = self.path_to_root(b);
        for _ in 0..times.unsigned_abs() {
            out.extend_from_slice(&down_a);
            out.extend_from_slice(&up_b[..up_b.len() - 1]);
        }
    }

    fn realize_basis(&self) -> Vec<ClosedWalk> {
        let mut basis = Vec::new();
        for b in &self.blocks {
            for (j, &d) in b.diag.iter().enumerate() {
                if d != 0 {
                    continue;
                }
                let combo: Vec<(usize, i64)> = match &b.v_inv {
                    None => vec![(b.surv[j], 1)],
                    Some(vi) => b.surv.iter().enumerate().map(|(i, &s)| (s, vi[j][i])).filter(|&(_, k)| k != 0).collect(),
                };
                let walk = if let [(s, k)] = combo[..] {
                    let fc = self.fundamental_cycle(self.gen_of_surv[s]);
                    match k {
                        1 => Some(fc),
                        -1 => Some(fc.reversed()),
                        _ => None,
                    }
                } else {
                    None
                };
                basis.push(walk.unwrap_or_else(|| {
                    let root = self.roots[self.comp[self.cx.edges()[self.edge_of_gen[self.gen_of_surv[combo[0].0]]].0]];
                    let mut seq = Vec::new();
                    for &(s, k) in &combo {
                        self.rooted_loop(self.gen_of_surv[s], k, &mut seq);
                    }
                    debug_assert_eq!(seq[0], root);
                    ClosedWalk::new(seq)
                }));
            }
        }
        basis
    }
}

pub fn cycle_class(p: &H1Presentation, w: &ClosedWalk) -> Result<ClassVector, HomologyError> {
    p.cycle_class(w)
}

/// Class of `φ(w)` in `H_1` of the target.
pub fn image_class(
    source: &Graph,
    phi: &Homomorphism,
    w: &ClosedWalk,
    target: &H1Presentation,
) -> Result<ClassVector, HomologyError> {
    w.validate(source)?;
    target.cycle_class(&w.map_with(|v| phi.apply(v)))
}

/// Image classes of every basis cycle of the source.
pub fn basis_images(
    source: &H1Presentation,
    phi: &Homomorphism,
    target: &H1Presentation,
) -> Result<Vec<ClassVector>, HomologyError> {
    source.basis_cycles().iter().map(|w| image_class(source.graph(), phi, w, target)).collect()
}

pub fn is_flat_with(source: &H1Presentation, phi: &Homomorphism, target: &H1Presentation) -> Result<bool, HomologyError> {
    Ok(basis_images(source, phi, target)?.iter().all(ClassVector::is_zero))
}

/// Whether every cycle of `g` maps to a null-homologous cycle of `h`.
pub fn is_flat(g: &Graph, h: &Graph, phi: &Homomorphism) -> Result<bool, HomologyError> {
    crate::graph::Homomorphism::new(g, h, phi.as_slice().to_vec())?;
    is_flat_with(&h1_presentation(g)?, phi, &h1_presentation(h)?)
}

pub fn nt_basis(g: &Graph) -> Result<Vec<ClosedWalk>, HomologyError> {
    Ok(h1_presentation(g)?.basis)
}

/// Free coordinates of the classes, one row per class.
pub fn class_matrix(classes: &[ClassVector]) -> IntMatrix {
    let rows: Vec<Vec<i64>> = classes.iter().map(|c| c.free.clone()).collect();
    IntMatrix::from_rows(&rows)
}

/// Whether the classes form a basis of the free part of `H_1` (square matrix, determinant ±1).
pub fn is_free_basis(classes: &[ClassVector], rank: usize) -> bool {
    if classes.len() != rank || classes.iter().any(|c| c.free.len() != rank) {
        return false;
    }
    rank == 0 || class_matrix(classes).determinant().magnitude().is_one()
}
