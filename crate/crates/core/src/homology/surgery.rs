//! Randomized checks of how `H_1` responds to the graph surgeries used to
//! assemble gadgets: edge contraction, edge addition, pinching a cycle,
//! gluing along a cycle, identifying two cycles, and plugging a cycle.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{h1_presentation, is_free_basis, H1Presentation};
use crate::gadgets::{build_sum_gadget, SumGadget};
use crate::graph::{
    add_cone, disjoint_union, distances_from, identify_vertices, ClosedWalk, Graph, GraphJson, VertexMap,
};
use crate::verify::random::{base_cycle, cycle_with_attachments, pick, random_connected};
use crate::verify::{trial_seeds, VerificationReport};

const KINDS: [&str; 6] = ["excision", "edge-addition", "pinch", "glue", "identify-cycles", "plug"];

/// Runs `trials` surgeries, cycling through the six kinds.
pub fn verify_surgery_lemmas(seed: u64, trials: usize) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("surgery-lemmas", seed);
    let s2 = build_sum_gadget(2, 4).ok();
    if s2.is_none() {
        report.fail("setup", seed, json!(null), "could not build S2");
    }
    let mut skipped = 0;
    for (t, ts) in trial_seeds(seed, trials).into_iter().enumerate() {
        let kind = KINDS[t % KINDS.len()];
        match run_case(kind, ts, s2.as_ref()) {
            Case::Checked(g, r) => report.check(kind, ts, || json!({ "graph": GraphJson::from(&g) }), r),
            Case::Skipped => skipped += 1,
        }
    }
    if skipped > 0 {
        report.note(format!("{skipped} random instances did not meet a lemma's hypotheses and were skipped"));
    }
    report.elapsed = start.elapsed();
    report
}

enum Case {
    Checked(Graph, Result<(), String>),
    Skipped,
}

/// Replays one surgery of the given kind from its trial seed.
fn run_case(kind: &str, seed: u64, s2: Option<&SumGadget>) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = match kind {
        "excision" => excision(&mut rng),
        "edge-addition" => edge_addition(&mut rng),
        "pinch" => pinch(&mut rng),
        "glue" => glue(&mut rng, s2),
        "identify-cycles" => identify_cycles(&mut rng),
        _ => plug(&mut rng),
    };
    match out {
        Some((g, r)) => Case::Checked(g, r),
        None => Case::Skipped,
    }
}

type Outcome = Option<(Graph, Result<(), String>)>;

fn presentation(g: &Graph) -> Result<H1Presentation, String> {
    h1_presentation(g).map_err(|e| e.to_string())
}

/// `walks` project to a basis of `H_1(g')` and the rank is `rank`.
fn expect_basis(g2: &Graph, walks: &[ClosedWalk], rank: usize) -> Result<(), String> {
    let p = presentation(g2)?;
    if p.rank() != rank || !p.torsion().is_empty() {
        return Err(format!("rank {} torsion {:?}, predicted rank {rank}", p.rank(), p.torsion()));
    }
    let classes = walks.iter().map(|w| p.cycle_class(w)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    if !is_free_basis(&classes, rank) {
        return Err(format!("predicted cycles {:?} are not a basis", walks.iter().map(|w| w.vertices()).collect::<Vec<_>>()));
    }
    Ok(())
}

/// A basis of `H_1(g)` containing `c`, as an index into the returned list.
fn basis_containing(p: &H1Presentation, c: &ClosedWalk) -> Option<(Vec<ClosedWalk>, usize)> {
    let mut basis = p.basis_cycles().to_vec();
    for j in 0..basis.len() {
        let old = std::mem::replace(&mut basis[j], c.clone());
        let classes: Vec<_> = basis.iter().map(|w| p.cycle_class(w)).collect::<Result<_, _>>().ok()?;
        if is_free_basis(&classes, p.rank()) {
            return Some((basis, j));
        }
        basis[j] = old;
    }
    None
}

fn shortest_path(g: &Graph, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut path = vec![b];
            while *path.last().unwrap() != a {
                path.push(parent[*path.last().unwrap()]);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

fn in_induced_c4(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(v).iter().any(|&x| {
        x != u
            && !g.has_edge(u, x)
            && g.neighbors(u).iter().any(|&y| y != v && y != x && !g.has_edge(v, y) && g.has_edge(x, y))
    })
}

fn project(ws: &[ClosedWalk], f: &VertexMap) -> Vec<ClosedWalk> {
    ws.iter().map(|w| w.map(f)).collect()
}

/// Contracting an edge in no induced 4-cycle keeps `H_1`, and basis cycles map to a basis.
fn excision<R: Rng>(rng: &mut R) -> Outcome {
    let n = rng.gen_range(5..=9);
    let g = random_connected(rng, n, 0.3);
    let candidates: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| !in_induced_c4(&g, u, v)).collect();
    let (u, v) = pick(rng, &candidates)?;
    let p = presentation(&g).ok()?;
    if !p.torsion().is_empty() {
        return None;
    }
    let q = identify_vertices(&g, &[vec![u, v]]).ok()?;
    let r = expect_basis(&q.quotient, &project(p.basis_cycles(), &q.projection), p.rank());
    Some((g, r.map_err(|e| format!("contract {{{u},{v}}}: {e}"))))
}

/// Joining two vertices at distance at least 4 adds one free generator,
/// realised by any cycle through the new edge.
fn edge_addition<R: Rng>(rng: &mut R) -> Outcome {
    let n = rng.gen_range(7..=12);
    let g = random_connected(rng, n, 0.05);
    let a = rng.gen_range(0..n);
    let far: Vec<usize> = distances_from(&g, a).iter().enumerate().filter(|(_, d)| d.is_some_and(|d| d >= 4)).map(|(v, _)| v).collect();
    let b = pick(rng, &far)?;
    let p = presentation(&g).ok()?;
    if !p.torsion().is_empty() {
        return None;
    }
    let mut builder = g.builder_from();
    builder.add_edge(a, b);
    let g2 = builder.build();
    let mut walks = p.basis_cycles().to_vec();
    walks.push(ClosedWalk::new(shortest_path(&g, a, b)?));
    let r = expect_basis(&g2, &walks, p.rank() + 1);
    Some((g, r.map_err(|e| format!("add edge {{{a},{b}}}: {e}"))))
}

/// Identifying two far-apart vertices of a basis cycle adds a generator; the
/// two halves may replace the cycle, or one half may be added.
fn pinch<R: Rng>(rng: &mut R) -> Outcome {
    let k = rng.gen_range(8..=12);
    let hung = rng.gen_bool(0.5).then(|| rng.gen_range(4..=6));
    let g = cycle_with_attachments(rng, k, 0..4, hung);
    let c = base_cycle(rng, k);
    let p = presentation(&g).ok()?;
    let (basis, j) = basis_containing(&p, &c)?;
    let i = rng.gen_range(4..=k - 4);
    let (a, b) = (c.vertices()[0], c.vertices()[i]);
    let q = identify_vertices(&g, &[vec![a, b]]).ok()?;
    let c1 = ClosedWalk::new(c.vertices()[..i].to_vec()).map(&q.projection);
    let c2 = ClosedWalk::new(c.vertices()[i..].to_vec()).map(&q.projection);
    let mut replaced = project(&basis, &q.projection);
    replaced[j] = c1.clone();
    replaced.push(c2);
    let mut added = project(&basis, &q.projection);
    added.push(c1);
    let r = expect_basis(&q.quotient, &replaced, p.rank() + 1)
        .and_then(|_| expect_basis(&q.quotient, &added, p.rank() + 1));
    Some((g, r.map_err(|e| format!("pinch {a} and {b}: {e}"))))
}

/// Two graphs glued along isomorphic non-contractible cycles: the union of
/// their bases, with the shared cycle once.
fn glue<R: Rng>(rng: &mut R, s2: Option<&SumGadget>) -> Outcome {
    let (f, cf, h, ch) = match s2 {
        // two copies of S_2 along their Z cycles
        Some(s) if rng.gen_bool(0.25) => (s.graph.clone(), s.z.clone(), s.graph.clone(), s.z.clone()),
        _ => {
            let g = rng.gen_range(4..=6);
            let hung = |rng: &mut R| rng.gen_bool(0.5).then(|| rng.gen_range(4..=6));
            let (hf, hh) = (hung(rng), hung(rng));
            let f = cycle_with_attachments(rng, g, 0..4, hf);
            let h = cycle_with_attachments(rng, g, 0..4, hh);
            (f, base_cycle(rng, g), h, base_cycle(rng, g))
        }
    };
    let (pf, ph) = (presentation(&f).ok()?, presentation(&h).ok()?);
    let (bf, _) = basis_containing(&pf, &cf)?;
    let (mut bh, jh) = basis_containing(&ph, &ch)?;
    bh.remove(jh);
    let off = f.n();
    let u = disjoint_union(&f, &h);
    let classes: Vec<Vec<usize>> = cf.vertices().iter().zip(ch.vertices()).map(|(&x, &y)| vec![x, off + y]).collect();
    let q = identify_vertices(&u, &classes).ok()?;
    let mut walks = project(&bf, &q.projection);
    walks.extend(bh.iter().map(|w| w.map_with(|x| q.projection.apply(off + x))));
    let r = expect_basis(&q.quotient, &walks, pf.rank() + ph.rank() - 1);
    Some((u, r.map_err(|e| format!("glue along a {}-cycle: {e}", cf.len()))))
}

/// Identifying two independent far-apart cycles: drop one of them from the
/// basis and add the image of a path joining two identified vertices.
fn identify_cycles<R: Rng>(rng: &mut R) -> Outcome {
    let g = rng.gen_range(4..=6);
    let len = rng.gen_range(4..=6);
    // A on 0..g, B on g..2g, a path of `len` edges from A[0] to B[0]
    let mut b = crate::graph::GraphBuilder::new(0);
    for _ in 0..2 * g {
        b.add_vertex(true);
    }
    for v in 0..2 * g {
        let base = v / g * g;
        b.add_edge(v, base + (v - base + 1) % g);
    }
    let mut prev = 0;
    for _ in 1..len {
        let w = b.add_vertex(true);
        b.add_edge(prev, w);
        prev = w;
    }
    b.add_edge(prev, g);
    for _ in 0..rng.gen_range(0..3) {
        let u = rng.gen_range(0..b.n());
        let w = b.add_vertex(true);
        b.add_edge(u, w);
    }
    let graph = b.build();
    let a_cycle = ClosedWalk::new((0..g).collect());
    let rot = rng.gen_range(0..g);
    let flip = rng.gen_bool(0.5);
    let partner = |k: usize| g + if flip { (rot + g - k) % g } else { (k + rot) % g };
    let p = presentation(&graph).ok()?;
    let (mut basis, j) = basis_containing(&p, &a_cycle)?;
    basis.remove(j);
    let classes: Vec<Vec<usize>> = (0..g).map(|k| vec![k, partner(k)]).collect();
    let q = identify_vertices(&graph, &classes).ok()?;
    let path = shortest_path(&graph, 0, partner(0))?;
    let mut walks = project(&basis, &q.projection);
    walks.push(ClosedWalk::new(path[..path.len() - 1].to_vec()).map(&q.projection));
    let r = expect_basis(&q.quotient, &walks, p.rank());
    Some((graph, r.map_err(|e| format!("identify two {g}-cycles (rotation {rot}, flip {flip}): {e}"))))
}

/// Coning off a basis cycle removes exactly that generator.
fn plug<R: Rng>(rng: &mut R) -> Outcome {
    let k = rng.gen_range(4..=8);
    let hung = rng.gen_bool(0.5).then(|| rng.gen_range(4..=6));
    let g = cycle_with_attachments(rng, k, 0..4, hung);
    let c = base_cycle(rng, k);
    let p = presentation(&g).ok()?;
    let (mut basis, j) = basis_containing(&p, &c)?;
    basis.remove(j);
    let g2 = add_cone(&g, &c).ok()?;
    let r = expect_basis(&g2, &basis, p.rank() - 1);
    Some((g, r.map_err(|e| format!("plug a {k}-cycle: {e}"))))
}
