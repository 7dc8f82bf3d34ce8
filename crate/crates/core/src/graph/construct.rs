//! Graph constructions: paths, cycles, categorical products, quotients and cones.

use super::{ClosedWalk, Graph, GraphBuilder, GraphError, VertexMap};

/// Path on vertices `0..=len`, looped everywhere when `reflexive`.
pub fn make_path(len: usize, reflexive: bool) -> Graph {
    let mut b = GraphBuilder::new(len + 1);
    for v in 0..len {
        b.add_edge(v, v + 1);
    }
    if reflexive {
        (0..=len).for_each(|v| b.add_loop(v));
    }
    b.name(format!("P{len}")).build()
}

/// Cycle `0 - 1 - ... - (g-1) - 0`.
///
/// Degenerate girths are accepted: `g = 1` is a looped point and `g = 2` a single edge.
pub fn make_cycle(g: usize, reflexive: bool) -> Graph {
    assert!(g >= 1, "cycle needs at least one vertex");
    let mut b = GraphBuilder::new(g);
    match g {
        1 => b.add_loop(0),
        2 => b.add_edge(0, 1),
        _ => {
            for v in 0..g {
                b.add_edge(v, (v + 1) % g);
            }
        }
    }
    if reflexive {
        (0..g).for_each(|v| b.add_loop(v));
    }
    b.name(format!("C{g}")).build()
}

/// Complete graph `K_n`.
pub fn make_complete(n: usize, reflexive: bool) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            b.add_edge(u, v);
        }
        if reflexive {
            b.add_loop(u);
        }
    }
    b.name(format!("K{n}")).build()
}

/// Categorical product. Vertex `(a, b)` gets index `a * |B| + b`.
///
/// `(a, b) ~ (a', b')` iff `a ~ a'` and `b ~ b'`, where a loop supplies `a ~ a`.
pub fn tensor_product(a: &Graph, b: &Graph) -> Graph {
    let nb = b.n();
    let mut out = GraphBuilder::new(a.n() * nb);
    let closed = |g: &Graph, v: usize| -> Vec<usize> {
        let mut ns = g.neighbors(v).to_vec();
        if g.has_loop(v) {
            ns.push(v);
        }
        ns
    };
    for x in 0..a.n() {
        let nx = closed(a, x);
        for y in 0..nb {
            let ny = closed(b, y);
            for &x2 in &nx {
                for &y2 in &ny {
                    out.add_edge(x * nb + y, x2 * nb + y2);
                }
            }
        }
    }
    let name = format!("{}x{}", a.name().unwrap_or("A"), b.name().unwrap_or("B"));
    out.name(name).build()
}

/// Disjoint union; the vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    let mut out = a.builder_from();
    for v in 0..b.n() {
        out.add_vertex(b.has_loop(v));
    }
    for (u, v) in b.edges() {
        out.add_edge(u + off, v + off);
    }
    out.build()
}

/// A quotient graph together with the projection onto it.
#[derive(Clone, Debug)]
pub struct IdentificationResult {
    pub quotient: Graph,
    pub projection: VertexMap,
}

/// Identifies each class of `classes` to a single vertex.
///
/// The quotient has an edge between two classes iff some pair of members was
/// adjacent, and a loop on a class iff a member was looped or two members were
/// adjacent. Classes are numbered by their smallest member, so an empty
/// partition gives back the same graph under the identity projection.
pub fn identify_vertices(g: &Graph, classes: &[Vec<usize>]) -> Result<IdentificationResult, GraphError> {
    let n = g.n();
    let mut rep: Vec<usize> = (0..n).collect();
    let mut claimed = vec![false; n];
    for class in classes {
        let Some(&min) = class.iter().min() else { continue };
        for &v in class {
            g.check_vertex(v)?;
            if claimed[v] {
                return Err(GraphError::OverlappingClasses(v));
            }
            claimed[v] = true;
            rep[v] = min;
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if rep[v] == v {
            new_id[v] = count;
            count += 1;
        }
    }
    let proj: Vec<usize> = (0..n).map(|v| new_id[rep[v]]).collect();
    let mut b = GraphBuilder::new(count);
    for (u, v) in g.edges() {
        b.add_edge(proj[u], proj[v]);
    }
    for v in g.loop_vertices() {
        b.add_loop(proj[v]);
    }
    let mut quotient = b.build();
    if let Some(name) = g.name() {
        quotient = quotient.with_name(name);
    }
    Ok(IdentificationResult { quotient, projection: VertexMap::new(proj) })
}

/// Adds a new vertex adjacent to every vertex of `cycle`, looped when `g` is reflexive.
/// The new vertex gets index `g.n()`.
pub fn add_cone(g: &Graph, cycle: &ClosedWalk) -> Result<Graph, GraphError> {
    cycle.validate(g)?;
    let mut seen = vec![false; g.n()];
    for &v in cycle.vertices() {
        if std::mem::replace(&mut seen[v], true) {
            return Err(GraphError::RepeatedVertex(v));
        }
    }
    let mut b = g.builder_from();
    let apex = b.add_vertex(g.n() > 0 && g.is_reflexive());
    for &v in cycle.vertices() {
        b.add_edge(apex, v);
    }
    let mut out = b.build();
    if let Some(name) = g.name() {
        out = out.with_name(name);
    }
    Ok(out)
}

/// Subgraph induced on `keep`, renumbered in the order given. The returned map
/// sends each new vertex to its original index.
pub fn induced_subgraph(g: &Graph, keep: &[usize]) -> Result<(Graph, VertexMap), GraphError> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        g.check_vertex(v)?;
        if pos[v] != usize::MAX {
            return Err(GraphError::RepeatedVertex(v));
        }
        pos[v] = i;
    }
    let mut b = GraphBuilder::new(keep.len());
    for (i, &v) in keep.iter().enumerate() {
        if g.has_loop(v) {
            b.add_loop(i);
        }
        for &w in g.neighbors(v) {
            if pos[w] != usize::MAX && pos[w] > i {
                b.add_edge(i, pos[w]);
            }
        }
    }
    Ok((b.build(), VertexMap::new(keep.to_vec())))
}
