//! Independent oracles shared by the integration tests. Nothing here calls the
//! code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use homix_core::graph::Graph;

/// All trees on `n` vertices up to isomorphism, as edge lists.
pub fn unlabelled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size {
                let mut e = t.clone();
                e.push((v, size));
                if seen.insert(tree_canon(size + 1, &e)) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    level
}

pub fn tree_graph(n: usize, edges: &[(usize, usize)], reflexive: bool) -> Graph {
    let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
    if reflexive {
        g.reflexive_closure()
    } else {
        g
    }
}

/// Rooted-tree encoding at each centre, minimised.
fn tree_canon(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    // peel leaves to find the centre(s)
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    fn enc(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| enc(adj, w, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    layer.iter().map(|&c| enc(&adj, c, usize::MAX)).min().unwrap()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free determinant.
fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let k = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if m[i][i] == 0 {
            match (i + 1..k).find(|&r| m[r][i] != 0) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
            }
        }
        prev = m[i][i];
    }
    sign * m[k - 1][k - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors, and the factors are `d_k / d_{k-1}` up to the rank.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        'outer: for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                d = gcd(d, bareiss(minor));
                if d == 1 {
                    break 'outer;
                }
            }
        }
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

/// Rank over the rationals by fraction-free elimination.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let (x, y) = (a[rank][c], a[r][c]);
                for j in 0..cols {
                    a[r][j] = a[r][j] * x - a[rank][j] * y;
                }
                let g = a[r].iter().fold(0, |g, &v| gcd(g, v));
                if g > 1 {
                    a[r].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `rank H_1` of the clique complex over the rationals:
/// `dim ker ∂1 - rank ∂2 = (E - V + components) - rank ∂2`.
pub fn betti_one(g: &Graph) -> usize {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut tris = Vec::new();
    for &(a, b) in &edges {
        for c in b + 1..n {
            if g.has_edge(a, c) && g.has_edge(b, c) {
                tris.push((a, b, c));
            }
        }
    }
    let idx = |u: usize, v: usize| edges.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let d2: Vec<Vec<i64>> = tris
        .iter()
        .map(|&(a, b, c)| {
            let mut row = vec![0; edges.len()];
            row[idx(b, c)] += 1;
            row[idx(a, c)] -= 1;
            row[idx(a, b)] += 1;
            row
        })
        .collect();
    let comps = count_components(g);
    edges.len() + comps - n - rational_rank(&d2)
}

fn count_components(g: &Graph) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}
