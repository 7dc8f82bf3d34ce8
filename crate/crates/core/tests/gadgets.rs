use std::collections::{HashMap, VecDeque};

use homix_core::gadgets::{alpha_map, beta_map, build_ga, build_gstar, build_sum_gadget, find_ell, verify_nt_basis};
use homix_core::graph::{make_complete, make_cycle, make_path, Graph};
use homix_core::homology::h1_presentation;

/// Hom-graph distance from `β` to each `α_i` in `Hom(C_{sg}, C_g)` with vertex 0
/// pinned to 0, by listing every map and testing adjacency pairwise.
fn brute_force_distances(s: usize, g: usize) -> Vec<usize> {
    let n = s * g;
    let adj = |a: usize, b: usize| a == b || (a + 1) % g == b || (b + 1) % g == a;
    let mut maps: Vec<Vec<usize>> = vec![vec![0]];
    for _ in 1..n {
        let mut next = Vec::new();
        for m in &maps {
            for x in (0..g).filter(|&x| adj(*m.last().unwrap(), x)) {
                next.push([m.as_slice(), &[x]].concat());
            }
        }
        maps = next;
    }
    maps.retain(|m| adj(m[n - 1], m[0]));
    let index: HashMap<&Vec<usize>, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // φ ~ ψ on a reflexive cycle: φ(u) ~ ψ(v) for v ∈ {u-1, u, u+1}
    let near = |p: &[usize], q: &[usize]| (0..n).all(|u| [n - 1, 0, 1].iter().all(|d| adj(p[u], q[(u + d) % n])));
    let start = index[&beta_map(s, g).unwrap().into_vec()];
    let mut dist = vec![usize::MAX; maps.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for j in 0..maps.len() {
            if dist[j] == usize::MAX && near(&maps[i], &maps[j]) {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    (0..s).map(|k| dist[index[&alpha_map(k, s, g).unwrap().into_vec()]]).collect()
}

#[test]
fn ell_for_two_four_matches_brute_force() {
    let w = find_ell(2, 4).unwrap();
    assert_eq!(w.distances, brute_force_distances(2, 4));
    assert_eq!(w.ell, 4);
}

#[test]
fn ell_goldens() {
    for (s, g, ell) in [(3, 4, 4), (2, 5, 5)] {
        assert_eq!(find_ell(s, g).unwrap().ell, ell, "(s, g) = ({s}, {g})");
    }
}

#[test]
#[ignore = "several minutes: the Hom-graph search for (3, 5) is large"]
fn ell_three_five() {
    assert_eq!(find_ell(3, 5).unwrap().ell, 5);
}

#[test]
fn sum_gadget_sizes() {
    let s2 = build_sum_gadget(2, 4).unwrap();
    assert_eq!((s2.graph.n(), s2.graph.edge_count()), (43, 156));
    let s3 = build_sum_gadget(3, 4).unwrap();
    assert_eq!((s3.graph.n(), s3.graph.edge_count()), (62, 228));
}

fn source(name: &str) -> Graph {
    match name {
        "K1" => make_complete(1, false),
        "K2" => make_complete(2, false),
        "P3" => make_path(3, false),
        "K3" => make_complete(3, false),
        "K4" => make_complete(4, false),
        _ => unreachable!(),
    }
}

/// `(|G^a|, rank H_1(G^a), |G*|, plugs, |T*|, rank H_1(G*), end cycles)`, frozen from the first run.
const REDUCTION_GOLDENS: [(&str, [usize; 7]); 5] = [
    ("K1", [167, 6, 170, 3, 23, 3, 7]),
    ("K2", [435, 14, 444, 9, 60, 5, 16]),
    ("P3", [971, 30, 992, 21, 134, 9, 34]),
    ("K3", [808, 25, 826, 18, 112, 7, 28]),
    ("K4", [1286, 39, 1316, 30, 179, 9, 43]),
];

#[test]
fn reduction_goldens() {
    let c4 = make_cycle(4, true);
    for (name, want) in REDUCTION_GOLDENS {
        let g = source(name);
        let ga = build_ga(&g, &c4).unwrap().artifact;
        let ga_rank = h1_presentation(&ga.gstar).unwrap().rank();
        // holds for every source measured here
        assert_eq!(ga_rank, 1 + 5 * g.n() + 3 * g.edge_count(), "{name}");
        let r = build_gstar(&g, &c4).unwrap();
        let nt = verify_nt_basis(&r).unwrap();
        let got = [ga.gstar.n(), ga_rank, r.gstar.n(), r.plug_vertices.len(), r.tstar.len(), nt.rank, nt.end_cycles];
        assert_eq!(got, want, "{name}");
        assert_eq!(nt.predicted_rank, 2 * g.n() + 1);
        assert!(nt.passed, "{name}: {nt:?}");
    }
}

#[test]
fn artifact_json_round_trip() {
    let r = build_gstar(&make_complete(1, false), &make_cycle(4, true)).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: homix_core::gadgets::ReductionArtifact = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert!(back.walk("Zstar").is_some());
    assert!(back.walk("S3[0].Z").is_some());
}
