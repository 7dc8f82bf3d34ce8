mod common;

use proptest::prelude::*;

use homix_core::graph::{make_cycle, ClosedWalk, Graph};
use homix_core::homology::{h1_presentation, smith_normal_form, IntMatrix};

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.45), n * (n - 1) / 2).prop_map(move |m| graph_from_mask(n, &m))
    })
}

/// A path `0-1-...-(n-1)` plus random chords, so every pair is joined.
fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * (n - 1) / 2).prop_map(move |mut m| {
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if v == u + 1 {
                        m[k] = true;
                    }
                    k += 1;
                }
            }
            graph_from_mask(n, &m)
        })
    })
}

/// A closed walk at vertex 0 from a sequence of neighbour choices, closed by
/// walking the spanning path back down to 0.
fn closed_walk(g: &Graph, choices: &[usize]) -> ClosedWalk {
    let mut walk = vec![0];
    for &c in choices {
        let cur = *walk.last().unwrap();
        let ns = g.neighbors(cur);
        walk.push(ns[c % ns.len()]);
    }
    let mut cur = *walk.last().unwrap();
    while cur > 0 {
        cur -= 1;
        walk.push(cur);
    }
    if walk.len() > 1 {
        walk.pop();
    }
    ClosedWalk::new(walk)
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_matches_minor_oracle(m in arb_matrix()) {
        let snf = smith_normal_form(&IntMatrix::from_rows(&m));
        let got: Vec<String> = snf.invariant_factors().iter().map(|x| x.to_string()).collect();
        let want: Vec<String> = common::invariant_factors_by_minors(&m).iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(got, want);
        let a = IntMatrix::from_rows(&m);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert!(snf.v.mul(&snf.v_inv) == IntMatrix::identity(snf.v.rows()));
    }

    #[test]
    fn rank_matches_rational_oracle(g in arb_graph(8)) {
        let p = h1_presentation(&g).unwrap();
        prop_assert_eq!(p.rank(), common::betti_one(&g));
        prop_assert_eq!(p.basis_cycles().len(), p.rank());
    }

    #[test]
    fn loops_do_not_change_homology(g in arb_graph(7)) {
        let a = h1_presentation(&g).unwrap();
        let b = h1_presentation(&g.reflexive_closure()).unwrap();
        prop_assert_eq!(a.rank(), b.rank());
        prop_assert_eq!(a.torsion(), b.torsion());
    }

    #[test]
    fn classes_add_and_negate(
        g in arb_connected(8),
        x in proptest::collection::vec(0usize..8, 0..12),
        y in proptest::collection::vec(0usize..8, 0..12),
    ) {
        let p = h1_presentation(&g).unwrap();
        let (a, b) = (closed_walk(&g, &x), closed_walk(&g, &y));
        let ab = a.concat(&b).unwrap();
        let (ca, cb) = (p.cycle_class(&a).unwrap(), p.cycle_class(&b).unwrap());
        prop_assert_eq!(p.cycle_class(&ab).unwrap(), p.add(&ca, &cb));
        prop_assert_eq!(p.cycle_class(&a.reversed()).unwrap(), p.neg(&ca));
    }

    #[test]
    fn basis_cycles_have_unit_coordinates(g in arb_graph(8)) {
        let p = h1_presentation(&g).unwrap();
        for (i, c) in p.basis_cycles().iter().enumerate() {
            c.validate(&g).unwrap();
            let class = p.cycle_class(c).unwrap();
            let unit: Vec<i64> = (0..p.rank()).map(|j| i64::from(i == j)).collect();
            prop_assert_eq!(class.free, unit);
        }
    }
}

#[test]
fn cycle_generator_winds_once() {
    for g in 4..=7 {
        let c = make_cycle(g, true);
        let p = h1_presentation(&c).unwrap();
        let w = ClosedWalk::new((0..g).collect());
        let twice = w.concat(&w).unwrap();
        let one = p.cycle_class(&w).unwrap();
        assert_eq!(one.free.iter().map(|x| x.abs()).sum::<i64>(), 1);
        assert_eq!(p.cycle_class(&twice).unwrap(), p.add(&one, &one));
    }
    // a triangle is a boundary
    let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(h1_presentation(&k3).unwrap().rank(), 0);
}

#[test]
fn octahedron_is_a_sphere() {
    // the clique complex of the octahedron is a 2-sphere: no 1-dimensional holes
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if v != u + 3 {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(6, edges).unwrap();
    let p = h1_presentation(&g).unwrap();
    assert_eq!((p.rank(), p.torsion().len()), (0, 0));
}
