use proptest::prelude::*;

use homix_core::graph::{export_dot, make_complete, make_cycle, make_path, tensor_product, ClosedWalk, Graph};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (0..9usize).prop_flat_map(|n| {
        let pairs = n * (n + 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.3), pairs).prop_map(move |mask| {
            let all = (0..n).flat_map(|u| (u..n).map(move |v| (u, v)));
            Graph::from_edges(n, all.zip(mask).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn json_round_trip(g in arb_graph()) {
        let text = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn dot_is_deterministic(g in arb_graph()) {
        prop_assert_eq!(export_dot(&g, &[]), export_dot(&g.clone(), &[]));
    }
}

#[test]
fn dot_of_the_square() {
    let dot = export_dot(&make_cycle(4, true), &[]);
    let body: Vec<&str> = dot.lines().map(str::trim).filter(|l| l.ends_with(';')).collect();
    let nodes = body.iter().filter(|l| !l.contains("--")).count();
    let loops = body.iter().filter(|l| l.split(" -- ").next() == l.split(" -- ").nth(1).map(|x| x.trim_end_matches(';'))).count();
    let edges = body.len() - nodes - loops;
    assert_eq!((nodes, edges, loops), (4, 4, 4));
}

#[test]
fn highlighted_walk_colours_its_edges() {
    let g = make_cycle(6, false);
    let w = ClosedWalk::new(vec![0, 1, 2, 3, 4, 5]);
    let dot = export_dot(&g, &[("hex".into(), w)]);
    assert_eq!(dot.lines().filter(|l| l.contains("label=\"hex\"")).count(), 6);
}

#[test]
fn product_sizes() {
    // P_l × C_g with loops everywhere: (l+1)g vertices, each looped
    for (l, g) in [(1, 4), (3, 5), (4, 6)] {
        let p = tensor_product(&make_path(l, true), &make_cycle(g, true));
        assert_eq!(p.n(), (l + 1) * g);
        assert!(p.is_reflexive());
        // degree sum: closed-neighbourhood sizes multiply, then drop the loops
        let deg_sum: usize = (0..p.n()).map(|v| p.degree(v)).sum();
        let closed = |k: usize, inner: usize| 3 * k - (k - inner);
        let want = closed(l + 1, l - 1) * 3 * g - (l + 1) * g;
        assert_eq!(deg_sum, want);
    }
    assert_eq!(make_complete(4, false).edge_count(), 6);
}
