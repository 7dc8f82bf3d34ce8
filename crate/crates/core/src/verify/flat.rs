use serde_json::json;

use super::VerificationReport;
use crate::config::RunConfig;
use crate::graph::{is_connected, make_cycle, Graph, GraphBuilder, GraphJson};
use crate::homology::{h1_presentation, is_flat_with};
use crate::homsearch::mix_bruteforce;

/// Every connected reflexive graph on `n` labelled vertices.
pub fn connected_reflexive_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let mut b = GraphBuilder::new(0);
            for _ in 0..n {
                b.add_vertex(true);
            }
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    b.add_edge(u, v);
                }
            }
            b.build()
        })
        .filter(is_connected)
        .collect()
}

/// Exhaustively compares flatness with membership in a component holding a
/// constant map: all connected reflexive sources on at most 4 vertices into the
/// reflexive 4-cycle, at most 3 into the 5-cycle, and reflexive 4-, 5- and
/// 6-cycles into both.
pub fn flat_equals_constant_component(cfg: &RunConfig) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("flat-equals-constant-component", cfg.seed);
    let mut pairs: Vec<(Graph, Graph)> = Vec::new();
    for (m, max_n) in [(4, 4), (5, 3)] {
        for n in 1..=max_n {
            for g in connected_reflexive_graphs(n) {
                pairs.push((g, make_cycle(m, true)));
            }
        }
        for k in 4..=6 {
            pairs.push((make_cycle(k, true), make_cycle(m, true)));
        }
    }
    let (mut flat, mut nonflat) = (0, 0);
    for (g, h) in &pairs {
        let case = format!("{}-vertex source into C{}", g.n(), h.n());
        let input = || json!({ "source": GraphJson::from(g), "target": GraphJson::from(h) });
        let hg = match mix_bruteforce(g, h, &cfg.budget) {
            Ok(r) => r,
            Err(_) => {
                report.inconclusive += 1;
                continue;
            }
        };
        let (pg, ph) = match (h1_presentation(g), h1_presentation(h)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                report.check(case, cfg.seed, input, Err("homology failed".into()));
                continue;
            }
        };
        let constant = hg.constant_components();
        for (phi, c) in hg.maps.iter().zip(&hg.component_of) {
            let is_flat = is_flat_with(&pg, phi, &ph).unwrap_or(false);
            let in_constant = constant.binary_search(c).is_ok();
            if is_flat { flat += 1 } else { nonflat += 1 }
            let r = match (is_flat, in_constant) {
                (true, false) => Err(format!("{:?} is flat but not in a constant component", phi.as_slice())),
                (false, true) => Err(format!("{:?} is non-flat but shares a component with a constant", phi.as_slice())),
                _ => Ok(()),
            };
            report.check(case.clone(), cfg.seed, input, r);
        }
    }
    report.note(format!("{} graph pairs, {flat} flat and {nonflat} non-flat maps", pairs.len()));
    report.elapsed = start.elapsed();
    report
}
