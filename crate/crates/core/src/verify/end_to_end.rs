use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{trial_seeds, VerificationReport};
use crate::config::RunConfig;
use crate::gadgets::{build_gstar, extract_colouring, nt_report_without_last_plug, verify_nt_basis, witness_hom, ReductionArtifact, ThreeColouring};
use crate::graph::{make_complete, make_cycle, make_path, Graph};
use crate::homology::{h1_presentation, is_flat_with, H1Presentation};
use crate::homsearch::{sample_homs, single_vertex_walk};

/// The positive sources and their names.
pub fn positive_sources() -> Vec<(&'static str, Graph)> {
    vec![
        ("K1", make_complete(1, false)),
        ("K2", make_complete(2, false)),
        ("P3", make_path(3, false)),
        ("K3", make_complete(3, false)),
    ]
}

/// For 3-colourable sources: `G*` builds, its `H_1` is spanned by end
/// gadget-cycles (and stops being so when a plug is removed), every proper
/// colouring gives a non-flat witness that extracts back, and maps reached
/// from a witness by random single-vertex moves extract to a proper colouring.
/// For `K_4`: sampled maps `G* -> C_4` are all flat.
pub fn end_to_end(cfg: &RunConfig) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("end-to-end", cfg.seed);
    let c4 = make_cycle(4, true);
    let mut seeds = trial_seeds(cfg.seed, 64).into_iter();
    for (name, g) in positive_sources() {
        let input = || json!({ "source": name });
        let r = match build_gstar(&g, &c4) {
            Ok(r) => r,
            Err(e) => {
                report.check(format!("{name}: build"), cfg.seed, input, Err(e.to_string()));
                continue;
            }
        };
        let nt = verify_nt_basis(&r).map_err(|e| e.to_string()).and_then(|rep| {
            if rep.passed {
                Ok(())
            } else {
                Err(format!("{rep:?}"))
            }
        });
        report.check(format!("{name}: nt-basis"), cfg.seed, input, nt);
        let mutated = nt_report_without_last_plug(&r).map_err(|e| e.to_string()).and_then(|rep| {
            if !rep.passed && rep.rank == rep.predicted_rank + 1 {
                Ok(())
            } else {
                Err(format!("dropping a plug gave {rep:?}"))
            }
        });
        report.check(format!("{name}: plug mutation"), cfg.seed, input, mutated);
        let (ps, pt) = match (h1_presentation(&r.gstar), h1_presentation(&c4)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let colourings = ThreeColouring::all_proper(&g);
        report.note(format!(
            "{name}: G* has {} vertices ({} plugs), {} proper colourings",
            r.gstar.n(),
            r.plug_vertices.len(),
            colourings.len()
        ));
        for c in colourings {
            let ts = seeds.next().unwrap_or(cfg.seed);
            let res = witness_round_trip(&r, &c, &ps, &pt, ts);
            report.check(format!("{name}: colouring {:?}", c.0), ts, || json!({ "source": name, "colouring": c.0 }), res);
        }
    }

    let k4 = make_complete(4, false);
    match build_gstar(&k4, &c4) {
        Ok(r) => {
            let k = cfg.trials.max(100);
            match (sample_homs(&r.gstar, &c4, &[], k, cfg.seed, &cfg.budget), h1_presentation(&r.gstar), h1_presentation(&c4)) {
                (Ok(s), Ok(ps), Ok(pt)) => {
                    for (i, phi) in s.maps.iter().enumerate() {
                        let res = match is_flat_with(&ps, phi, &pt) {
                            Ok(true) => Ok(()),
                            Ok(false) => Err(format!("non-flat map found; extraction says {:?}", extract_colouring(&r, phi))),
                            Err(e) => Err(e.to_string()),
                        };
                        report.check(format!("K4: sample {i}"), cfg.seed, || json!({ "source": "K4", "map": phi }), res);
                    }
                    report.note(format!(
                        "K4: {} sampled maps G* -> C4 (G* has {} vertices); this is a sample, not an exhaustive check",
                        s.maps.len(),
                        r.gstar.n()
                    ));
                }
                (Err(_), _, _) => report.inconclusive += 1,
                _ => report.check("K4: homology", cfg.seed, || json!({ "source": "K4" }), Err("homology failed".into())),
            }
        }
        Err(e) => report.check("K4: build", cfg.seed, || json!({ "source": "K4" }), Err(e.to_string())),
    }
    report.elapsed = start.elapsed();
    report
}

fn witness_round_trip(r: &ReductionArtifact, c: &ThreeColouring, ps: &H1Presentation, pt: &H1Presentation, seed: u64) -> Result<(), String> {
    let phi = witness_hom(r, c).map_err(|e| e.to_string())?;
    if is_flat_with(ps, &phi, pt).map_err(|e| e.to_string())? {
        return Err("witness is flat".into());
    }
    let zero = r.zcycle_h.basepoint();
    if r.tstar.iter().chain(&r.plug_vertices).any(|&v| phi.apply(v) != zero) {
        return Err("witness is not 0 on T* and the plugs".into());
    }
    let class = |w: &crate::graph::ClosedWalk| pt.cycle_class(&w.map_with(|v| phi.apply(v))).map_err(|e| e.to_string());
    let z = class(&r.zstar)?;
    if z.free.iter().map(|x| x.abs()).sum::<i64>() != 1 {
        return Err(format!("[phi(Z*)] = {:?} is not a generator", z.free));
    }
    for (v, cycles) in r.av.iter().enumerate() {
        for (i, w) in cycles.iter().enumerate() {
            let a = class(w)?;
            let ok = if i == c.colour(v) { a == z } else { a.is_zero() };
            if !ok {
                return Err(format!("[phi(A_{v}_{i})] = {:?}", a.free));
            }
        }
    }
    if extract_colouring(r, &phi).map_err(|e| e.to_string())? != *c {
        return Err("extraction does not return the colouring".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..2 {
        let psi = single_vertex_walk(&r.gstar, &r.target, &phi, r.gstar.n(), &mut rng);
        let back = extract_colouring(r, &psi).map_err(|e| format!("after a random walk: {e}"))?;
        back.check(&r.source).map_err(|e| e.to_string())?;
    }
    Ok(())
}
