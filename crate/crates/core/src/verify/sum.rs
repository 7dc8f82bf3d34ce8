use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{trial_seeds, VerificationReport};
use crate::config::RunConfig;
use crate::gadgets::{build_sum_gadget, check_sum_gadget, gamma_colouring, SumGadget};
use crate::graph::{make_cycle, Homomorphism};
use crate::homology::{h1_presentation, is_flat, ClassVector, H1Presentation};
use crate::homsearch::{sample_homs, single_vertex_walk};

pub const SUM_GADGET_PARAMS: [(usize, usize); 3] = [(2, 4), (3, 4), (2, 5)];

/// Builds `S_s` for each parameter pair and checks its homology and the `Γ_i`,
/// then samples maps `S_s -> Z` and checks `[Z] = Σ [A_i]` on their images,
/// that a flat `Z` forces flat slices, that girth-length cycles map to
/// coordinates in `{0, ±1}`, and, on `S_2`, that `[A_0] = [A_1] = ±e` never occurs.
pub fn sum_gadget(cfg: &RunConfig) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("sum-gadget", cfg.seed);
    let per = cfg.trials.div_ceil(SUM_GADGET_PARAMS.len());
    let mut seeds = trial_seeds(cfg.seed, per * SUM_GADGET_PARAMS.len()).into_iter();
    for (s, g) in SUM_GADGET_PARAMS {
        let case = format!("S{s} over C{g}");
        let sg = match build_sum_gadget(s, g) {
            Ok(sg) => sg,
            Err(e) => {
                report.check(case, cfg.seed, || json!({ "s": s, "g": g }), Err(e.to_string()));
                continue;
            }
        };
        report.check(format!("{case}: structure"), cfg.seed, || json!({ "s": s, "g": g }), structure(&sg));
        report.note(format!("S{s} over C{g}: ell = {}, {} vertices", sg.ell, sg.graph.n()));
        for ts in seeds.by_ref().take(per) {
            match sampled(&sg, ts, cfg) {
                Some((phi, r)) => report.check(format!("{case}: sample"), ts, || json!({ "s": s, "g": g, "map": phi }), r),
                None => report.inconclusive += 1,
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

fn structure(sg: &SumGadget) -> Result<(), String> {
    let p = check_sum_gadget(sg).map_err(|e| e.to_string())?;
    if p.rank() != sg.s {
        return Err(format!("rank {} != {}", p.rank(), sg.s));
    }
    let z = make_cycle(sg.g, true);
    for i in 0..sg.s {
        let gamma = gamma_colouring(sg, i).map_err(|e| e.to_string())?;
        if is_flat(&sg.graph, &z, &gamma).map_err(|e| e.to_string())? {
            return Err(format!("Gamma_{i} is flat"));
        }
    }
    Ok(())
}

/// A map `S -> C_g`: a plain random sample, or a random walk from some `Γ_i`
/// followed by a random symmetry of the cycle.
fn sampled(sg: &SumGadget, seed: u64, cfg: &RunConfig) -> Option<(Homomorphism, Result<(), String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = sg.g;
    let z = make_cycle(g, true);
    let phi = if rng.gen_bool(0.5) {
        sample_homs(&sg.graph, &z, &[], 1, rng.gen(), &cfg.budget).ok()?.maps.pop()?
    } else {
        let gamma = gamma_colouring(sg, rng.gen_range(0..sg.s)).ok()?;
        let walked = single_vertex_walk(&sg.graph, &z, &gamma, 3 * sg.graph.n(), &mut rng);
        let (rot, flip) = (rng.gen_range(0..g), rng.gen_bool(0.5));
        Homomorphism::new_unchecked(
            walked.as_slice().iter().map(|&x| (if flip { g - x } else { x } + rot) % g).collect(),
        )
    };
    let pz = h1_presentation(&z).ok()?;
    let r = check_sample(sg, &phi, &pz);
    Some((phi, r))
}

fn check_sample(sg: &SumGadget, phi: &Homomorphism, pz: &H1Presentation) -> Result<(), String> {
    let class = |w: &crate::graph::ClosedWalk| pz.cycle_class(&w.map_with(|v| phi.apply(v))).map_err(|e| e.to_string());
    let cz = class(&sg.z)?;
    let ca: Vec<ClassVector> = sg.a.iter().map(class).collect::<Result<_, _>>()?;
    let sum = ca.iter().fold(pz.zero(), |acc, c| pz.add(&acc, c));
    if cz != sum {
        return Err(format!("[Z] = {:?} but the A classes are {:?}", cz.free, ca.iter().map(|c| &c.free).collect::<Vec<_>>()));
    }
    if cz.is_zero() {
        for (t, w) in sg.gadget_cycles[..sg.ell].iter().enumerate() {
            if !class(w)?.is_zero() {
                return Err(format!("[Z] = 0 but slice {t} is not flat"));
            }
        }
    }
    for c in std::iter::once(&cz).chain(&ca) {
        if c.free.iter().any(|x| x.abs() > 1) {
            return Err(format!("a {}-cycle maps to class {:?}", sg.g, c.free));
        }
    }
    if sg.s == 2 && !ca[0].is_zero() && ca[0] == ca[1] {
        return Err(format!("both A cycles map to {:?}; the twisted gluing would see opposite generators", ca[0].free));
    }
    Ok(())
}
