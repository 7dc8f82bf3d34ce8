use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{trial_seeds, VerificationReport};
use crate::config::RunConfig;
use crate::graph::{make_cycle, make_path, tensor_product, ClosedWalk};
use crate::homology::h1_presentation;
use crate::homsearch::sample_homs;

/// Sampled maps `P_ℓ × C_g -> H` (`ℓ <= 4`, `g ∈ {4, 5}`, `H` a reflexive 4-, 5-
/// or 6-cycle) send every slice to the same class. Half of the samples pin
/// slice 0 to a winding walk when the target is short enough to allow one.
pub fn slice_invariance(cfg: &RunConfig) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("slice-invariance", cfg.seed);
    let targets: Vec<_> = [4, 5, 6].into_iter().map(|m| make_cycle(m, true)).collect();
    let pres: Vec<_> = targets.iter().map(|h| h1_presentation(h).expect("cycle homology")).collect();
    let mut nonzero = 0;
    for ts in trial_seeds(cfg.seed, cfg.trials) {
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let ell = rng.gen_range(1..=4);
        let g = rng.gen_range(4..=5);
        let k = rng.gen_range(0..targets.len());
        let (h, ph) = (&targets[k], &pres[k]);
        let m = h.n();
        let pins: Vec<(usize, usize)> =
            if g >= m && rng.gen_bool(0.5) { (0..g).map(|x| (x, x.min(m - 1))).collect() } else { Vec::new() };
        let p = tensor_product(&make_path(ell, true), &make_cycle(g, true));
        let input = || json!({ "ell": ell, "g": g, "target": m, "pins": pins });
        let phi = match sample_homs(&p, h, &pins, 1, rng.gen(), &cfg.budget) {
            Ok(s) if !s.maps.is_empty() => s.maps[0].clone(),
            Ok(_) => {
                report.check("sample", ts, input, Err("no homomorphism exists".into()));
                continue;
            }
            Err(_) => {
                report.inconclusive += 1;
                continue;
            }
        };
        let classes: Result<Vec<_>, _> = (0..=ell)
            .map(|t| ph.cycle_class(&ClosedWalk::new((0..g).map(|x| phi.apply(t * g + x)).collect())))
            .collect();
        let r = match classes {
            Ok(cs) if cs.windows(2).all(|w| w[0] == w[1]) => {
                nonzero += usize::from(!cs[0].is_zero());
                Ok(())
            }
            Ok(cs) => Err(format!("slice classes differ: {:?}", cs.iter().map(|c| &c.free).collect::<Vec<_>>())),
            Err(e) => Err(e.to_string()),
        };
        report.check(format!("P{ell} x C{g} -> C{m}"), ts, || json!({ "ell": ell, "g": g, "target": m, "map": phi }), r);
    }
    report.note(format!("{} sampled maps, {nonzero} with a non-zero slice class", report.cases));
    report.elapsed = start.elapsed();
    report
}
