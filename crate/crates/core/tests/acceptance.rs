//! Acceptance gate: each criterion runs at its stated size and time limit and
//! prints one PASS/FAIL line. Runs without the libtest harness so the lines
//! always show; exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homix_core::config::{Budget, RunConfig};
use homix_core::gadgets::{
    build_gstar, build_sum_gadget, check_sum_gadget, extract_colouring, gamma_colouring, verify_nt_basis, witness_hom,
    ThreeColouring,
};
use homix_core::graph::{make_complete, make_cycle, make_path, tensor_product, Graph, Homomorphism};
use homix_core::homology::{h1_presentation, is_flat_with, is_free_basis, smith_normal_form, IntMatrix};
use homix_core::homsearch::{mix_bruteforce, sample_homs};
use homix_core::verify::{Suite, VerificationReport};

const SEED: u64 = 7;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn h1_rank_torsion(g: &Graph) -> Result<(usize, Vec<i64>), String> {
    let p = h1_presentation(g).map_err(|e| e.to_string())?;
    Ok((p.rank(), p.torsion().to_vec()))
}

fn homology_corpus() -> Outcome {
    let mut cases: Vec<(String, Graph, usize)> = vec![
        ("C4".into(), make_cycle(4, true), 1),
        ("C5".into(), make_cycle(5, true), 1),
        ("C6".into(), make_cycle(6, true), 1),
    ];
    let mut trees = 0;
    for n in 1..=8 {
        for (k, t) in common::unlabelled_trees(n).into_iter().enumerate() {
            cases.push((format!("tree{n}.{k}"), common::tree_graph(n, &t, true), 0));
            trees += 1;
        }
    }
    let wheel = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)]).unwrap();
    cases.push(("wheel".into(), wheel.reflexive_closure(), 0));
    cases.push(("K3".into(), make_complete(3, true), 0));
    let bowtie = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]).unwrap();
    cases.push(("two C4 at a vertex".into(), bowtie.reflexive_closure(), 2));
    for (name, g, rank) in &cases {
        let (r, t) = h1_rank_torsion(g)?;
        ensure(r == *rank && t.is_empty(), || format!("{name}: rank {r} torsion {t:?}, expected rank {rank}"))?;
    }
    Ok(format!("{} graphs ({trees} trees up to 8 vertices)", cases.len()))
}

fn kunneth() -> Outcome {
    let mut n = 0;
    for ell in 1..=4 {
        for g in 4..=6 {
            let prod = tensor_product(&make_path(ell, true), &make_cycle(g, true));
            let (r, t) = h1_rank_torsion(&prod)?;
            ensure(r == 1 && t.is_empty(), || format!("P{ell} x C{g}: rank {r} torsion {t:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} products, all rank 1"))
}

fn suite(s: Suite, trials: usize, min_cases: usize) -> Outcome {
    let cfg = RunConfig { budget: Budget::default(), seed: SEED, trials };
    let r = s.run(&cfg);
    report_outcome(&r, min_cases)
}

fn report_outcome(r: &VerificationReport, min_cases: usize) -> Outcome {
    if let Some(f) = r.failures.first() {
        return Err(format!("{} failures; first: {} (seed {}): {}", r.failures.len(), f.case, f.seed, f.message));
    }
    ensure(r.inconclusive == 0, || format!("{} inconclusive cases", r.inconclusive))?;
    ensure(r.cases >= min_cases, || format!("only {} cases, need {min_cases}", r.cases))?;
    Ok(format!("{} cases, 0 failures", r.cases))
}

fn sum_gadgets() -> Outcome {
    for (s, g) in [(2, 4), (3, 4), (2, 5)] {
        let sg = build_sum_gadget(s, g).map_err(|e| e.to_string())?;
        let p = check_sum_gadget(&sg).map_err(|e| e.to_string())?;
        ensure(p.rank() == s && p.torsion().is_empty(), || format!("S{s} over C{g}: rank {}", p.rank()))?;
        let a: Vec<_> = sg.a.iter().map(|c| p.cycle_class(c).unwrap()).collect();
        ensure(is_free_basis(&a, s), || format!("S{s} over C{g}: A is not a basis"))?;
        let sum: Vec<i64> = (0..s).map(|k| a.iter().map(|c| c.free[k]).sum()).collect();
        ensure(p.cycle_class(&sg.z).unwrap().free == sum, || format!("S{s} over C{g}: [Z] is not the sum"))?;
        let z = make_cycle(g, true);
        for i in 0..s {
            let gamma = gamma_colouring(&sg, i).map_err(|e| e.to_string())?;
            Homomorphism::new(&sg.graph, &z, gamma.as_slice().to_vec()).map_err(|e| e.to_string())?;
            for (j, c) in sg.a.iter().enumerate() {
                let img: Vec<usize> = c.vertices().iter().map(|&v| gamma.apply(v)).collect();
                let want: Vec<usize> = if i == j { (0..g).collect() } else { vec![0; g] };
                ensure(img == want, || format!("S{s} over C{g}: Gamma_{i} on A_{j} is {img:?}"))?;
            }
            ensure(sg.t.iter().all(|&v| gamma.apply(v) == 0), || format!("Gamma_{i} is not 0 on T"))?;
        }
    }
    let r = Suite::SumGadget.run(&RunConfig { budget: Budget::default(), seed: SEED, trials: 60 });
    let tail = report_outcome(&r, 1)?;
    Ok(format!("(2,4), (3,4), (2,5) built and checked; sampled suite {tail}"))
}

fn mix_oracle() -> Outcome {
    let c4 = make_cycle(4, true);
    let b = Budget::default();
    let refl = mix_bruteforce(&c4, &c4, &b).map_err(|e| e.to_string())?;
    ensure(!refl.connected(), || "reflexive C4 -> C4 is connected".into())?;
    // frozen after the first run
    ensure(refl.component_count == 9 && refl.vertex_count == 84, || {
        format!("reflexive C4: {} maps in {} components", refl.vertex_count, refl.component_count)
    })?;
    let irr = mix_bruteforce(&make_cycle(4, false), &c4, &b).map_err(|e| e.to_string())?;
    ensure(irr.component_count == 1, || format!("irreflexive C4: {} components", irr.component_count))?;
    let mut trees = 0;
    for n in 1..=6 {
        for t in common::unlabelled_trees(n) {
            let g = common::tree_graph(n, &t, true);
            let r = mix_bruteforce(&g, &c4, &b).map_err(|e| e.to_string())?;
            ensure(r.connected(), || format!("tree {t:?}: {} components", r.component_count))?;
            trees += 1;
        }
    }
    Ok(format!(
        "reflexive C4 source: 84 maps, 9 components; {trees} trees up to 6 vertices connected; irreflexive C4 source: {} maps, connected",
        irr.vertex_count
    ))
}

fn positive_reduction() -> Outcome {
    let c4 = make_cycle(4, true);
    let pt = h1_presentation(&c4).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (name, g) in [
        ("K1", make_complete(1, false)),
        ("K2", make_complete(2, false)),
        ("P3", make_path(3, false)),
        ("K3", make_complete(3, false)),
    ] {
        let r = build_gstar(&g, &c4).map_err(|e| format!("{name}: {e}"))?;
        let nt = verify_nt_basis(&r).map_err(|e| format!("{name}: {e}"))?;
        ensure(nt.passed, || format!("{name}: NT-basis check failed: {nt:?}"))?;
        let ps = h1_presentation(&r.gstar).map_err(|e| e.to_string())?;
        let colourings = ThreeColouring::all_proper(&g);
        ensure(!colourings.is_empty(), || format!("{name}: no colourings"))?;
        for c in colourings {
            let phi = witness_hom(&r, &c).map_err(|e| format!("{name} {:?}: {e}", c.0))?;
            let phi = Homomorphism::new(&r.gstar, &c4, phi.into_vec()).map_err(|e| e.to_string())?;
            let flat = is_flat_with(&ps, &phi, &pt).map_err(|e| e.to_string())?;
            ensure(!flat, || format!("{name} {:?}: witness is flat", c.0))?;
            let back = extract_colouring(&r, &phi).map_err(|e| e.to_string())?;
            ensure(back == c, || format!("{name}: {:?} came back as {:?}", c.0, back.0))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} colourings round-trip through non-flat witnesses"))
}

fn negative_reduction() -> Outcome {
    let c4 = make_cycle(4, true);
    let r = build_gstar(&make_complete(4, false), &c4).map_err(|e| e.to_string())?;
    let samples = sample_homs(&r.gstar, &c4, &[], 100, SEED, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(samples.maps.len() >= 100, || format!("only {} samples", samples.maps.len()))?;
    let ps = h1_presentation(&r.gstar).map_err(|e| e.to_string())?;
    let pt = h1_presentation(&c4).map_err(|e| e.to_string())?;
    for phi in &samples.maps {
        ensure(is_flat_with(&ps, phi, &pt).map_err(|e| e.to_string())?, || "non-flat map found".into())?;
    }
    Ok(format!(
        "sampled {} maps G*(K4) -> C4 ({} vertices), all flat; a sample, not exhaustive",
        samples.maps.len(),
        r.gstar.n()
    ))
}

fn snf_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in 0..500 {
        let (rows, cols) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let zero_p = rng.gen_range(0.0..0.7);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(zero_p) { 0 } else { rng.gen_range(-20..=20) }).collect())
            .collect();
        let got: Vec<String> = smith_normal_form(&IntMatrix::from_rows(&m)).invariant_factors().iter().map(|x| x.to_string()).collect();
        let want: Vec<String> = common::invariant_factors_by_minors(&m).iter().map(|x| x.to_string()).collect();
        ensure(got == want, || format!("matrix {t} {m:?}: got {got:?}, oracle {want:?}"))?;
    }
    Ok("500 matrices agree with the gcd-of-minors oracle".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("homology corpus", Duration::from_secs(1), homology_corpus),
        ("Kunneth products", Duration::from_secs(5), kunneth),
        ("slice invariance", Duration::from_secs(30), || suite(Suite::SliceInvariance, 1000, 1000)),
        ("surgery suite", Duration::from_secs(60), || suite(Suite::SurgeryLemmas, 240, 200)),
        ("sum gadget", Duration::from_secs(60), sum_gadgets),
        ("Mix oracle", Duration::from_secs(60), mix_oracle),
        ("flat iff constant component", Duration::from_secs(300), || suite(Suite::FlatEqualsConstantComponent, 1, 1)),
        ("end-to-end positive", Duration::from_secs(600), positive_reduction),
        ("end-to-end negative (sampled)", Duration::from_secs(600), negative_reduction),
        ("SNF oracle", Duration::from_secs(30), snf_oracle),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let line = match outcome {
            Ok(detail) if took <= limit => format!("PASS {:>2} {name} [{took:.2?} / {limit:?}]: {detail}", i + 1),
            Ok(detail) => format!("FAIL {:>2} {name} [{took:.2?} / {limit:?}]: over the time limit; {detail}", i + 1),
            Err(e) => format!("FAIL {:>2} {name} [{took:.2?} / {limit:?}]: {e}", i + 1),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
