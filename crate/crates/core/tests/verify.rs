use homix_core::config::{Budget, RunConfig};
use homix_core::verify::Suite;

fn cfg(seed: u64, trials: usize) -> RunConfig {
    RunConfig { budget: Budget::default(), seed, trials }
}

#[test]
fn quick_suites_pass() {
    for s in [Suite::SliceInvariance, Suite::SurgeryLemmas, Suite::SumGadget, Suite::FlatEqualsConstantComponent] {
        let r = s.run(&cfg(11, 30));
        assert!(r.passed(), "{}: {:?}", r.summary(), r.failures.first());
        assert!(r.cases > 0);
        assert_eq!(r.exit_code(), 0);
    }
}

#[test]
fn same_seed_same_report() {
    for s in [Suite::SliceInvariance, Suite::SurgeryLemmas, Suite::SumGadget] {
        let a = serde_json::to_string(&s.run(&cfg(5, 25))).unwrap();
        let b = serde_json::to_string(&s.run(&cfg(5, 25))).unwrap();
        assert_eq!(a, b, "{s}");
    }
}

#[test]
fn suite_names_parse() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("bogus".parse::<Suite>().is_err());
}
