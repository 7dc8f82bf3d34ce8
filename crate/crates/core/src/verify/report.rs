use std::time::Duration;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// One failed case, with the seed that replays it and the input that triggered it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub case: String,
    pub seed: u64,
    pub input: serde_json::Value,
    pub message: String,
}

/// Outcome of a verification suite. Timing is kept out of the JSON so that
/// the same seed gives byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// cases that could not be decided within the search budget
    pub inconclusive: usize,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            seed,
            cases: 0,
            failures: Vec::new(),
            inconclusive: 0,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconclusive == 0
    }

    /// 0 when everything passed, 1 on any failure, 3 when only the budget stood in the way.
    pub fn exit_code(&self) -> i32 {
        if !self.failures.is_empty() {
            1
        } else if self.inconclusive > 0 {
            3
        } else {
            0
        }
    }

    pub fn fail(&mut self, case: impl Into<String>, seed: u64, input: serde_json::Value, message: impl Into<String>) {
        self.failures.push(Failure { case: case.into(), seed, input, message: message.into() });
    }

    /// Records a case: `Err` becomes a failure.
    pub fn check(&mut self, case: impl Into<String>, seed: u64, input: impl FnOnce() -> serde_json::Value, r: Result<(), String>) {
        self.cases += 1;
        if let Err(m) = r {
            self.fail(case, seed, input(), m);
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self.inconclusive += other.inconclusive;
        self.notes.extend(other.notes);
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} cases, {} failures, {} inconclusive ({:.2?})",
            self.suite,
            self.cases,
            self.failures.len(),
            self.inconclusive,
            self.elapsed
        )
    }
}

/// Per-trial seeds drawn from a master seed; trial `t` replays from `seeds[t]` alone.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| master.next_u64()).collect()
}
