//! Verification suites. Each runs a batch of randomized or exhaustive cases
//! and returns a [`VerificationReport`]; a failed case carries the seed that
//! replays it.

mod end_to_end;
mod flat;
pub(crate) mod random;
mod report;
mod slice;
mod sum;

pub use end_to_end::end_to_end;
pub use flat::flat_equals_constant_component;
pub use report::{trial_seeds, Failure, VerificationReport};
pub use slice::slice_invariance;
pub use sum::sum_gadget;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::homology::verify_surgery_lemmas;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    SliceInvariance,
    SurgeryLemmas,
    SumGadget,
    FlatEqualsConstantComponent,
    EndToEnd,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::SliceInvariance, Suite::SurgeryLemmas, Suite::SumGadget, Suite::FlatEqualsConstantComponent, Suite::EndToEnd];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SliceInvariance => "slice-invariance",
            Suite::SurgeryLemmas => "surgery-lemmas",
            Suite::SumGadget => "sum-gadget",
            Suite::FlatEqualsConstantComponent => "flat-equals-constant-component",
            Suite::EndToEnd => "end-to-end",
        }
    }

    pub fn run(self, cfg: &RunConfig) -> VerificationReport {
        match self {
            Suite::SliceInvariance => slice_invariance(cfg),
            Suite::SurgeryLemmas => verify_surgery_lemmas(cfg.seed, cfg.trials),
            Suite::SumGadget => sum_gadget(cfg),
            Suite::FlatEqualsConstantComponent => flat_equals_constant_component(cfg),
            Suite::EndToEnd => end_to_end(cfg),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Every suite, side by side, in the order of [`Suite::ALL`].
pub fn run_all(cfg: &RunConfig) -> Vec<VerificationReport> {
    Suite::ALL.par_iter().map(|s| s.run(cfg)).collect()
}
