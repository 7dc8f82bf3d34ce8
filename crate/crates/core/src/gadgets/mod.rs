//! The reduction from 3-colouring to non-flat colouring: winding maps, sum
//! gadgets, the assembled instance `G*`, witnesses and colouring extraction.

mod maps;
mod reduction;
mod sum;

pub use maps::{alpha_map, beta_map, find_ell, EllWitness};
pub use reduction::{
    build_ga, build_gstar, extract_colouring, nt_report_without_last_plug, verify_nt_basis, witness_hom, GaBuild, GadgetKind, NamedWalk,
    NtBasisReport, Provenance, ReductionArtifact, ThreeColouring,
};
pub use sum::{build_sum_gadget, check_sum_gadget, gamma_colouring, SumGadget};

use thiserror::Error;

use crate::graph::GraphError;
use crate::homology::HomologyError;
use crate::homsearch::SearchError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("sum gadget needs s >= 2 and g >= 4 (got s = {s}, g = {g})")]
    BadParameters { s: usize, g: usize },
    #[error("no Hom-graph path from beta to every alpha for (s, g) = ({s}, {g})")]
    NoPath { s: usize, g: usize },
    #[error("target unsuitable: {0}")]
    TargetUnsuitable(String),
    #[error("source graph must be irreflexive")]
    SourceNotIrreflexive,
    #[error("colouring is not proper on edge {{{u},{v}}}")]
    ImproperColouring { u: usize, v: usize },
    #[error("colouring has {got} entries for {expected} vertices")]
    ColouringLength { got: usize, expected: usize },
    #[error("map is flat on Z*")]
    NotNonflat,
    #[error("claim violated: {0}")]
    ClaimViolation(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}
