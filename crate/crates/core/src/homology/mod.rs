//! Integral first homology of the clique complex of a graph.
//!
//! A closed walk becomes a chain by signed edge incidence. Closed chains are
//! coordinatised by their values on the non-tree edges of a BFS spanning
//! forest; triangle boundaries give the relations. Unit pivots are eliminated
//! sparsely, and what remains goes through a dense Smith normal form per
//! component.

mod complex;
mod presentation;
mod reduce;
mod snf;
mod surgery;

pub use complex::{build_chain_complex, ChainComplex, ChainVector, SparseMatrix};
pub use presentation::{
    basis_images, class_matrix, cycle_class, h1_presentation, h1_presentation_rooted, image_class, is_flat,
    is_flat_with, is_free_basis, nt_basis, ClassVector, H1Presentation,
};
pub use snf::{smith_normal_form, IntMatrix, SnfResult};
pub use surgery::verify_surgery_lemmas;

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("chain is not closed")]
    NotClosed,
    #[error("chain has {got} coefficients, expected {expected}")]
    ChainLength { got: usize, expected: usize },
    #[error("integer overflow during elimination")]
    Overflow,
}
