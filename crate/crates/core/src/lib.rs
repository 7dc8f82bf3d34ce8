//! Integral first homology of graph clique complexes, Hom-graph connectivity,
//! flatness of homomorphisms, and the gadget reduction from 3-colouring to
//! non-flat colouring.
//!
//! Module map:
//! - [`graph`]: graphs with loops and the constructions the gadgets need.
//! - [`homology`]: chain complexes, Smith normal form, `H_1` presentations.
//! - [`homsearch`]: homomorphism enumeration, the Hom-graph, cycle moves.
//! - [`gadgets`]: sum gadgets and the reduction pipeline.
//! - [`verify`]: randomized and exhaustive verification suites.

pub mod config;
pub mod gadgets;
pub mod graph;
pub mod homology;
pub mod homsearch;
pub mod unionfind;
pub mod verify;
