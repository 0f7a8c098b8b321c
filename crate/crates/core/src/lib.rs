//! LOCAL-model simulator and adversarial harness for dominating sets on
//! planar block grids.
//!
//! The pipeline: [`grid::build_grid`] constructs the strip of blocks,
//! [`local::run_algorithm`] evaluates a deterministic radius-`T` algorithm
//! from labeled neighbourhood views, [`adversary::evaluate_fooling`] assigns
//! identifiers block by block so that internal nodes are forced into the
//! output, and [`optimum::pattern_witness`] supplies the small dominating set
//! the output is compared against.

pub mod adversary;
pub mod algorithms;
pub mod cli;
pub mod error;
pub mod grid;
pub mod local;
pub mod optimum;
pub mod ratio;
pub mod render;
pub mod view;

pub use error::{Error, Result};
