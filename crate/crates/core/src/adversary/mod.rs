//! Adversarial identifier assignment.
//!
//! The coloring `c(X)` of `K`-subsets records what an algorithm outputs at an
//! internal node when `X` fills the node's region row by row. Blocks are then
//! filled one by one with monochromatic sets; inside such a block every
//! internal node sees a row-major piece of the same set and must therefore
//! give the same answer, which has to be 1 for the output to dominate.

pub mod coloring;
pub mod lemma;
pub mod search;

pub use coloring::{
    graph_coloring, well_definedness_check, ColoringConfig, Fill, FnColoring, GraphColoring, Memo, SubsetColoring,
    WellDefinedness,
};
pub use lemma::{evaluate_fooling, lemma1_assign, BlockAssignment, BlockReport, FoolingReport};
pub use search::{
    find_monochromatic, CertificateLevel, ExhaustionReason, MonoCertificate, SearchConfig, SearchOutcome, Strategy,
};
