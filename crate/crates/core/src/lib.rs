//! 2-switch calculus on simple graphs: switch degrees and their closed
//! formulas, realization spaces, split graphs and their composition, twin
//! quotients, factor multigraphs of split graphs, and the divisor property
//! that governs which multiplicities those factor graphs can carry.

pub mod canon;
pub mod catalog;
pub mod classify;
pub mod delta;
pub mod error;
pub mod factor;
pub mod graph;
pub mod io;
pub mod multi;
pub mod selftest;
pub mod space;
pub mod split;
pub mod switch;
pub mod twins;

pub use canon::{canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{DegreeSequence, Graph};
pub use multi::{Digraph, Multigraph};
