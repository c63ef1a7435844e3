//! Generalized q-Kneser graphs `K_q(n,k,t)` over finite fields.
//!
//! The crate builds the graphs explicitly from subspace enumerations,
//! evaluates their closed-form degree, independence number and treewidth
//! with exact integers, constructs tree decompositions that attain the
//! treewidth upper bound, and provides small exact solvers (maximum
//! independent set, maximum clique, treewidth, balanced separators) used to
//! cross-check the formulas on tiny instances.

pub mod bits;
pub mod budget;
pub mod clique;
pub mod ekr;
pub mod generators;
pub mod gf;
pub mod graph;
pub mod pace;
pub mod qcount;
pub mod subspace;
pub mod td;
pub mod twsolve;

pub use bits::{BitSet, VertexSet};
pub use gf::{make_field, FieldElement, FieldSpec};
pub use graph::{build_cograssmann, build_qkneser, Graph};
pub use qcount::{Count, Params};
pub use subspace::Subspace;
