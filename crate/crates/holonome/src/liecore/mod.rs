//! Exact constructions: root systems, classical matrix algebras, their
//! finite-dimensional representations, per-root Casimir operators, pairwise
//! coupling operators and Weyl-group lifts.

pub mod algebra;
pub mod rep;
pub mod root_system;
pub mod tits;

pub use algebra::Algebra;
pub use rep::{
    build_rep, casimir_op, embed_two_site, omega_pair, omega_two, transposition_matrix,
    RepKind, Representation, DEFAULT_DIM_CAP,
};
pub use root_system::{build_root_system, RootSystem, Series};
pub use tits::{lifted_reflection, tits_lift, TitsLift};
