//! Flat connections on hyperplane complements from Lie-theoretic data,
//! exact flatness certification, numerical braid-group monodromy, and the
//! quantum-group operators (R-matrices, quantum Weyl elements) the
//! monodromy is compared against.
//!
//! The crate is split along the pipeline:
//!
//! - [`linalg`]: exact rational and complex dense matrices.
//! - [`liecore`]: root systems, classical matrix algebras, representations,
//!   Casimir and coupling operators, Weyl-group lifts.
//! - [`connections`]: arrangements, residue families, the coplanar-family
//!   flatness criterion, zero-weight identities.
//! - [`transport`]: paths avoiding walls, adaptive parallel transport,
//!   monodromy representations and their relation/spectra checks.
//! - [`quantum`]: q-arithmetic, modules at numeric q, R-matrices and
//!   quantum Weyl operators.
//! - [`duality`]: polynomial models on k x n matrices, highest-weight
//!   multiplicity spaces, residue coincidence, zero-weight dimensions.
//! - [`jobs`]: the batch job runner behind the CLI.
//!
//! Everything is a pure value; all types are safe to share across threads.

pub mod error;
pub mod linalg;

pub mod connections;
pub mod duality;
// jobs module added below
pub mod jobs;
pub mod liecore;
pub mod quantum;
pub mod transport;

pub use error::{Error, Result};
