//! Exact rational and complex dense linear algebra.

pub mod cmat;
pub mod qmat;
pub mod rat;

pub use cmat::{from_digits, sort_complex, to_digits, CMat, C64};
pub use qmat::QMat;
pub use rat::{rat, rat_from_str, rat_to_f64, rat_to_string, rint, Rat};
