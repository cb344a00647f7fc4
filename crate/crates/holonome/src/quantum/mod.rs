//! Quantum-group side at numeric q: q-integers and q-exponentials, modules
//! with coproduct tensor products, R-matrix braid operators and quantum
//! Weyl elements.

pub mod qmodule;
pub mod qweyl;
pub mod rmatrix;

pub use qmodule::{q_tensor, q_tensor_power, uq_sl2_module, uq_sln_vector, QModKind, QModule};
pub use qweyl::{casimir_twist, monodromy_normalization, qweyl_op, QWeylOp};
pub use rmatrix::{r_matrix, rmat_rep, RMatrix};

use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};

/// `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`, evaluated in the
/// cancellation-free form `q^{n-1} + q^{n-3} + ... + q^{1-n}` so values
/// near q = 1 stay accurate; the q -> 1 limit n comes out automatically.
pub fn q_int(n: i64, q: C64) -> C64 {
    let (n_abs, sign) = if n >= 0 { (n, 1.0) } else { (-n, -1.0) };
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..n_abs {
        acc += q.powi((n_abs - 1 - 2 * k) as i32);
    }
    acc * sign
}

/// `[n]_q! = [n]_q [n-1]_q ... [1]_q`, `[0]_q! = 1`.
pub fn q_fact(n: i64, q: C64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for k in 1..=n {
        acc *= q_int(k, q);
    }
    acc
}

/// Rejects q within 1e-8 of a k-th root of unity for any k up to
/// `max_order`; q-factorials below that order would degenerate.
pub fn guard_root_of_unity(q: C64, max_order: u32) -> Result<()> {
    for k in 1..=max_order {
        if (q.powi(k as i32) - C64::new(1.0, 0.0)).norm() < 1e-8 {
            return Err(Error::RootOfUnity(k));
        }
    }
    Ok(())
}

/// Truncated q-exponential `sum_n q^{n(n-1)/2} x^n / [n]_q!` of a nilpotent
/// matrix; the sum stops at the nilpotency degree.
pub fn exp_q(x: &CMat, q: C64) -> Result<CMat> {
    assert!(x.is_square());
    let dim = x.rows();
    let scale = x.max_norm().max(1.0);
    let mut deg = None;
    let mut p = CMat::identity(dim);
    for d in 0..=dim {
        if p.max_norm() < 1e-12 * scale.powi(d as i32) {
            deg = Some(d);
            break;
        }
        p = &p * x;
    }
    let Some(deg) = deg else {
        return Err(Error::NotNilpotent);
    };
    let mut sum = CMat::identity(dim);
    let mut term = CMat::identity(dim);
    for n in 1..deg as i64 {
        term = &term * x;
        let fact = q_fact(n, q);
        if fact.norm() < 1e-8 {
            return Err(Error::RootOfUnity(n as u32));
        }
        let coeff = q.powf(n as f64 * (n as f64 - 1.0) / 2.0) / fact;
        sum = &sum + &term.scale(coeff);
    }
    Ok(sum)
}
