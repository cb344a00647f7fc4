//! Quantum Weyl group operators: triple q-exponentials per simple root,
//! deforming the exp(e) exp(-f) exp(e) lifts of the simple reflections.

use super::exp_q;
use super::qmodule::QModule;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};

#[derive(Debug, Clone)]
pub struct QWeylOp {
    /// One operator per simple root.
    pub s: Vec<CMat>,
}

/// `S_i = exp_{q_i^{-1}}(q_i^{-1} E_i q_i^{-H_i}) exp_{q_i^{-1}}(-F_i)
///        exp_{q_i^{-1}}(q_i E_i q_i^{H_i})`,
/// where `q_i^{±H_i}` is diagonal with entries `q_i^{±mu(h_i)}`. Both
/// conjugating powers are read with base q_i.
pub fn qweyl_op(m: &QModule) -> Result<QWeylOp> {
    let mut out = Vec::with_capacity(m.rank);
    for i in 0..m.rank {
        let qi = m.q_i(i);
        super::guard_root_of_unity(qi, (m.dim + 1) as u32)?;
        let qinv = qi.inv();
        let kh_plus = m.k_power(i, 1);
        let kh_minus = m.k_power(i, -1);
        let first = (&m.e[i] * &kh_minus).scale(qinv);
        let middle = m.f[i].scale(C64::new(-1.0, 0.0));
        let last = (&m.e[i] * &kh_plus).scale(qi);
        let s = &(&exp_q(&first, qinv)? * &exp_q(&middle, qinv)?) * &exp_q(&last, qinv)?;
        out.push(s);
    }
    let op = QWeylOp { s: out };
    verify_weight_mapping(m, &op)?;
    Ok(op)
}

/// Each S_i must carry the mu weight block onto the s_i(mu) block.
fn verify_weight_mapping(m: &QModule, op: &QWeylOp) -> Result<()> {
    for i in 0..m.rank {
        let s = &op.s[i];
        for col in 0..m.dim {
            let mu = &m.weights[col];
            let target: Vec<i64> = (0..m.rank)
                .map(|j| mu[j] - mu[i] * m.cartan[j][i])
                .collect();
            for row in 0..m.dim {
                if s[(row, col)].norm() > 1e-10 && m.weights[row] != target {
                    return Err(Error::InvalidInput(format!(
                        "S_{i} does not map weight {mu:?} to {target:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `q^C` for an operator C (principal logarithm of q).
pub fn casimir_twist(c: &CMat, q: C64) -> CMat {
    c.scale(q.ln()).exp()
}

/// Weight-diagonal factor `q_i^{3 mu_i^2 / 4}` normalizing the bare
/// operator S_i for comparison with wall-local monodromy. With this
/// convention of S_i one has `(S_i q_i^{3H_i^2/4})^2 = (-1)^{H_i} q_i^{C_i}`,
/// the full-twist value; equivalently this is the `q^{H^2/4}` correction of
/// the rescaled Weyl element, up to a spectra-neutral `K^{1/2}`.
pub fn monodromy_normalization(m: &QModule, i: usize) -> CMat {
    let qi = m.q_i(i);
    CMat::diagonal(
        &m.weights
            .iter()
            .map(|w| qi.powf(0.75 * (w[i] * w[i]) as f64))
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::qmodule::{q_tensor_power, uq_sl2_module, uq_sln_vector};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn two_dim_module_gives_rotation() {
        // On the two-dimensional module all three q-exponentials truncate
        // at first order and the q-dependence cancels.
        let q = c(1.4, 0.2);
        let m = uq_sl2_module(1, q).unwrap();
        let op = qweyl_op(&m).unwrap();
        let s = &op.s[0];
        let expected = CMat::from_fn(2, 2, |r, cc| match (r, cc) {
            (0, 1) => c(1.0, 0.0),
            (1, 0) => c(-1.0, 0.0),
            _ => c(0.0, 0.0),
        });
        assert!((s - &expected).max_norm() < 1e-12);
        // S v_0 lands on v_1.
        assert!(s[(1, 0)].norm() > 0.5 && s[(0, 0)].norm() < 1e-12);
    }

    #[test]
    fn classical_limit_is_tits_lift() {
        use crate::liecore::{build_rep, tits_lift, Algebra, RepKind};
        for (mm, kind) in [(1usize, RepKind::Sym(1)), (2, RepKind::Sym(2)), (3, RepKind::Sym(3))] {
            let eps = 1e-6;
            let m = uq_sl2_module(mm, c(1.0 + eps, 0.0)).unwrap();
            let op = qweyl_op(&m).unwrap();
            let rep = build_rep(Algebra::Sl(2), kind, None).unwrap();
            let lift = tits_lift(&rep).unwrap();
            let dev = (&op.s[0] - &lift.matrices[0].to_cmat()).max_norm();
            assert!(dev < 50.0 * eps, "m={mm}: dev {dev}");
        }
    }

    #[test]
    fn braid_relation_on_sl3_vector() {
        let q = c(0.2f64.exp(), 0.0);
        let m = uq_sln_vector(3, q).unwrap();
        let op = qweyl_op(&m).unwrap();
        let lhs = &(&op.s[0] * &op.s[1]) * &op.s[0];
        let rhs = &(&op.s[1] * &op.s[0]) * &op.s[1];
        assert!((&lhs - &rhs).max_norm() < 1e-12);
    }

    #[test]
    fn braid_relation_on_tensor_cube() {
        let q = c(0.2f64.exp(), 0.0);
        let v = uq_sln_vector(3, q).unwrap();
        let cube = q_tensor_power(&v, 3).unwrap();
        let op = qweyl_op(&cube).unwrap();
        let lhs = &(&op.s[0] * &op.s[1]) * &op.s[0];
        let rhs = &(&op.s[1] * &op.s[0]) * &op.s[1];
        assert!((&lhs - &rhs).max_norm() < 1e-10);
    }

    #[test]
    fn conjugates_k_to_reflected_weight() {
        let q = c(1.25, 0.1);
        let m = uq_sln_vector(3, q).unwrap();
        let op = qweyl_op(&m).unwrap();
        for i in 0..m.rank {
            let s = &op.s[i];
            let sinv = s.inverse().unwrap();
            for j in 0..m.rank {
                let conj = &(s * &m.k[j]) * &sinv;
                // K_j conjugated by S_i is diagonal with entries
                // q_j^{(s_i mu)(h_j)}.
                let qj = m.q_i(j);
                for b in 0..m.dim {
                    let mu = &m.weights[b];
                    let refl: i64 = mu[j] - mu[i] * m.cartan[j][i];
                    assert!((conj[(b, b)] - qj.powi(refl as i32)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn not_an_involution_at_generic_q() {
        let q = c(0.3f64.exp(), 0.0);
        let m = uq_sl2_module(2, q).unwrap();
        let op = qweyl_op(&m).unwrap();
        let sq = &op.s[0] * &op.s[0];
        assert!((sq - CMat::identity(3)).max_norm() > 0.1);
    }

    #[test]
    fn casimir_twist_of_scalar() {
        let q = c(1.3, 0.0);
        let cmat = CMat::identity(2).scale(c(1.5, 0.0));
        let tw = casimir_twist(&cmat, q);
        let expected = q.powf(1.5);
        assert!((tw[(0, 0)] - expected).norm() < 1e-12);
    }
}
