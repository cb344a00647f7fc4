//! The distinguished zero-weight subspace `{v in V[0] : e_alpha^2 v = 0}`
//! on which every per-root Casimir acts as `<alpha,alpha>(1 - s_alpha)`.

use crate::error::{Error, Result};
use crate::liecore::{casimir_op, lifted_reflection, tits_lift, Representation, TitsLift};
use crate::linalg::{QMat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Exact basis (columns, in full module coordinates) of the subspace of the
/// zero weight space annihilated by every squared raising operator. Empty
/// basis when the zero weight space vanishes.
pub fn v0_subspace(rep: &Representation) -> QMat {
    let zero_idx = rep.zero_weight_indices();
    let z = zero_idx.len();
    if z == 0 {
        return QMat::zeros(rep.dim, 0);
    }
    // Stack e_alpha^2 restricted to columns from V[0].
    let mut blocks = Vec::new();
    for (e, _) in &rep.root_vectors {
        let e2 = e * e;
        blocks.push(QMat::from_fn(rep.dim, z, |r, c| e2[(r, zero_idx[c])].clone()));
    }
    let refs: Vec<&QMat> = blocks.iter().collect();
    let stacked = QMat::vstack(&refs);
    let null = stacked.nullspace();
    // Embed V[0]-coordinates back into the full module.
    QMat::from_fn(rep.dim, null.cols(), |r, c| {
        match zero_idx.iter().position(|&zi| zi == r) {
            Some(k) => null[(k, c)].clone(),
            None => Rat::zero(),
        }
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct V0Report {
    pub zero_weight_dim: usize,
    pub v0_dim: usize,
    pub identity_holds: bool,
    pub weyl_invariant: bool,
    /// First root index where the identity failed, if any.
    pub first_failure: Option<usize>,
}

/// Checks, exactly and per positive root, that the Casimir equals
/// `<alpha,alpha>(1 - s_alpha)` on the distinguished zero-weight subspace,
/// and that the subspace is stable under all Weyl-group lifts.
pub fn check_v0_identity(rep: &Representation) -> Result<V0Report> {
    let basis = v0_subspace(rep);
    let zero_dim = rep.zero_weight_indices().len();
    if basis.cols() == 0 {
        return Err(Error::InvalidInput(
            "the distinguished zero-weight subspace vanishes".into(),
        ));
    }
    let lift = tits_lift(rep)?;

    let mut identity_holds = true;
    let mut first_failure = None;
    for idx in 0..rep.root_system.num_positive_roots() {
        let c = casimir_op(rep, idx);
        let s = lifted_reflection(rep, &lift, idx);
        let norm2 = rep.root_system.root_norm2(idx);
        for col in 0..basis.cols() {
            let v = basis.column(col);
            let cv = c.apply(&v);
            let sv = s.apply(&v);
            let rhs: Vec<Rat> = v
                .iter()
                .zip(&sv)
                .map(|(a, b)| (a - b) * norm2.clone())
                .collect();
            if cv != rhs {
                identity_holds = false;
                if first_failure.is_none() {
                    first_failure = Some(idx);
                }
            }
        }
    }

    let weyl_invariant = v0_invariant_under_lifts(&lift, &basis);

    Ok(V0Report {
        zero_weight_dim: zero_dim,
        v0_dim: basis.cols(),
        identity_holds,
        weyl_invariant,
        first_failure,
    })
}

fn v0_invariant_under_lifts(lift: &TitsLift, basis: &QMat) -> bool {
    let base_rank = basis.rank();
    for s in &lift.matrices {
        let image = s * basis;
        let combined = QMat::hstack(&[basis, &image]);
        if combined.rank() != base_rank {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_rep, Algebra, RepKind};

    #[test]
    fn adjoint_v0_is_whole_cartan() {
        // 2 alpha is never a weight of the adjoint: the subspace is all of V[0].
        for (alg, rank) in [(Algebra::Sl(2), 1), (Algebra::Sl(3), 2), (Algebra::So(5), 2)] {
            let rep = build_rep(alg, RepKind::Adjoint, None).unwrap();
            let basis = v0_subspace(&rep);
            assert_eq!(basis.cols(), rank, "{alg}");
            assert_eq!(rep.zero_weight_indices().len(), rank);
        }
    }

    #[test]
    fn tensor_power_of_vector_is_small() {
        let rep = build_rep(Algebra::Sl(3), RepKind::TensorPower(3), None).unwrap();
        let basis = v0_subspace(&rep);
        assert_eq!(rep.zero_weight_indices().len(), 6);
        assert_eq!(basis.cols(), 6);
    }

    /// Oracle: in the 5-dimensional sl2 module of highest weight 4, e^2
    /// acts injectively on the zero weight line, so the subspace vanishes.
    #[test]
    fn sym4_has_empty_distinguished_subspace() {
        let rep = build_rep(Algebra::Sl(2), RepKind::Sym(4), None).unwrap();
        assert_eq!(rep.dim, 5);
        assert_eq!(rep.zero_weight_indices().len(), 1);
        // Explicit 5x5 check of the oracle.
        let e = rep.simple_e(0);
        let e2 = e * e;
        let z = rep.zero_weight_indices()[0];
        let col = e2.column(z);
        assert!(col.iter().any(|x| !x.is_zero()));
        let basis = v0_subspace(&rep);
        assert_eq!(basis.cols(), 0);
        assert!(check_v0_identity(&rep).is_err());
    }

    #[test]
    fn identity_on_sl2_adjoint() {
        // One-dimensional zero space; the reflection acts by -1 there, so
        // both sides equal 2<alpha,alpha> times the projection.
        let rep = build_rep(Algebra::Sl(2), RepKind::Adjoint, None).unwrap();
        let report = check_v0_identity(&rep).unwrap();
        assert!(report.identity_holds);
        assert!(report.weyl_invariant);
        assert_eq!(report.v0_dim, 1);
    }

    #[test]
    fn identity_on_sl3_adjoint_and_so5_vector() {
        for alg_kind in [
            (Algebra::Sl(3), RepKind::Adjoint),
            (Algebra::So(5), RepKind::Vector),
        ] {
            let rep = build_rep(alg_kind.0, alg_kind.1, None).unwrap();
            let report = check_v0_identity(&rep).unwrap();
            assert!(report.identity_holds, "{}", alg_kind.0);
            assert!(report.weyl_invariant, "{}", alg_kind.0);
            assert!(report.first_failure.is_none());
        }
    }
}
