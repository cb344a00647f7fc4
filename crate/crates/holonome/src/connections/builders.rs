//! The three connection families: configuration-space coupling residues,
//! Cartan-space Casimir residues, and reflection residues for a finite
//! reflection group.

use super::{Arrangement, ConnectionKind, FlatConnection};
use crate::error::{Error, Result};
use crate::liecore::{casimir_op, omega_two, transposition_matrix, Representation, RootSystem};
use crate::linalg::{rint, QMat, Rat, C64};
use num_traits::Zero;

use crate::liecore::rep::embed_two_site;

/// Configuration-space connection on C^n with residues the pairwise
/// coupling operators `Omega_ij` of the representation and a global
/// coupling h. Flatness is certified exactly before h enters.
pub fn build_kz(
    rep: &Representation,
    n: usize,
    h: C64,
    cap: Option<usize>,
) -> Result<FlatConnection> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2 tensor factors".into()));
    }
    let cap = cap.unwrap_or(crate::liecore::DEFAULT_DIM_CAP);
    let total = rep.dim.checked_pow(n as u32).unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::DimensionCap { dim: total, cap });
    }

    let mut forms = Vec::new();
    let omega = omega_two(rep)?;
    let mut residues = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut f = vec![Rat::zero(); n];
            f[i] = rint(1);
            f[j] = rint(-1);
            forms.push(f);
            residues.push(embed_two_site(&omega, rep.dim, n, i, j));
        }
    }
    let count = residues.len();
    let arrangement = Arrangement::new(n, forms)?;
    let mut conn = FlatConnection::new(
        arrangement,
        residues,
        vec![h; count],
        vec![0; count],
        ConnectionKind::Config { n },
    )?;
    let report = super::kohno_flatness_check(&conn)?;
    if !report.pass {
        return Err(Error::InvalidInput("coupling residues fail the flatness criterion".into()));
    }
    conn.verified_flat = true;
    Ok(conn)
}

/// Cartan-space connection with residues the per-root Casimir operators,
/// optionally restricted to a single weight block (the residues preserve
/// every weight space). Coordinates on the Cartan are `u_j = alpha_j(x)`.
pub fn build_casimir(
    rep: &Representation,
    h: C64,
    weight_block: Option<&[i64]>,
) -> Result<FlatConnection> {
    let rs = &rep.root_system;
    let forms: Vec<Vec<Rat>> = rs
        .positive_roots
        .iter()
        .map(|c| c.iter().map(|&x| rint(x)).collect())
        .collect();
    let arrangement = Arrangement::new(rs.rank, forms)?;

    let block: Option<Vec<usize>> = match weight_block {
        None => None,
        Some(mu) => {
            let idx: Vec<usize> =
                (0..rep.dim).filter(|&i| rep.weights[i] == mu).collect();
            if idx.is_empty() {
                return Err(Error::InvalidInput(format!("weight {mu:?} does not occur")));
            }
            Some(idx)
        }
    };

    let residues: Vec<QMat> = (0..rs.num_positive_roots())
        .map(|i| {
            let c = casimir_op(rep, i);
            match &block {
                None => c,
                Some(idx) => c.submatrix(idx, idx),
            }
        })
        .collect();

    let count = residues.len();
    let mut conn = FlatConnection::new(
        arrangement,
        residues,
        vec![h; count],
        rs.orbit_classes.clone(),
        ConnectionKind::Cartan { root_system: rs.clone() },
    )?;
    let report = super::kohno_flatness_check(&conn)?;
    if !report.pass {
        return Err(Error::InvalidInput("Casimir residues fail the flatness criterion".into()));
    }
    conn.verified_flat = true;
    Ok(conn)
}

/// Module input for the reflection-residue connection: one matrix per
/// positive root, the action of `s_alpha` on the module.
#[derive(Debug, Clone)]
pub struct CkzInput {
    pub reflections: Vec<QMat>,
}

impl CkzInput {
    /// Reflection representation of the Weyl group on the Cartan, in
    /// simple-root coordinates.
    pub fn reflection_rep(rs: &RootSystem) -> CkzInput {
        CkzInput { reflections: rs.reflection_rep() }
    }

    /// S_n acting on the n-fold tensor power of a d-dimensional space by
    /// permuting factors; root `eps_i - eps_j` of A_{n-1} acts as the
    /// transposition (i j).
    pub fn sn_tensor(rs: &RootSystem, d: usize, n: usize) -> Result<CkzInput> {
        if rs.rank + 1 != n {
            return Err(Error::ShapeMismatch("need the A_{n-1} root system".into()));
        }
        Ok(CkzInput { reflections: sn_action_on_tensor_power(rs, d, n) })
    }
}

/// Transposition matrices on V^(x)n indexed like the positive roots of
/// A_{n-1}: the root sum_{k=i..j-1} alpha_k acts as (i j).
pub fn sn_action_on_tensor_power(rs: &RootSystem, d: usize, n: usize) -> Vec<QMat> {
    rs.positive_roots
        .iter()
        .map(|c| {
            let i = c.iter().position(|&x| x != 0).unwrap();
            let j = c.iter().rposition(|&x| x != 0).unwrap() + 1;
            transposition_matrix(d, n, i, j)
        })
        .collect()
}

/// Reflection-residue connection `d - sum_alpha k_alpha (dalpha/alpha) s_alpha`
/// for a Weyl group acting on a module. The weights must be constant on
/// Weyl orbits; flatness holds for every such choice and is certified
/// exactly per orbit class.
pub fn build_ckz(rs: &RootSystem, module: &CkzInput, weights: &[C64]) -> Result<FlatConnection> {
    let p = rs.num_positive_roots();
    if module.reflections.len() != p || weights.len() != p {
        return Err(Error::ShapeMismatch(
            "need one reflection matrix and one weight per positive root".into(),
        ));
    }
    for (i, w) in weights.iter().enumerate() {
        let class = rs.orbit_classes[i];
        let rep_idx = rs.orbit_classes.iter().position(|&c| c == class).unwrap();
        if (w - weights[rep_idx]).norm() > 0.0 {
            return Err(Error::WeightsNotInvariant);
        }
    }
    let forms: Vec<Vec<Rat>> = rs
        .positive_roots
        .iter()
        .map(|c| c.iter().map(|&x| rint(x)).collect())
        .collect();
    let arrangement = Arrangement::new(rs.rank, forms)?;
    let mut conn = FlatConnection::new(
        arrangement,
        module.reflections.clone(),
        weights.to_vec(),
        rs.orbit_classes.clone(),
        ConnectionKind::Cartan { root_system: rs.clone() },
    )?;
    let report = super::kohno_flatness_check(&conn)?;
    if !report.pass {
        return Err(Error::InvalidInput("reflection residues fail the flatness criterion".into()));
    }
    conn.verified_flat = true;
    Ok(conn)
}
