//! Modules over the quantized enveloping algebras at numeric q, with the
//! coproduct `Δ(E) = E⊗1 + K⊗E`, `Δ(F) = F⊗K^{-1} + 1⊗F`, `Δ(K) = K⊗K`.

use super::guard_root_of_unity;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum QModKind {
    /// Irreducible sl2 module of highest weight m, basis chosen so the
    /// classical limit is the symmetric power of the defining module.
    Sl2Irrep { m: usize },
    /// Vector module of the quantized sl_n on C^n.
    SlnVector { n: usize },
    Tensor,
}

/// A module given by matrices for E_i, F_i, K_i per simple root, with the
/// integer weight grading behind the diagonal K_i.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QModule {
    pub q: [f64; 2],
    pub dim: usize,
    pub rank: usize,
    /// Length ratios d_i with q_i = q^{d_i}.
    pub d: Vec<i64>,
    pub cartan: Vec<Vec<i64>>,
    pub coxeter_orders: Vec<Vec<usize>>,
    pub e: Vec<CMat>,
    pub f: Vec<CMat>,
    pub k: Vec<CMat>,
    /// Weight of each basis vector: mu_i = H_i-eigenvalue.
    pub weights: Vec<Vec<i64>>,
    pub kind: QModKind,
}

impl QModule {
    pub fn q(&self) -> C64 {
        C64::new(self.q[0], self.q[1])
    }

    pub fn q_i(&self, i: usize) -> C64 {
        self.q().powi(self.d[i] as i32)
    }

    /// Diagonal operator with entries q_i^{s * mu_i}.
    pub fn k_power(&self, i: usize, s: i64) -> CMat {
        let qi = self.q_i(i);
        CMat::diagonal(
            &self
                .weights
                .iter()
                .map(|w| qi.powi((s * w[i]) as i32))
                .collect::<Vec<_>>(),
        )
    }

    /// Max residual of the defining relations; exact constructions stay
    /// within 1e-12 of zero.
    pub fn defining_residual(&self) -> f64 {
        let q = self.q();
        let mut worst: f64 = 0.0;
        for i in 0..self.rank {
            let qi = self.q_i(i);
            let ki = &self.k[i];
            let kinv = self.k_power(i, -1);
            for j in 0..self.rank {
                let a = self.cartan[i][j];
                let lhs = &(ki * &self.e[j]) * &kinv;
                let rhs = self.e[j].scale(qi.powi(a as i32));
                worst = worst.max((&lhs - &rhs).max_norm());
                let lhs = &(ki * &self.f[j]) * &kinv;
                let rhs = self.f[j].scale(qi.powi(-a as i32));
                worst = worst.max((&lhs - &rhs).max_norm());
            }
            // [E_i, F_i] against the stable diagonal form [mu_i]_{q_i},
            // which equals (K_i - K_i^{-1})/(q_i - q_i^{-1}) without the
            // cancellation that form suffers near q = 1.
            let comm = self.e[i].commutator(&self.f[i]);
            let target = CMat::diagonal(
                &self
                    .weights
                    .iter()
                    .map(|w| super::q_int(w[i], qi))
                    .collect::<Vec<_>>(),
            );
            worst = worst.max((&comm - &target).max_norm());
            for j in 0..self.rank {
                if j != i {
                    worst = worst.max(self.e[i].commutator(&self.f[j]).max_norm());
                }
            }
            // Nilpotency of E_i, F_i.
            let mut pe = CMat::identity(self.dim);
            let mut pf = CMat::identity(self.dim);
            for _ in 0..=self.dim {
                pe = &pe * &self.e[i];
                pf = &pf * &self.f[i];
            }
            worst = worst.max(pe.max_norm()).max(pf.max_norm());
            let _ = q;
        }
        worst
    }

    fn check(self) -> Result<Self> {
        let res = self.defining_residual();
        let scale = self
            .e
            .iter()
            .chain(&self.f)
            .map(CMat::max_norm)
            .fold(1.0, f64::max);
        if res > 1e-12 * scale.powi(2) {
            return Err(Error::InvalidInput(format!(
                "module relations violated (residual {res:.2e})"
            )));
        }
        Ok(self)
    }
}

/// The (m+1)-dimensional irreducible: `K v_k = q^{m-2k} v_k`,
/// `E v_k = [k]_q v_{k-1}`, `F v_k = [m-k]_q v_{k+1}`. The classical limit
/// is the m-th symmetric power of the defining sl2 module in its monomial
/// basis.
pub fn uq_sl2_module(m: usize, q: C64) -> Result<QModule> {
    guard_root_of_unity(q, (2 * m + 2) as u32)?;
    let dim = m + 1;
    let mut e = CMat::zeros(dim, dim);
    let mut f = CMat::zeros(dim, dim);
    let mut kdiag = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for k in 0..dim {
        let w = m as i64 - 2 * k as i64;
        weights.push(vec![w]);
        kdiag.push(q.powi(w as i32));
        if k > 0 {
            e[(k - 1, k)] = super::q_int(k as i64, q);
        }
        if k + 1 < dim {
            f[(k + 1, k)] = super::q_int((m - k) as i64, q);
        }
    }
    QModule {
        q: [q.re, q.im],
        dim,
        rank: 1,
        d: vec![1],
        cartan: vec![vec![2]],
        coxeter_orders: vec![vec![1]],
        e: vec![e],
        f: vec![f],
        k: vec![CMat::diagonal(&kdiag)],
        weights,
        kind: QModKind::Sl2Irrep { m },
    }
    .check()
}

/// Vector module of the quantized sl_n on C^n: classical E_i, F_i with
/// `K_i = diag(..., q, q^{-1}, ...)`.
pub fn uq_sln_vector(n: usize, q: C64) -> Result<QModule> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    guard_root_of_unity(q, 4)?;
    let rank = n - 1;
    let mut e = Vec::with_capacity(rank);
    let mut f = Vec::with_capacity(rank);
    let mut k = Vec::with_capacity(rank);
    let mut weights = vec![vec![0i64; rank]; n];
    for i in 0..rank {
        let mut ei = CMat::zeros(n, n);
        ei[(i, i + 1)] = C64::new(1.0, 0.0);
        let mut fi = CMat::zeros(n, n);
        fi[(i + 1, i)] = C64::new(1.0, 0.0);
        e.push(ei);
        f.push(fi);
        let mut kd = vec![C64::new(1.0, 0.0); n];
        kd[i] = q;
        kd[i + 1] = q.inv();
        k.push(CMat::diagonal(&kd));
        weights[i][i] = 1;
        weights[i + 1][i] = -1;
    }
    let rs = crate::liecore::build_root_system(crate::liecore::Series::A, rank)?;
    QModule {
        q: [q.re, q.im],
        dim: n,
        rank,
        d: vec![1; rank],
        cartan: rs.cartan.clone(),
        coxeter_orders: rs.coxeter_orders.clone(),
        e,
        f,
        k,
        weights,
        kind: QModKind::SlnVector { n },
    }
    .check()
}

/// Tensor product along the coproduct; both factors must live over the same
/// q and the same root datum.
pub fn q_tensor(a: &QModule, b: &QModule) -> Result<QModule> {
    if (a.q() - b.q()).norm() > 1e-12 {
        return Err(Error::InvalidInput("tensor factors have different q".into()));
    }
    if a.rank != b.rank || a.cartan != b.cartan || a.d != b.d {
        return Err(Error::ShapeMismatch("tensor factors over different root data".into()));
    }
    let dim = a.dim * b.dim;
    let ia = CMat::identity(a.dim);
    let ib = CMat::identity(b.dim);
    let mut e = Vec::with_capacity(a.rank);
    let mut f = Vec::with_capacity(a.rank);
    let mut k = Vec::with_capacity(a.rank);
    for i in 0..a.rank {
        let b_kinv = b.k_power(i, -1);
        e.push(&a.e[i].kron(&ib) + &a.k[i].kron(&b.e[i]));
        f.push(&a.f[i].kron(&b_kinv) + &ia.kron(&b.f[i]));
        k.push(a.k[i].kron(&b.k[i]));
    }
    let mut weights = Vec::with_capacity(dim);
    for wa in &a.weights {
        for wb in &b.weights {
            weights.push(wa.iter().zip(wb).map(|(x, y)| x + y).collect());
        }
    }
    QModule {
        q: a.q,
        dim,
        rank: a.rank,
        d: a.d.clone(),
        cartan: a.cartan.clone(),
        coxeter_orders: a.coxeter_orders.clone(),
        e,
        f,
        k,
        weights,
        kind: QModKind::Tensor,
    }
    .check()
}

/// n-fold tensor power of a module.
pub fn q_tensor_power(m: &QModule, n: usize) -> Result<QModule> {
    assert!(n >= 1);
    let mut acc = m.clone();
    for _ in 1..n {
        acc = q_tensor(&acc, m)?;
    }
    Ok(acc)
}
