//! Monodromy representations: generator images assemble as (finite
//! symmetry) ∘ (parallel transport along the generator path), and the
//! relation, quadratic, cubic and cross-framework spectral checks run on
//! the resulting matrices.

use super::integrate::{parallel_transport, StepMode, TransportResult};
use super::path::{braid_path_cartan, braid_path_config};
use crate::connections::{ConnectionKind, FlatConnection};
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Presentation data of the receiving group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum BraidKind {
    /// Artin braid group on n strands: n-1 generators, braid and
    /// commutation relations.
    Artin { n: usize },
    /// Generalised braid group presented by Coxeter orders m_ij.
    Generalised { coxeter_orders: Vec<Vec<usize>> },
}

impl BraidKind {
    pub fn num_generators(&self) -> usize {
        match self {
            BraidKind::Artin { n } => n - 1,
            BraidKind::Generalised { coxeter_orders } => coxeter_orders.len(),
        }
    }

    /// Pairs (i, j, m_ij) with i < j.
    pub fn relations(&self) -> Vec<(usize, usize, usize)> {
        match self {
            BraidKind::Artin { n } => {
                let g = n - 1;
                let mut rels = Vec::new();
                for i in 0..g {
                    for j in (i + 1)..g {
                        rels.push((i, j, if j == i + 1 { 3 } else { 2 }));
                    }
                }
                rels
            }
            BraidKind::Generalised { coxeter_orders } => {
                let g = coxeter_orders.len();
                let mut rels = Vec::new();
                for i in 0..g {
                    for j in (i + 1)..g {
                        rels.push((i, j, coxeter_orders[i][j]));
                    }
                }
                rels
            }
        }
    }
}

/// How the finite symmetry acts on the fiber: permutation of tensor
/// factors, or explicit matrices (Weyl-group lifts, reflection modules).
#[derive(Debug, Clone)]
pub enum Equivariance {
    /// Adjacent transpositions on the n-fold power of a d-dimensional space.
    Permutation { factor_dim: usize, n: usize },
    /// One matrix per generator.
    Matrices(Vec<CMat>),
}

impl Equivariance {
    pub fn from_tits(lift: &crate::liecore::TitsLift) -> Equivariance {
        Equivariance::Matrices(lift.matrices.iter().map(|m| m.to_cmat()).collect())
    }

    pub fn from_exact(mats: &[crate::linalg::QMat]) -> Equivariance {
        Equivariance::Matrices(mats.iter().map(|m| m.to_cmat()).collect())
    }

    fn matrix(&self, i: usize) -> CMat {
        match self {
            Equivariance::Permutation { factor_dim, n } => {
                CMat::adjacent_swap(*factor_dim, *n, i)
            }
            Equivariance::Matrices(mats) => mats[i].clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonodromyRep {
    pub kind: BraidKind,
    pub generators: Vec<CMat>,
    pub basepoint: Vec<[f64; 2]>,
    pub tol: f64,
    pub fixed_step: bool,
    /// Order convention: transport first, then the finite symmetry.
    pub convention: String,
    pub transport_errors: Vec<f64>,
}

/// Assembles the monodromy generators of the connection: for each
/// generator, transport along its path composed with the finite symmetry.
/// Generator transports run in parallel and assemble deterministically.
pub fn monodromy_rep(
    conn: &FlatConnection,
    equivariance: &Equivariance,
    tol: f64,
    mode: StepMode,
) -> Result<MonodromyRep> {
    let (kind, paths): (BraidKind, Vec<super::path::PathSpec>) = match &conn.kind {
        ConnectionKind::Config { n } => {
            let paths = (1..*n)
                .map(|i| braid_path_config(*n, i, None, None))
                .collect::<Result<Vec<_>>>()?;
            (BraidKind::Artin { n: *n }, paths)
        }
        ConnectionKind::Cartan { root_system } => {
            let paths = (1..=root_system.rank)
                .map(|i| braid_path_cartan(root_system, i, None, None))
                .collect::<Result<Vec<_>>>()?;
            (
                BraidKind::Generalised { coxeter_orders: root_system.coxeter_orders.clone() },
                paths,
            )
        }
        ConnectionKind::Custom => {
            return Err(Error::InvalidInput(
                "custom arrangements carry no generator paths".into(),
            ))
        }
    };

    let transports: Vec<Result<TransportResult>> = paths
        .par_iter()
        .map(|path| parallel_transport(conn, path, tol, mode))
        .collect();

    let mut generators = Vec::with_capacity(paths.len());
    let mut transport_errors = Vec::with_capacity(paths.len());
    for (i, t) in transports.into_iter().enumerate() {
        let t = t?;
        let sym = equivariance.matrix(i);
        if sym.rows() != conn.fiber_dim {
            return Err(Error::ShapeMismatch("equivariance matrix size != fiber".into()));
        }
        generators.push(&sym * &t.matrix);
        transport_errors.push(t.err_estimate);
    }

    let basepoint = paths[0].start().iter().map(|z| [z.re, z.im]).collect();
    Ok(MonodromyRep {
        kind,
        generators,
        basepoint,
        tol,
        fixed_step: mode == StepMode::Fixed,
        convention: "transport-then-symmetry; generator winds +pi".into(),
        transport_errors,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationReport {
    /// (description, residual) per relation.
    pub residuals: Vec<(String, f64)>,
    pub max_residual: f64,
}

/// Max-norm residuals of the defining braid relations (m_ij-fold
/// alternating products for generalised groups).
pub fn verify_braid_relations(rep: &MonodromyRep) -> RelationReport {
    let mut residuals = Vec::new();
    for (i, j, m) in rep.kind.relations() {
        let dim = rep.generators[0].rows();
        let mut lhs = CMat::identity(dim);
        let mut rhs = CMat::identity(dim);
        for k in 0..m {
            let (a, b) = if k % 2 == 0 { (i, j) } else { (j, i) };
            lhs = &lhs * &rep.generators[a];
            rhs = &rhs * &rep.generators[b];
        }
        let res = (&lhs - &rhs).max_norm();
        residuals.push((format!("braid({},{}) m={}", i + 1, j + 1, m), res));
    }
    let max_residual = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
    RelationReport { residuals, max_residual }
}

/// Residual of the quadratic relation (T - q)(T + q^{-1}) per generator.
pub fn hecke_check(rep: &MonodromyRep, q_per_generator: &[C64]) -> RelationReport {
    let mut residuals = Vec::new();
    for (i, t) in rep.generators.iter().enumerate() {
        let q = q_per_generator[i.min(q_per_generator.len() - 1)];
        let dim = t.rows();
        let a = t - &CMat::identity(dim).scale(q);
        let b = t + &CMat::identity(dim).scale(q.inv());
        let res = (&a * &b).max_norm();
        residuals.push((format!("hecke T_{}", i + 1), res));
    }
    let max_residual = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
    RelationReport { residuals, max_residual }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BmwReport {
    pub cubic: Vec<f64>,
    pub tangle: Vec<(String, f64)>,
    pub max_residual: f64,
}

/// Cubic eigenvalue relation and tangle relations for the orthogonal and
/// symplectic configuration-space monodromy:
/// `(T_i - q)(T_i + q^{-1})(T_i - r^{-1}) = 0` and
/// `E_i T_{i-1}^{±1} E_i = r^{±1} E_i`, with
/// `E_i = 1 - (T_i - T_i^{-1})/(q - q^{-1})`.
pub fn bmw_check(rep: &MonodromyRep, q: C64, r: C64) -> Result<BmwReport> {
    if (q - q.inv()).norm() < 1e-6 {
        return Err(Error::QDegenerate);
    }
    let dim = rep.generators[0].rows();
    let eye = CMat::identity(dim);
    let mut cubic = Vec::new();
    let mut projectors = Vec::new();
    for t in &rep.generators {
        let a = t - &eye.scale(q);
        let b = t + &eye.scale(q.inv());
        let c = t - &eye.scale(r.inv());
        cubic.push((&(&a * &b) * &c).max_norm());
        let tinv = t.inverse()?;
        let e = &eye - &(t - &tinv).scale((q - q.inv()).inv());
        projectors.push(e);
    }
    let mut tangle = Vec::new();
    for i in 1..rep.generators.len() {
        let e = &projectors[i];
        let t_prev = &rep.generators[i - 1];
        let t_prev_inv = t_prev.inverse()?;
        let plus = (&(&(e * t_prev) * e) - &e.scale(r)).max_norm();
        let minus = (&(&(e * &t_prev_inv) * e) - &e.scale(r.inv())).max_norm();
        tangle.push((format!("E_{} T_{}^+1 E_{}", i + 1, i, i + 1), plus));
        tangle.push((format!("E_{} T_{}^-1 E_{}", i + 1, i, i + 1), minus));
    }
    let max_residual = cubic
        .iter()
        .copied()
        .chain(tangle.iter().map(|t| t.1))
        .fold(0.0, f64::max);
    Ok(BmwReport { cubic, tangle, max_residual })
}

/// Spectral projector factor of the cubic relation, exposed for rank
/// studies of the small-coupling limit.
pub fn bmw_projector(t: &CMat, q: C64) -> Result<CMat> {
    if (q - q.inv()).norm() < 1e-6 {
        return Err(Error::QDegenerate);
    }
    let eye = CMat::identity(t.rows());
    let tinv = t.inverse()?;
    Ok(&eye - &(t - &tinv).scale((q - q.inv()).inv()))
}

/// Eigenvalues with multiplicity, sorted lexicographically by (re, im).
pub fn spectrum(m: &CMat) -> Result<Vec<C64>> {
    m.eigenvalues()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordComparison {
    pub word: Vec<usize>,
    pub spectral_deviation: f64,
    pub trace_deviation: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KdReport {
    pub words: Vec<WordComparison>,
    pub max_deviation: f64,
    pub pass: bool,
    pub tol: f64,
}

/// All words of length 1..=max_len over the generator alphabet (indices).
pub fn default_words(num_generators: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut level: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for g in 0..num_generators {
                let mut w2 = w.clone();
                w2.push(g);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        level = next;
    }
    words
}

fn word_image(gens: &[CMat], word: &[usize]) -> CMat {
    let dim = gens[0].rows();
    let mut m = CMat::identity(dim);
    for &g in word {
        m = &m * &gens[g];
    }
    m
}

/// Multiset distance between two eigenvalue lists by greedy nearest
/// matching; a plain lexicographic sort misorders values whose real parts
/// agree only up to floating-point noise.
pub fn spectral_deviation(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for (j, y) in b.iter().enumerate() {
            if !used[j] {
                let d = (x - y).norm();
                if d < best {
                    best = d;
                    best_j = j;
                }
            }
        }
        used[best_j] = true;
        worst = worst.max(best);
    }
    worst
}

/// Conjugation-invariant comparison of two generator families: for each
/// word, the sorted eigenvalue multisets and the traces of the two images
/// are compared within the tolerance. Matrix equality is never required;
/// the equivalences being tested hold only up to an intertwiner.
pub fn kd_compare(
    gens_a: &[CMat],
    gens_b: &[CMat],
    words: &[Vec<usize>],
    tol: f64,
) -> Result<KdReport> {
    if gens_a.len() != gens_b.len() {
        return Err(Error::ShapeMismatch("generator counts differ".into()));
    }
    if gens_a.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    if gens_a[0].rows() != gens_b[0].rows() {
        return Err(Error::ShapeMismatch("fiber dimensions differ".into()));
    }
    let mut comparisons = Vec::new();
    for word in words {
        let ma = word_image(gens_a, word);
        let mb = word_image(gens_b, word);
        let ea = spectrum(&ma)?;
        let eb = spectrum(&mb)?;
        let spectral_deviation = spectral_deviation(&ea, &eb);
        let trace_deviation = (ma.trace() - mb.trace()).norm();
        comparisons.push(WordComparison {
            word: word.clone(),
            spectral_deviation,
            trace_deviation,
        });
    }
    let max_deviation = comparisons
        .iter()
        .map(|c| c.spectral_deviation.max(c.trace_deviation))
        .fold(0.0, f64::max);
    Ok(KdReport { words: comparisons, max_deviation, pass: max_deviation <= tol, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connections::{build_casimir, build_ckz, build_kz, CkzInput};
    use crate::liecore::{build_rep, build_root_system, tits_lift, Algebra, RepKind, Series};

    #[test]
    fn h_zero_permutation_generators_exact() {
        let rep = build_rep(Algebra::Gl(2), RepKind::Vector, None).unwrap();
        let conn = build_kz(&rep, 3, C64::new(0.0, 0.0), None).unwrap();
        let equi = Equivariance::Permutation { factor_dim: 2, n: 3 };
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        for (i, g) in mono.generators.iter().enumerate() {
            let p = CMat::adjacent_swap(2, 3, i);
            assert!((g - &p).max_norm() == 0.0);
        }
        let rel = verify_braid_relations(&mono);
        assert_eq!(rel.max_residual, 0.0);
    }

    #[test]
    fn h_zero_tits_generators_exact() {
        let rep = build_rep(Algebra::Sl(3), RepKind::Vector, None).unwrap();
        let conn = build_casimir(&rep, C64::new(0.0, 0.0), None).unwrap();
        let lift = tits_lift(&rep).unwrap();
        let equi = Equivariance::from_tits(&lift);
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        for (i, g) in mono.generators.iter().enumerate() {
            assert!((g - &lift.matrices[i].to_cmat()).max_norm() == 0.0, "gen {i}");
        }
    }

    #[test]
    fn kz_braid_relations_numeric() {
        let rep = build_rep(Algebra::Sl(2), RepKind::Vector, None).unwrap();
        let conn = build_kz(&rep, 3, C64::new(0.2, 0.0), None).unwrap();
        let equi = Equivariance::Permutation { factor_dim: 2, n: 3 };
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        let rel = verify_braid_relations(&mono);
        assert!(rel.max_residual <= 1e-8, "residual {}", rel.max_residual);
    }

    #[test]
    fn gl2_hecke_eigenvalues() {
        // Each generator has eigenvalues {q, q, ..., -q^{-1}} with
        // q = e^{i pi h}: the quadratic relation holds and pins the
        // orientation convention.
        let h = 0.1;
        let rep = build_rep(Algebra::Gl(2), RepKind::Vector, None).unwrap();
        let conn = build_kz(&rep, 3, C64::new(h, 0.0), None).unwrap();
        let equi = Equivariance::Permutation { factor_dim: 2, n: 3 };
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        let q = C64::new(0.0, std::f64::consts::PI * h).exp();
        let hk = hecke_check(&mono, &[q]);
        assert!(hk.max_residual <= 1e-6, "residual {}", hk.max_residual);

        // Eigenvalue pattern on the first generator: multiset {q,q,q,q,q,q,
        // -1/q, -1/q} on the 8-dimensional fiber.
        let eig = spectrum(&mono.generators[0]).unwrap();
        let mut count_q = 0;
        let mut count_mqinv = 0;
        for z in eig {
            if (z - q).norm() < 1e-6 {
                count_q += 1;
            } else if (z + q.inv()).norm() < 1e-6 {
                count_mqinv += 1;
            }
        }
        assert_eq!(count_q + count_mqinv, 8);
        assert_eq!(count_mqinv, 2);
    }

    #[test]
    fn ckz_s3_hecke() {
        let rs = build_root_system(Series::A, 2).unwrap();
        let module = CkzInput::reflection_rep(&rs);
        let k = 0.1;
        let conn = build_ckz(&rs, &module, &vec![C64::new(k, 0.0); 3]).unwrap();
        let equi = Equivariance::from_exact(&[
            rs.reflection_rep_matrix(0),
            rs.reflection_rep_matrix(1),
        ]);
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        let q = C64::new(0.0, std::f64::consts::PI * k).exp();
        let hk = hecke_check(&mono, &[q, q]);
        assert!(hk.max_residual <= 1e-6, "residual {}", hk.max_residual);
        let rel = verify_braid_relations(&mono);
        assert!(rel.max_residual <= 1e-8);
    }

    #[test]
    fn spectrum_examples() {
        let flip = CMat::adjacent_swap(2, 2, 0);
        let eig = spectrum(&flip).unwrap();
        let expected = [-1.0, 1.0, 1.0, 1.0];
        for (z, e) in eig.iter().zip(expected) {
            assert!((z - C64::new(e, 0.0)).norm() < 1e-12);
        }

        let rot = CMat::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => C64::new(1.0, 0.0),
            (1, 0) => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, 0.0),
        });
        let eig = spectrum(&rot).unwrap();
        assert!((eig[0] - C64::new(0.0, -1.0)).norm() < 1e-10);
        assert!((eig[1] - C64::new(0.0, 1.0)).norm() < 1e-10);

        let theta = 0.7;
        let ph = C64::new(0.0, theta).exp();
        let m = CMat::identity(2).scale(ph);
        let eig = spectrum(&m).unwrap();
        assert!((eig[0] - ph).norm() < 1e-12 && (eig[1] - ph).norm() < 1e-12);
    }

    #[test]
    fn kd_identical_inputs_zero_deviation() {
        let rep = build_rep(Algebra::Gl(2), RepKind::Vector, None).unwrap();
        let conn = build_kz(&rep, 3, C64::new(0.05, 0.0), None).unwrap();
        let equi = Equivariance::Permutation { factor_dim: 2, n: 3 };
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        let words = default_words(2, 3);
        assert_eq!(words.len(), 2 + 4 + 8);
        let report = kd_compare(&mono.generators, &mono.generators, &words, 1e-12).unwrap();
        assert_eq!(report.max_deviation, 0.0);
        assert!(report.pass);
    }

    #[test]
    fn generator_conjugate_to_symmetry_times_exponential() {
        // rho(T_i) has the eigenvalues of (i i+1) e^{i pi h Omega_{i,i+1}}.
        let h = 0.07;
        let rep = build_rep(Algebra::Sl(2), RepKind::Vector, None).unwrap();
        let conn = build_kz(&rep, 2, C64::new(h, 0.0), None).unwrap();
        let equi = Equivariance::Permutation { factor_dim: 2, n: 2 };
        let mono = monodromy_rep(&conn, &equi, 1e-11, StepMode::Adaptive).unwrap();

        let omega = conn.residues[0].to_cmat();
        let model = &CMat::adjacent_swap(2, 2, 0)
            * &omega.scale(C64::new(0.0, std::f64::consts::PI * h)).exp();
        let mut ea = spectrum(&mono.generators[0]).unwrap();
        let mut eb = spectrum(&model).unwrap();
        sort_complex(&mut ea);
        sort_complex(&mut eb);
        for (x, y) in ea.iter().zip(&eb) {
            assert!((x - y).norm() < 1e-8, "{x} vs {y}");
        }
    }
}
