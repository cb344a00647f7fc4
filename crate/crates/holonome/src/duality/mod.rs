//! Polynomial models on k x n matrices: the commuting row/column actions,
//! highest-weight multiplicity spaces, and the exact coincidence between
//! the Cartan-space Casimir residues for sl_n and the configuration-space
//! coupling residues for sl_k transported through the identification.

pub mod schur_weyl;

pub use schur_weyl::{hook_length_dim, partitions, schur_weyl_zero_weight, transpose_partition};

use crate::error::{Error, Result};
use crate::linalg::{rat, rint, QMat, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Monomials in the k x n variables x_{a,j} (row a, column j) that are
/// homogeneous of degree mu_j in each column j. Exponent vectors are
/// column-major: index j*k + a.
#[derive(Debug, Clone)]
pub struct PolySpace {
    pub k: usize,
    pub n: usize,
    pub mu: Vec<usize>,
    pub basis: Vec<Vec<u8>>,
}

impl PolySpace {
    pub fn new(k: usize, n: usize, mu: &[usize]) -> Result<PolySpace> {
        if mu.len() != n {
            return Err(Error::ShapeMismatch("multidegree length != n".into()));
        }
        let mut basis = vec![vec![0u8; k * n]];
        for (j, &deg) in mu.iter().enumerate() {
            let cols = compositions(deg, k);
            let mut next = Vec::with_capacity(basis.len() * cols.len());
            for b in &basis {
                for comp in &cols {
                    let mut m = b.clone();
                    for a in 0..k {
                        m[j * k + a] = comp[a] as u8;
                    }
                    next.push(m);
                }
            }
            basis = next;
        }
        basis.sort();
        Ok(PolySpace { k, n, mu: mu.to_vec(), basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Row-degree vector (the gl_k torus weight) of one monomial.
    pub fn row_degrees(&self, idx: usize) -> Vec<usize> {
        let m = &self.basis[idx];
        (0..self.k)
            .map(|a| (0..self.n).map(|j| m[j * self.k + a] as usize).sum())
            .collect()
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0usize; parts];
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, pos: usize, left: usize) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for take in 0..=left {
            cur[pos] = take;
            rec(out, cur, pos + 1, left - take);
        }
    }
    rec(&mut out, &mut cur, 0, total);
    out
}

/// A monomial sector with an index map; used for the fixed-row-degree
/// sector spanning a whole orbit of column degrees.
#[derive(Debug, Clone)]
pub struct MonomialSector {
    pub k: usize,
    pub n: usize,
    pub basis: Vec<Vec<u8>>,
    index: BTreeMap<Vec<u8>, usize>,
}

impl MonomialSector {
    /// All monomials of total degree d in the k x n variables; stable under
    /// both the row and the column actions.
    pub fn with_total_degree(k: usize, n: usize, d: usize) -> MonomialSector {
        let mut basis: Vec<Vec<u8>> = compositions(d, k * n)
            .into_iter()
            .map(|c| c.into_iter().map(|x| x as u8).collect())
            .collect();
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        MonomialSector { k, n, basis, index }
    }

    pub fn from_poly(poly: &PolySpace) -> MonomialSector {
        let index = poly.basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        MonomialSector { k: poly.k, n: poly.n, basis: poly.basis.clone(), index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn col_degrees(&self, idx: usize) -> Vec<usize> {
        let m = &self.basis[idx];
        (0..self.n)
            .map(|j| (0..self.k).map(|a| m[j * self.k + a] as usize).sum())
            .collect()
    }

    pub fn row_degrees(&self, idx: usize) -> Vec<usize> {
        let m = &self.basis[idx];
        (0..self.k)
            .map(|a| (0..self.n).map(|j| m[j * self.k + a] as usize).sum())
            .collect()
    }

    /// Matrix of `sum x_dst d/dx_src` over the given variable pairs.
    fn polarization(&self, pairs: &[(usize, usize)]) -> QMat {
        let mut out = QMat::zeros(self.dim(), self.dim());
        for (col, m) in self.basis.iter().enumerate() {
            for &(dst, src) in pairs {
                let e = m[src];
                if e == 0 {
                    continue;
                }
                let mut m2 = m.clone();
                m2[src] -= 1;
                m2[dst] += 1;
                let row = *self
                    .index
                    .get(&m2)
                    .expect("polarization image stays in the sector");
                out[(row, col)] += rint(e as i64);
            }
        }
        out
    }

    /// Row action of E_{ab} in gl_k: `sum_j x_{a,j} d/dx_{b,j}`.
    pub fn row_op(&self, a: usize, b: usize) -> QMat {
        let pairs: Vec<(usize, usize)> =
            (0..self.n).map(|j| (j * self.k + a, j * self.k + b)).collect();
        self.polarization(&pairs)
    }

    /// Column action of E_{cd} in gl_n: `sum_a x_{a,c} d/dx_{a,d}`.
    pub fn col_op(&self, c: usize, d: usize) -> QMat {
        let pairs: Vec<(usize, usize)> =
            (0..self.k).map(|a| (c * self.k + a, d * self.k + a)).collect();
        self.polarization(&pairs)
    }

    /// Column-local action of a gl_k matrix on column j only.
    pub fn col_local_op(&self, x: &QMat, j: usize) -> QMat {
        let mut out = QMat::zeros(self.dim(), self.dim());
        for (col, m) in self.basis.iter().enumerate() {
            for b in 0..self.k {
                let e = m[j * self.k + b];
                if e == 0 {
                    continue;
                }
                for a in 0..self.k {
                    if x[(a, b)].is_zero() {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2[j * self.k + b] -= 1;
                    m2[j * self.k + a] += 1;
                    let row = *self.index.get(&m2).expect("column-local image in sector");
                    out[(row, col)] += &x[(a, b)] * rint(e as i64);
                }
            }
        }
        out
    }
}

/// Highest-weight multiplicity space inside a fixed-multidegree space.
#[derive(Debug, Clone)]
pub struct HWSpace {
    pub poly: PolySpace,
    /// Columns: basis vectors in PolySpace coordinates.
    pub basis: QMat,
}

impl HWSpace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// Basis of the gl_k highest-weight vectors of weight lambda in the
/// multidegree-mu polynomial space: the joint kernel of the raising
/// operators on the row-degree-lambda monomials. Empty when the
/// multiplicity is zero. Standing assumption k >= n.
pub fn hw_space(k: usize, n: usize, lambda: &[usize], mu: &[usize]) -> Result<HWSpace> {
    if k < n {
        return Err(Error::InvalidInput("need k >= n".into()));
    }
    if lambda.len() > k {
        return Err(Error::InvalidInput("lambda has more than k rows".into()));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput("lambda is not a partition".into()));
    }
    if lambda.iter().sum::<usize>() != mu.iter().sum::<usize>() {
        return Err(Error::InvalidInput("|lambda| != |mu|".into()));
    }
    let poly = PolySpace::new(k, n, mu)?;
    let mut lam = lambda.to_vec();
    lam.resize(k, 0);

    let weight_idx: Vec<usize> =
        (0..poly.dim()).filter(|&i| poly.row_degrees(i) == lam).collect();
    if weight_idx.is_empty() {
        return Ok(HWSpace { poly, basis: QMat::zeros(0, 0) });
    }

    let sector = MonomialSector::from_poly(&poly);
    let all_rows: Vec<usize> = (0..sector.dim()).collect();
    let mut blocks = Vec::new();
    for a in 0..k - 1 {
        let raise = sector.row_op(a, a + 1);
        blocks.push(raise.submatrix(&all_rows, &weight_idx));
    }
    let refs: Vec<&QMat> = blocks.iter().collect();
    let kernel = QMat::vstack(&refs).nullspace();

    let mut basis = QMat::zeros(poly.dim(), kernel.cols());
    for c in 0..kernel.cols() {
        for (r, &wi) in weight_idx.iter().enumerate() {
            basis[(wi, c)] = kernel[(r, c)].clone();
        }
    }
    Ok(HWSpace { poly, basis })
}

/// Per-block result of the residue coincidence check for one column pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidueBlockReport {
    pub pair: (usize, usize),
    pub nu: Vec<usize>,
    #[serde(with = "crate::linalg::rat::rat_string")]
    pub scalar: Rat,
    pub off_scalar_zero: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidueMatchReport {
    pub lambda: Vec<usize>,
    pub orbit: Vec<Vec<usize>>,
    pub multiplicities: Vec<usize>,
    /// Coefficient kappa in `C_alpha = kappa Omega + scalar`; the operator
    /// identity `ef + fe = deg_c + deg_d + 2 Omega` on polynomials forces
    /// kappa = 2 with the trace-form normalization of Omega.
    pub omega_coefficient: i64,
    pub blocks: Vec<ResidueBlockReport>,
    pub pass: bool,
}

/// On the direct sum of highest-weight spaces over the S_n-orbit of mu,
/// compares the per-root Casimir of the column action (sl_n side) with the
/// pairwise coupling operator on column pairs (sl_k side):
/// `C_{alpha_cd} = 2 Omega_cd + scalar` exactly, blockwise. Scalars are
/// reported; the off-scalar discrepancy must vanish identically. The two
/// connections thus coincide after doubling the coupling and twisting by
/// an abelian character, matching the adjoint-module reduction where the
/// reflection weights come out as -h<alpha,alpha> = -2h.
pub fn residue_match_check(
    k: usize,
    n: usize,
    lambda: &[usize],
    mu: &[usize],
) -> Result<ResidueMatchReport> {
    if k < n {
        return Err(Error::InvalidInput("need k >= n".into()));
    }
    if lambda.iter().sum::<usize>() != mu.iter().sum::<usize>() {
        return Err(Error::InvalidInput("|lambda| != |mu|".into()));
    }
    let orbit = orbit_of(mu, n);
    let d: usize = lambda.iter().sum();
    let sector = MonomialSector::with_total_degree(k, n, d);

    // Highest-weight vectors of row weight lambda: kernel of the raising
    // operators restricted to the row-degree-lambda columns of the sector.
    let mut lam = lambda.to_vec();
    lam.resize(k, 0);
    let lambda_idx: Vec<usize> =
        (0..sector.dim()).filter(|&i| sector.row_degrees(i) == lam).collect();
    if lambda_idx.is_empty() {
        return Err(Error::IdentificationMismatch("weight lambda does not occur".into()));
    }
    let all_rows: Vec<usize> = (0..sector.dim()).collect();
    let mut raise_blocks = Vec::new();
    for a in 0..k - 1 {
        raise_blocks.push(sector.row_op(a, a + 1).submatrix(&all_rows, &lambda_idx));
    }
    let refs: Vec<&QMat> = raise_blocks.iter().collect();
    let kernel_small = QMat::vstack(&refs).nullspace();
    // Embed back into sector coordinates.
    let mut kernel = QMat::zeros(sector.dim(), kernel_small.cols());
    for c in 0..kernel_small.cols() {
        for (r, &i) in lambda_idx.iter().enumerate() {
            kernel[(i, c)] = kernel_small[(r, c)].clone();
        }
    }

    // The kernel basis need not be homogeneous in the column degrees;
    // split each vector into its nu-components (again highest weight) and
    // keep the components supported on the requested orbit.
    let mut by_nu: BTreeMap<Vec<usize>, Vec<Vec<Rat>>> = BTreeMap::new();
    for c in 0..kernel.cols() {
        let v = kernel.column(c);
        let mut split: BTreeMap<Vec<usize>, Vec<Rat>> = BTreeMap::new();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let nu = sector.col_degrees(i);
                split.entry(nu).or_insert_with(|| vec![Rat::zero(); sector.dim()])[i] =
                    x.clone();
            }
        }
        for (nu, vec) in split {
            if orbit.contains(&nu) {
                by_nu.entry(nu).or_default().push(vec);
            }
        }
    }

    let mut columns: Vec<Vec<Rat>> = Vec::new();
    let mut block_of_col: Vec<usize> = Vec::new();
    let mut multiplicities = Vec::new();
    for (bi, nu) in orbit.iter().enumerate() {
        let vecs = by_nu.remove(nu).unwrap_or_default();
        let mut block_cols: Vec<Vec<Rat>> = Vec::new();
        for v in vecs {
            let mut candidate = block_cols.clone();
            candidate.push(v.clone());
            if QMat::from_rows(candidate.clone()).rank() == candidate.len() {
                block_cols.push(v);
            }
        }
        multiplicities.push(block_cols.len());
        for v in block_cols {
            columns.push(v);
            block_of_col.push(bi);
        }
    }
    if columns.is_empty() {
        return Err(Error::IdentificationMismatch("empty multiplicity space".into()));
    }
    let m_basis = QMat::from_rows(columns).transpose();

    let express = |op: &QMat| -> Result<QMat> {
        let image = op * &m_basis;
        let mut out = QMat::zeros(m_basis.cols(), m_basis.cols());
        for c in 0..image.cols() {
            let coords = m_basis.solve(&image.column(c)).map_err(|_| {
                Error::IdentificationMismatch(format!("operator image leaves the span at {c}"))
            })?;
            for (r, x) in coords.into_iter().enumerate() {
                out[(r, c)] = x;
            }
        }
        Ok(out)
    };

    let slk_pairs = slk_dual_pairs(k);

    let mut blocks = Vec::new();
    let mut pass = true;
    for c in 0..n {
        for d in (c + 1)..n {
            let e = sector.col_op(c, d);
            let f = sector.col_op(d, c);
            let h = &sector.col_op(c, c) - &sector.col_op(d, d);
            let casimir = &(&e * &f) + &(&f * &e) + (&h * &h).scale(&rat(1, 2));

            let mut omega = QMat::zeros(sector.dim(), sector.dim());
            for (x, y) in &slk_pairs {
                omega = omega + &sector.col_local_op(x, c) * &sector.col_local_op(y, d);
            }

            let cm = express(&casimir)?;
            let om = express(&omega)?;
            let diff = &cm - &om.scale(&rint(2));

            for (bi, nu) in orbit.iter().enumerate() {
                let idx: Vec<usize> =
                    (0..m_basis.cols()).filter(|&i| block_of_col[i] == bi).collect();
                if idx.is_empty() {
                    continue;
                }
                let block = diff.submatrix(&idx, &idx);
                let scalar = block[(0, 0)].clone();
                let off = &block - &QMat::identity(idx.len()).scale(&scalar);
                let mut ok = off.is_zero();
                for &i in &idx {
                    for j in 0..m_basis.cols() {
                        if block_of_col[j] != bi && !diff[(i, j)].is_zero() {
                            ok = false;
                        }
                    }
                }
                pass &= ok;
                blocks.push(ResidueBlockReport {
                    pair: (c + 1, d + 1),
                    nu: nu.clone(),
                    scalar,
                    off_scalar_zero: ok,
                });
            }
        }
    }

    Ok(ResidueMatchReport {
        lambda: lambda.to_vec(),
        orbit,
        multiplicities,
        omega_coefficient: 2,
        blocks,
        pass,
    })
}

/// Dual basis pairs (X_a, X^a) of sl_k for the defining trace form:
/// off-diagonal E_ab <-> E_ba, Cartan part via the inverse Gram matrix of
/// H_a = E_aa - E_{a+1,a+1}.
pub(crate) fn slk_dual_pairs(k: usize) -> Vec<(QMat, QMat)> {
    let em = |i: usize, j: usize| {
        let mut m = QMat::zeros(k, k);
        m[(i, j)] = Rat::one();
        m
    };
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a != b {
                pairs.push((em(a, b), em(b, a)));
            }
        }
    }
    let r = k - 1;
    if r > 0 {
        let h: Vec<QMat> = (0..r).map(|a| &em(a, a) - &em(a + 1, a + 1)).collect();
        let gram = QMat::from_fn(r, r, |i, j| (&h[i] * &h[j]).trace());
        let ginv = gram.inverse().expect("A-type Gram is invertible");
        for i in 0..r {
            let mut dual = QMat::zeros(k, k);
            for j in 0..r {
                dual = dual + h[j].scale(&ginv[(j, i)]);
            }
            pairs.push((h[i].clone(), dual));
        }
    }
    pairs
}

/// Distinct permutations of mu padded to length n, sorted.
pub fn orbit_of(mu: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut base = mu.to_vec();
    base.resize(n, 0);
    base.sort_unstable();
    let mut out = Vec::new();
    let mut arr = base;
    permutations_unique(&mut arr, 0, &mut out);
    out.sort();
    out.dedup();
    out
}

fn permutations_unique(arr: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start + 1 >= arr.len() {
        out.push(arr.clone());
        return;
    }
    let mut seen = Vec::new();
    for i in start..arr.len() {
        if seen.contains(&arr[i]) {
            continue;
        }
        seen.push(arr[i]);
        arr.swap(start, i);
        permutations_unique(arr, start + 1, out);
        arr.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_to_string;

    #[test]
    fn polyspace_dimensions() {
        let p = PolySpace::new(2, 2, &[1, 1]).unwrap();
        assert_eq!(p.dim(), 4);
        // binom(2+2, 2) * binom(1+2, 2) = 6 * 3
        let p = PolySpace::new(3, 2, &[2, 1]).unwrap();
        assert_eq!(p.dim(), 18);
    }

    /// Oracle: solve the 2-variable raising-operator kernel by hand; the
    /// determinant x11 x22 - x21 x12 spans it.
    #[test]
    fn hw_2211_is_determinant() {
        let hw = hw_space(2, 2, &[1, 1], &[1, 1]).unwrap();
        assert_eq!(hw.dim(), 1);
        let v = hw.basis.column(0);
        let poly = &hw.poly;
        let idx_a = poly.basis.iter().position(|m| m == &vec![1, 0, 0, 1]).unwrap();
        let idx_b = poly.basis.iter().position(|m| m == &vec![0, 1, 1, 0]).unwrap();
        let ratio = &v[idx_a] / &v[idx_b];
        assert_eq!(rat_to_string(&ratio), "-1");
        for (i, x) in v.iter().enumerate() {
            if i != idx_a && i != idx_b {
                assert!(x.is_zero());
            }
        }
    }

    #[test]
    fn hw_dimensions_match_kostka() {
        assert_eq!(hw_space(2, 2, &[2, 0], &[1, 1]).unwrap().dim(), 1);
        assert_eq!(hw_space(2, 2, &[1, 1], &[2, 0]).unwrap().dim(), 0);
        assert_eq!(hw_space(3, 3, &[2, 1, 0], &[1, 1, 1]).unwrap().dim(), 2);
        assert_eq!(hw_space(2, 2, &[2, 0], &[2, 0]).unwrap().dim(), 1);
    }

    #[test]
    fn hw_rejects_bad_input() {
        assert!(hw_space(2, 3, &[1, 1], &[1, 1, 0]).is_err());
        assert!(hw_space(2, 2, &[1, 2], &[2, 1]).is_err());
        assert!(hw_space(2, 2, &[1, 1], &[1, 0]).is_err());
    }

    #[test]
    fn hw_vectors_are_annihilated() {
        let hw = hw_space(3, 3, &[2, 1, 0], &[1, 1, 1]).unwrap();
        let sector = MonomialSector::from_poly(&hw.poly);
        for a in 0..2 {
            let raise = sector.row_op(a, a + 1);
            let image = &raise * &hw.basis;
            assert!(image.is_zero());
        }
    }

    /// Pairwise coupling operators built on columns coincide with the
    /// tensor-power construction under the column-tensor identification.
    #[test]
    fn column_omega_matches_tensor_omega() {
        use crate::liecore::{build_rep, omega_pair, Algebra, RepKind};
        let k = 2;
        let n = 3;
        let sector = MonomialSector::with_total_degree(k, n, 3);
        let idx: Vec<usize> = (0..sector.dim())
            .filter(|&i| sector.col_degrees(i) == vec![1, 1, 1])
            .collect();
        assert_eq!(idx.len(), 8);
        let digit_of =
            |m: &Vec<u8>, j: usize| -> usize { (0..k).position(|a| m[j * k + a] == 1).unwrap() };
        let mut order: Vec<usize> = idx.clone();
        order.sort_by_key(|&i| {
            let m = &sector.basis[i];
            (0..n).fold(0usize, |acc, j| acc * k + digit_of(m, j))
        });

        let pairs = slk_dual_pairs(k);
        let mut omega = QMat::zeros(sector.dim(), sector.dim());
        for (x, y) in &pairs {
            omega = omega + &sector.col_local_op(x, 0) * &sector.col_local_op(y, 1);
        }
        let restricted = omega.submatrix(&order, &order);

        let rep = build_rep(Algebra::Sl(k), RepKind::Vector, None).unwrap();
        let tensor_omega = omega_pair(&rep, 1, 2, 3, None).unwrap();
        assert_eq!(restricted, tensor_omega);
    }

    #[test]
    fn residue_match_trivial_block() {
        let report = residue_match_check(2, 2, &[1, 1], &[1, 1]).unwrap();
        assert!(report.pass);
        assert_eq!(report.orbit, vec![vec![1, 1]]);
        assert_eq!(report.multiplicities, vec![1]);
    }

    #[test]
    fn residue_match_sym2_orbits() {
        let report = residue_match_check(2, 2, &[2, 0], &[1, 1]).unwrap();
        assert!(report.pass);
        let report2 = residue_match_check(2, 2, &[2, 0], &[2, 0]).unwrap();
        assert!(report2.pass);
        assert_eq!(report2.orbit, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn residue_match_two_dimensional_multiplicity() {
        let report = residue_match_check(3, 3, &[2, 1, 0], &[1, 1, 1]).unwrap();
        assert!(report.pass);
        assert_eq!(report.multiplicities, vec![2]);
        assert_eq!(report.blocks.len(), 3);
    }

    #[test]
    fn multiplicity_freeness_small_scale() {
        for k in 1..=3usize {
            for n in 1..=3usize {
                for d in 0..=4usize {
                    let lhs = binom(k * n + d - 1, d);
                    let mut rhs = 0usize;
                    for lam in partitions_of_at_most(d, k.min(n)) {
                        rhs += schur_weyl::gl_weyl_dim(k, &lam)
                            * schur_weyl::gl_weyl_dim(n, &lam);
                    }
                    assert_eq!(lhs, rhs, "k={k} n={n} d={d}");
                }
            }
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as usize
    }

    fn partitions_of_at_most(d: usize, rows: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            out: &mut Vec<Vec<usize>>,
            cur: &mut Vec<usize>,
            left: usize,
            max: usize,
            rows: usize,
        ) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            if cur.len() == rows {
                return;
            }
            for take in (1..=left.min(max)).rev() {
                cur.push(take);
                rec(out, cur, left - take, take, rows);
                cur.pop();
            }
        }
        rec(&mut out, &mut cur, d, d.max(1), rows);
        out
    }
}
