//! Finite-dimensional representations with exact rational matrices: the
//! defining representation of each classical algebra and its adjoint,
//! symmetric, exterior and tensor-power derivatives, plus the per-root
//! Casimir operators and the pairwise coupling operators on tensor powers.

use super::algebra::{trace_gram, Algebra, DefiningData};
use super::root_system::RootSystem;
use crate::error::{Error, Result};
use crate::linalg::{from_digits, rat, rint, to_digits, QMat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_DIM_CAP: usize = 20_000;

/// Cheap exactness checks are run on construction up to this dimension.
const VERIFY_DIM_LIMIT: usize = 260;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepKind {
    Vector,
    Adjoint,
    Sym(usize),
    Ext(usize),
    TensorPower(usize),
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Vector => write!(f, "vector"),
            RepKind::Adjoint => write!(f, "adjoint"),
            RepKind::Sym(k) => write!(f, "sym{k}"),
            RepKind::Ext(k) => write!(f, "ext{k}"),
            RepKind::TensorPower(n) => write!(f, "tensor{n}"),
        }
    }
}

impl RepKind {
    pub fn parse(s: &str) -> Result<RepKind> {
        let s = s.trim();
        let bad = || Error::UnsupportedRep(s.to_string());
        match s {
            "vector" => return Ok(RepKind::Vector),
            "adjoint" => return Ok(RepKind::Adjoint),
            _ => {}
        }
        for (prefix, ctor) in [
            ("sym", RepKind::Sym as fn(usize) -> RepKind),
            ("ext", RepKind::Ext as fn(usize) -> RepKind),
            ("tensor", RepKind::TensorPower as fn(usize) -> RepKind),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                return rest.parse().map(ctor).map_err(|_| bad());
            }
        }
        Err(bad())
    }
}

/// A representation given by exact matrices for the Chevalley generators
/// and for the root vectors of every positive root. The Cartan generators
/// are diagonal in the chosen basis, so each basis vector carries a weight
/// (its `h_i`-eigenvalue tuple).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Representation {
    pub algebra: Algebra,
    pub root_system: RootSystem,
    pub kind: RepKind,
    pub dim: usize,
    /// `(e_alpha, f_alpha)` per positive root, in `root_system` order.
    pub root_vectors: Vec<(QMat, QMat)>,
    /// `h_i = [e_i, f_i]` for the simple roots.
    pub simple_h: Vec<QMat>,
    /// Action of the identity for gl; absent for the semisimple algebras.
    pub central: Option<QMat>,
    /// Weight of each basis vector in fundamental-weight coordinates.
    pub weights: Vec<Vec<i64>>,
    /// `(factor_dim, n)` when the space is an n-fold tensor power.
    pub tensor_factors: Option<(usize, usize)>,
}

pub fn build_rep(algebra: Algebra, kind: RepKind, cap: Option<usize>) -> Result<Representation> {
    let cap = cap.unwrap_or(DEFAULT_DIM_CAP);
    let rs = algebra.root_system()?;
    let def = algebra.defining_data(&rs);
    let n = def.dim;

    let dim = match kind {
        RepKind::Vector => n,
        RepKind::Adjoint => def.flat_basis().len(),
        RepKind::Sym(k) => binomial(n + k - 1, k),
        RepKind::Ext(k) => {
            if k > n {
                return Err(Error::UnsupportedRep(format!("ext{k} of dimension {n}")));
            }
            binomial(n, k)
        }
        RepKind::TensorPower(p) => n.checked_pow(p as u32).unwrap_or(usize::MAX),
    };
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }

    let map = |x: &QMat| -> QMat {
        match kind {
            RepKind::Vector => x.clone(),
            RepKind::Adjoint => adjoint_matrix(&def, x),
            RepKind::Sym(k) => sym_power_matrix(x, k),
            RepKind::Ext(k) => ext_power_matrix(x, k),
            RepKind::TensorPower(p) => tensor_power_matrix(x, p),
        }
    };

    let root_vectors: Vec<(QMat, QMat)> =
        def.root_vectors.iter().map(|(e, f)| (map(e), map(f))).collect();
    let simple_h: Vec<QMat> = (0..rs.rank)
        .map(|i| {
            let (e, f) = &root_vectors[i];
            e.commutator(f)
        })
        .collect();
    let central = def.central.as_ref().map(&map);

    let weights = read_weights(&simple_h, dim)?;
    let tensor_factors = match kind {
        RepKind::TensorPower(p) => Some((n, p)),
        _ => None,
    };

    let rep = Representation {
        algebra,
        root_system: rs,
        kind,
        dim,
        root_vectors,
        simple_h,
        central,
        weights,
        tensor_factors,
    };
    if dim <= VERIFY_DIM_LIMIT {
        rep.verify_relations()?;
    }
    Ok(rep)
}

fn read_weights(simple_h: &[QMat], dim: usize) -> Result<Vec<Vec<i64>>> {
    let mut weights = vec![vec![0i64; simple_h.len()]; dim];
    for (i, h) in simple_h.iter().enumerate() {
        for r in 0..dim {
            for c in 0..dim {
                if r != c && !h[(r, c)].is_zero() {
                    return Err(Error::InvalidInput(
                        "cartan generator is not diagonal in the constructed basis".into(),
                    ));
                }
            }
            let x = &h[(r, r)];
            if !x.is_integer() {
                return Err(Error::InvalidInput("non-integer weight".into()));
            }
            weights[r][i] = i64::try_from(x.to_integer())
                .map_err(|_| Error::InvalidInput("weight overflow".into()))?;
        }
    }
    Ok(weights)
}

impl Representation {
    pub fn simple_e(&self, i: usize) -> &QMat {
        &self.root_vectors[i].0
    }

    pub fn simple_f(&self, i: usize) -> &QMat {
        &self.root_vectors[i].1
    }

    /// `h_alpha` for the positive root `idx`, as the coroot-combination of
    /// the simple `h_i`.
    pub fn h_alpha(&self, idx: usize) -> QMat {
        let mut h = QMat::zeros(self.dim, self.dim);
        for (k, &cv) in self.root_system.coroots[idx].iter().enumerate() {
            if cv != 0 {
                h = h + self.simple_h[k].scale(&rint(cv));
            }
        }
        h
    }

    /// Weight-space decomposition: weight tuple -> basis indices.
    pub fn weight_decomp(&self) -> BTreeMap<Vec<i64>, Vec<usize>> {
        let mut map: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            map.entry(w.clone()).or_default().push(i);
        }
        map
    }

    pub fn zero_weight_indices(&self) -> Vec<usize> {
        let zero = vec![0i64; self.root_system.rank];
        (0..self.dim).filter(|&i| self.weights[i] == zero).collect()
    }

    /// Flat basis of the algebra's image in this representation, in the
    /// canonical order (all e, all f, simple h, central).
    pub fn flat_basis(&self) -> Vec<QMat> {
        let mut v: Vec<QMat> = self.root_vectors.iter().map(|(e, _)| e.clone()).collect();
        v.extend(self.root_vectors.iter().map(|(_, f)| f.clone()));
        v.extend(self.simple_h.iter().cloned());
        if let Some(z) = &self.central {
            v.push(z.clone());
        }
        v
    }

    fn verify_relations(&self) -> Result<()> {
        let rs = &self.root_system;
        for i in 0..rs.rank {
            for j in 0..rs.rank {
                let lhs = self.simple_h[i].commutator(self.simple_e(j));
                let rhs = self.simple_e(j).scale(&rint(rs.cartan[i][j]));
                if lhs != rhs {
                    return Err(Error::InvalidInput(format!("[h_{i}, e_{j}] relation fails")));
                }
                let lhs = self.simple_h[i].commutator(self.simple_f(j));
                let rhs = self.simple_f(j).scale(&rint(-rs.cartan[i][j]));
                if lhs != rhs {
                    return Err(Error::InvalidInput(format!("[h_{i}, f_{j}] relation fails")));
                }
                if i != j && !self.simple_e(i).commutator(self.simple_f(j)).is_zero() {
                    return Err(Error::InvalidInput(format!("[e_{i}, f_{j}] should vanish")));
                }
            }
        }
        for idx in 0..rs.num_positive_roots() {
            let (e, f) = &self.root_vectors[idx];
            if e.commutator(f) != self.h_alpha(idx) {
                return Err(Error::InvalidInput(format!("[e,f] = h fails at root {idx}")));
            }
        }
        Ok(())
    }
}

/// Casimir operator of the sl2 triple of a positive root:
/// `C_alpha = <alpha,alpha>/2 (e f + f e + h^2/2)`.
pub fn casimir_op(rep: &Representation, root_idx: usize) -> QMat {
    let (e, f) = &rep.root_vectors[root_idx];
    let h = rep.h_alpha(root_idx);
    let half_h2 = (&h * &h).scale(&rat(1, 2));
    let sum = &(e * f) + &(f * e) + half_h2;
    let norm2 = rep.root_system.root_norm2(root_idx);
    sum.scale(&(norm2 * rat(1, 2)))
}

/// Pairwise coupling operator on V (x) V: `sum_a X_a (x) X^a` over dual
/// bases of the algebra with respect to the series trace form.
pub fn omega_two(rep: &Representation) -> Result<QMat> {
    let def = rep.algebra.defining_data(&rep.root_system);
    let gram = trace_gram(&def.flat_basis(), &rep.algebra.trace_constant());
    let ginv = gram.inverse()?;
    let bas = rep.flat_basis();
    let d2 = rep.dim * rep.dim;
    let mut omega = QMat::zeros(d2, d2);
    for a in 0..bas.len() {
        for b in 0..bas.len() {
            let g = &ginv[(a, b)];
            if !g.is_zero() {
                omega = omega + bas[a].kron(&bas[b]).scale(g);
            }
        }
    }
    Ok(omega)
}

/// Places a two-site operator (a matrix on V (x) V) at tensor positions
/// `i < j` (zero-based) of the n-fold power of the d-dimensional V.
pub fn embed_two_site(op2: &QMat, d: usize, n: usize, i: usize, j: usize) -> QMat {
    assert!(i < j && j < n);
    let total = d.pow(n as u32);
    let mut out = QMat::zeros(total, total);
    for col in 0..total {
        let digits = to_digits(col, d, n);
        let cpair = digits[i] * d + digits[j];
        for ra in 0..d {
            for rb in 0..d {
                let v = &op2[(ra * d + rb, cpair)];
                if v.is_zero() {
                    continue;
                }
                let mut rd = digits.clone();
                rd[i] = ra;
                rd[j] = rb;
                let row = from_digits(&rd, d);
                out[(row, col)] += v;
            }
        }
    }
    out
}

/// `Omega_ij` on the n-fold tensor power of `rep` (1-based `i < j <= n`).
pub fn omega_pair(
    rep: &Representation,
    i: usize,
    j: usize,
    n: usize,
    cap: Option<usize>,
) -> Result<QMat> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::InvalidInput(format!("need 1 <= i < j <= n, got ({i},{j},{n})")));
    }
    let cap = cap.unwrap_or(DEFAULT_DIM_CAP);
    let total = rep.dim.checked_pow(n as u32).unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::DimensionCap { dim: total, cap });
    }
    let omega = omega_two(rep)?;
    Ok(embed_two_site(&omega, rep.dim, n, i - 1, j - 1))
}

/// Exact permutation matrix for the transposition of tensor factors
/// `i < j` (zero-based) on the n-fold power of a d-dimensional space.
pub fn transposition_matrix(d: usize, n: usize, i: usize, j: usize) -> QMat {
    assert!(i < j && j < n);
    let total = d.pow(n as u32);
    let mut m = QMat::zeros(total, total);
    for col in 0..total {
        let mut digits = to_digits(col, d, n);
        digits.swap(i, j);
        m[(from_digits(&digits, d), col)] = rint(1);
    }
    m
}

fn binomial(n: usize, k: usize) -> usize {
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

fn adjoint_matrix(def: &DefiningData, x: &QMat) -> QMat {
    let basis = def.flat_basis();
    let g = basis.len();
    let n = def.dim;
    // Flatten the basis into columns once and express each bracket in it.
    let flat = QMat::from_fn(n * n, g, |rc, b| basis[b][(rc / n, rc % n)].clone());
    let mut out = QMat::zeros(g, g);
    for (b, y) in basis.iter().enumerate() {
        let bracket = x.commutator(y);
        let target: Vec<Rat> = (0..n * n).map(|rc| bracket[(rc / n, rc % n)].clone()).collect();
        let coords = flat.solve(&target).expect("bracket stays inside the algebra");
        for (a, v) in coords.into_iter().enumerate() {
            out[(a, b)] = v;
        }
    }
    out
}

/// Monomial exponent vectors of total degree k in n variables, in a fixed
/// deterministic order.
pub fn sym_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, pos: usize, left: usize) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for take in (0..=left).rev() {
            cur[pos] = take;
            rec(out, cur, pos + 1, left - take);
        }
    }
    rec(&mut out, &mut cur, 0, k);
    out
}

/// Derivation action on the degree-k monomial basis:
/// `X . x^a = sum_i a_i sum_j X_{ji} x^(a - e_i + e_j)`.
fn sym_power_matrix(x: &QMat, k: usize) -> QMat {
    let n = x.rows();
    let basis = sym_basis(n, k);
    let index: BTreeMap<Vec<usize>, usize> =
        basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut out = QMat::zeros(basis.len(), basis.len());
    for (col, a) in basis.iter().enumerate() {
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                let v = &x[(j, i)];
                if v.is_zero() {
                    continue;
                }
                let mut b = a.clone();
                b[i] -= 1;
                b[j] += 1;
                let row = index[&b];
                out[(row, col)] += v * rint(a[i] as i64);
            }
        }
    }
    out
}

fn ext_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(out, cur, i + 1, n, k);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, n, k);
    out
}

fn ext_power_matrix(x: &QMat, k: usize) -> QMat {
    let n = x.rows();
    let basis = ext_basis(n, k);
    let index: BTreeMap<Vec<usize>, usize> =
        basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut out = QMat::zeros(basis.len(), basis.len());
    for (col, subset) in basis.iter().enumerate() {
        for (pos, &s) in subset.iter().enumerate() {
            for j in 0..n {
                let v = &x[(j, s)];
                if v.is_zero() {
                    continue;
                }
                if subset.contains(&j) && j != s {
                    continue;
                }
                let mut replaced: Vec<usize> = subset.clone();
                replaced[pos] = j;
                // Sort and track the sign of the permutation.
                let mut sign = 1i64;
                let mut arr = replaced;
                for a in 1..arr.len() {
                    let mut b = a;
                    while b > 0 && arr[b - 1] > arr[b] {
                        arr.swap(b - 1, b);
                        sign = -sign;
                        b -= 1;
                    }
                }
                let row = index[&arr];
                out[(row, col)] += v * rint(sign);
            }
        }
    }
    out
}

fn tensor_power_matrix(x: &QMat, p: usize) -> QMat {
    let n = x.rows();
    let total = n.pow(p as u32);
    let mut out = QMat::zeros(total, total);
    let eye = QMat::identity(n);
    for slot in 0..p {
        let mut term = QMat::identity(1);
        for s in 0..p {
            term = term.kron(if s == slot { x } else { &eye });
        }
        out = out + term;
    }
    out
}
