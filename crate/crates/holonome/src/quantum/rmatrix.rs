//! Braiding operators: the diagonal-Cartan-times-unipotent R-matrix for
//! rank-1 modules (coefficients solved from the intertwining property) and
//! the standard vector-module R-matrix for the quantized sl_n.

use super::qmodule::{QModKind, QModule};
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};

#[derive(Debug, Clone)]
pub struct RMatrix {
    pub r: CMat,
    /// flip ∘ r: the braid operator commuting with the coproduct action.
    pub rv: CMat,
    /// Eigenvalue on the top weight vector; records the scalar
    /// normalization so cross-framework comparisons can account for it.
    pub top_eigenvalue: C64,
    pub convention: String,
}

fn flip(da: usize, db: usize) -> CMat {
    let mut m = CMat::zeros(da * db, da * db);
    for a in 0..da {
        for b in 0..db {
            m[(b * da + a, a * db + b)] = C64::new(1.0, 0.0);
        }
    }
    m
}

fn coproduct(a: &QModule, b: &QModule, i: usize) -> (CMat, CMat, CMat) {
    let ia = CMat::identity(a.dim);
    let ib = CMat::identity(b.dim);
    let e = &a.e[i].kron(&ib) + &a.k[i].kron(&b.e[i]);
    let f = &a.f[i].kron(&b.k_power(i, -1)) + &ia.kron(&b.f[i]);
    let k = a.k[i].kron(&b.k[i]);
    (e, f, k)
}

/// R-matrix on M1 (x) M2.
pub fn r_matrix(m1: &QModule, m2: &QModule) -> Result<RMatrix> {
    if (m1.q() - m2.q()).norm() > 1e-12 {
        return Err(Error::InvalidInput("factors have different q".into()));
    }
    match (&m1.kind, &m2.kind) {
        (QModKind::SlnVector { n: n1 }, QModKind::SlnVector { n: n2 }) if n1 == n2 => {
            Ok(vector_r_matrix(*n1, m1.q()))
        }
        _ if m1.rank == 1 && m2.rank == 1 => rank1_r_matrix(m1, m2),
        _ => Err(Error::UnsupportedRep(
            "R-matrix implemented for equal vector modules and rank-1 modules".into(),
        )),
    }
}

/// Standard Hecke-type braiding of the vector module: on e_i (x) e_j,
/// `Rv(e_i⊗e_i) = q e_i⊗e_i`, `Rv(e_i⊗e_j) = e_j⊗e_i + (q - q^{-1}) e_i⊗e_j`
/// for i < j, `Rv(e_j⊗e_i) = e_i⊗e_j` for i < j. Eigenvalues q and -q^{-1};
/// the classical limit is the flip.
fn vector_r_matrix(n: usize, q: C64) -> RMatrix {
    let d2 = n * n;
    let mut rv = CMat::zeros(d2, d2);
    let one = C64::new(1.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            if i == j {
                rv[(col, col)] = q;
            } else if i < j {
                rv[(j * n + i, col)] = one;
                rv[(col, col)] = q - q.inv();
            } else {
                rv[(j * n + i, col)] = one;
            }
        }
    }
    let r = &flip(n, n) * &rv;
    RMatrix {
        r,
        rv,
        top_eigenvalue: q,
        convention: "vector module, top eigenvalue q".into(),
    }
}

/// Rank-1 R-matrix `q^{H⊗H/2} (1 + sum_n c_n E^n ⊗ F^n)` with the
/// coefficients c_n solved from the intertwining property. A singular
/// solve signals a convention bug upstream.
fn rank1_r_matrix(m1: &QModule, m2: &QModule) -> Result<RMatrix> {
    let q = m1.q();
    let d1 = m1.dim;
    let d2 = m2.dim;
    let dd = d1 * d2;

    // Cartan factor: diagonal with entries q^{mu nu / 2}.
    let mut cartan = CMat::zeros(dd, dd);
    for a in 0..d1 {
        for b in 0..d2 {
            let mu = m1.weights[a][0] as f64;
            let nu = m2.weights[b][0] as f64;
            cartan[(a * d2 + b, a * d2 + b)] = q.powf(mu * nu / 2.0);
        }
    }

    // Nilpotency degrees bound the unipotent sum.
    let nilp = |x: &CMat| -> usize {
        let mut p = CMat::identity(x.rows());
        for d in 0..=x.rows() {
            if p.max_norm() < 1e-13 {
                return d;
            }
            p = &p * x;
        }
        x.rows() + 1
    };
    let degree = nilp(&m1.f[0]).min(nilp(&m2.e[0]));
    let n_unknowns = degree.saturating_sub(1);

    // Basis terms M_n = flip . cartan . (F^n (x) E^n), n = 0..degree-1.
    // With the coproduct Delta(E) = E(x)1 + K(x)E the unipotent part of
    // the braiding lowers on the first factor and raises on the second;
    // the opposite chirality admits no intertwining solution.
    let fl = flip(d1, d2);
    let mut terms = Vec::with_capacity(degree);
    let mut fpow = CMat::identity(d1);
    let mut epow = CMat::identity(d2);
    for n in 0..degree {
        if n > 0 {
            fpow = &fpow * &m1.f[0];
            epow = &epow * &m2.e[0];
        }
        terms.push(&fl * &(&cartan * &fpow.kron(&epow)));
    }

    // Intertwining: Rv . Delta(x) - Delta(x) . Rv = 0 for x = E, F.
    let (de, df, dk) = coproduct(m1, m2, 0);
    let mut rows: Vec<Vec<C64>> = Vec::new();
    let mut rhs: Vec<C64> = Vec::new();
    for x in [&de, &df] {
        let constant = terms[0].commutator(x);
        let cols: Vec<CMat> = terms[1..].iter().map(|t| t.commutator(x)).collect();
        for r in 0..dd {
            for c in 0..dd {
                let row: Vec<C64> = cols.iter().map(|m| m[(r, c)]).collect();
                if row.iter().any(|z| z.norm() > 1e-14) || constant[(r, c)].norm() > 1e-14 {
                    rows.push(row);
                    rhs.push(-constant[(r, c)]);
                }
            }
        }
    }

    let coeffs = if n_unknowns == 0 {
        Vec::new()
    } else {
        least_squares(&rows, &rhs, n_unknowns)?
    };

    let mut rv = terms[0].clone();
    for (n, c) in coeffs.iter().enumerate() {
        rv = &rv + &terms[n + 1].scale(*c);
    }

    // Verify the solve: the braid operator must commute with the coproduct
    // action of E, F and K.
    let scale = rv.max_norm().max(1.0);
    for x in [&de, &df, &dk] {
        if rv.commutator(x).max_norm() > 1e-10 * scale {
            return Err(Error::IntertwinerSolve);
        }
    }

    let top = rv[(0, 0)];
    let r = &flip(d2, d1) * &rv;
    Ok(RMatrix {
        r,
        rv,
        top_eigenvalue: top,
        convention: "rank-1, Cartan factor q^{H(x)H/2}, unipotent F^n(x)E^n, c_n from intertwining"
            .into(),
    })
}

/// Dense least-squares via normal equations; the systems here are tiny
/// (a handful of unknowns) and well conditioned.
fn least_squares(rows: &[Vec<C64>], rhs: &[C64], unknowns: usize) -> Result<Vec<C64>> {
    let mut ata = CMat::zeros(unknowns, unknowns);
    let mut atb = vec![C64::new(0.0, 0.0); unknowns];
    for (row, b) in rows.iter().zip(rhs) {
        for i in 0..unknowns {
            for j in 0..unknowns {
                ata[(i, j)] += row[i].conj() * row[j];
            }
            atb[i] += row[i].conj() * b;
        }
    }
    let inv = ata.inverse().map_err(|_| Error::IntertwinerSolve)?;
    Ok(inv.apply(&atb))
}

/// Generators `R_i^v` on the n-fold tensor power: the braid operator on
/// adjacent factors i, i+1 (1-based i; identity elsewhere). Braid
/// relations are verified to 1e-10 before returning.
pub fn rmat_rep(m: &QModule, n: usize, cap: Option<usize>) -> Result<Vec<CMat>> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    let cap = cap.unwrap_or(crate::liecore::DEFAULT_DIM_CAP);
    let total = m.dim.checked_pow(n as u32).unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::DimensionCap { dim: total, cap });
    }
    let rv = r_matrix(m, m)?.rv;
    let mut gens = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let pre = CMat::identity(m.dim.pow(i as u32));
        let post = CMat::identity(m.dim.pow((n - i - 2) as u32));
        gens.push(pre.kron(&rv).kron(&post));
    }
    // Braid and commutation relations.
    let scale = gens[0].max_norm().max(1.0);
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let res = if j == i + 1 {
                let lhs = &(&gens[i] * &gens[j]) * &gens[i];
                let rhs = &(&gens[j] * &gens[i]) * &gens[j];
                (&lhs - &rhs).max_norm()
            } else {
                gens[i].commutator(&gens[j]).max_norm()
            };
            if res > 1e-10 * scale.powi(3) {
                return Err(Error::IntertwinerSolve);
            }
        }
    }
    Ok(gens)
}
