//! Classical matrix Lie algebras in a split realization with diagonal
//! Cartan, and per-root sl2 triples `(e_alpha, f_alpha, h_alpha)` scaled so
//! `[e_alpha, f_alpha] = alpha^vee`.
//!
//! so and sp use the antidiagonal bilinear/symplectic form; the Cartan of
//! every construction acts diagonally on the defining basis, so weights can
//! be read off matrix diagonals throughout the crate.

use super::root_system::{build_unchecked, RootSystem, Series};
use crate::error::{Error, Result};
use crate::linalg::{rat, rint, QMat, Rat};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algebra {
    /// gl(m): sl(m) plus the identity; enters through its vector
    /// representation where the pairwise coupling operator is the plain
    /// transposition.
    Gl(usize),
    /// sl(m), root system A_{m-1}.
    Sl(usize),
    /// so(n) with the antidiagonal symmetric form; B_r for n = 2r+1 and
    /// D_r for n = 2r. so(3) is admitted as the rank-1 degenerate member.
    So(usize),
    /// sp(n), n even; C_{n/2}. sp(2) is admitted (it is sl(2)).
    Sp(usize),
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Gl(m) => write!(f, "gl{m}"),
            Algebra::Sl(m) => write!(f, "sl{m}"),
            Algebra::So(n) => write!(f, "so{n}"),
            Algebra::Sp(n) => write!(f, "sp{n}"),
        }
    }
}

impl Algebra {
    /// Parses `gl2`, `sl3`, `so5`, `sp4` or series/rank names `A2`, `B2`,
    /// `C3`, `D4`.
    pub fn parse(s: &str) -> Result<Algebra> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("unknown algebra: {s}"));
        if let Some(rest) = s.strip_prefix("gl") {
            return rest.parse().map(Algebra::Gl).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("sl") {
            return rest.parse().map(Algebra::Sl).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("so") {
            return rest.parse().map(Algebra::So).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("sp") {
            return rest.parse().map(Algebra::Sp).map_err(|_| bad());
        }
        let (series, rank) = s.split_at(1);
        let rank: usize = rank.parse().map_err(|_| bad())?;
        match series {
            "A" | "a" => Ok(Algebra::Sl(rank + 1)),
            "B" | "b" => Ok(Algebra::So(2 * rank + 1)),
            "C" | "c" => Ok(Algebra::Sp(2 * rank)),
            "D" | "d" => Ok(Algebra::So(2 * rank)),
            _ => Err(bad()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Algebra::Gl(m) | Algebra::Sl(m) if m >= 2 => Ok(()),
            Algebra::So(n) if n >= 3 && n != 4 => Ok(()),
            Algebra::Sp(n) if n >= 2 && n % 2 == 0 => Ok(()),
            _ => Err(Error::UnsupportedRootSystem(self.to_string())),
        }
    }

    pub fn series_rank(&self) -> (Series, usize) {
        match *self {
            Algebra::Gl(m) | Algebra::Sl(m) => (Series::A, m - 1),
            Algebra::So(n) if n % 2 == 1 => (Series::B, n / 2),
            Algebra::So(n) => (Series::D, n / 2),
            Algebra::Sp(n) => (Series::C, n / 2),
        }
    }

    pub fn root_system(&self) -> Result<RootSystem> {
        self.validate()?;
        let (series, rank) = self.series_rank();
        Ok(build_unchecked(series, rank))
    }

    /// Dimension of the defining representation.
    pub fn defining_dim(&self) -> usize {
        match *self {
            Algebra::Gl(m) | Algebra::Sl(m) => m,
            Algebra::So(n) | Algebra::Sp(n) => n,
        }
    }

    /// Trace-form constant: the dual bases behind the pairwise coupling
    /// operators are taken with respect to `c * tr_V(XY)` on the defining
    /// representation, with `c = 1` for gl/sl and `c = 1/2` for so/sp.
    pub fn trace_constant(&self) -> Rat {
        match self {
            Algebra::Gl(_) | Algebra::Sl(_) => Rat::one(),
            Algebra::So(_) | Algebra::Sp(_) => rat(1, 2),
        }
    }

    /// Root vectors of the defining representation, ordered like
    /// `rs.positive_roots`, plus the simple Cartan elements `h_i` and the
    /// central element for gl.
    pub fn defining_data(&self, rs: &RootSystem) -> DefiningData {
        let n = self.defining_dim();
        let raw = self.epsilon_root_vectors();
        let simple_eps = self.simple_roots_epsilon();
        let amb = simple_eps[0].len();

        // Conversion matrix: columns are simple roots in epsilon coordinates.
        let conv = QMat::from_fn(amb, rs.rank, |r, c| rint(simple_eps[c][r]));

        let mut pairs: Vec<Option<(QMat, QMat)>> = vec![None; rs.positive_roots.len()];
        for (eps, e, f) in raw {
            let target: Vec<Rat> = eps.iter().map(|&x| rint(x)).collect();
            let coords = conv.solve(&target).expect("root lies in the simple-root lattice");
            let coords: Vec<i64> = coords
                .iter()
                .map(|x| {
                    assert!(x.is_integer());
                    i64::try_from(x.to_integer()).unwrap()
                })
                .collect();
            let idx = rs
                .positive_roots
                .iter()
                .position(|p| *p == coords)
                .expect("epsilon root matches an enumerated positive root");
            pairs[idx] = Some((e, f));
        }
        let root_vectors: Vec<(QMat, QMat)> =
            pairs.into_iter().map(|p| p.expect("all positive roots realized")).collect();

        let simple_h: Vec<QMat> = (0..rs.rank)
            .map(|i| {
                let (e, f) = &root_vectors[i];
                e.commutator(f)
            })
            .collect();

        let central = match self {
            Algebra::Gl(_) => Some(QMat::identity(n)),
            _ => None,
        };

        DefiningData { root_vectors, simple_h, central, dim: n }
    }

    /// Simple roots in epsilon coordinates (0-based).
    fn simple_roots_epsilon(&self) -> Vec<Vec<i64>> {
        let (series, r) = self.series_rank();
        let amb = if series == Series::A { r + 1 } else { r };
        let mut out = Vec::with_capacity(r);
        for k in 0..r {
            let mut v = vec![0i64; amb];
            match series {
                Series::A => {
                    v[k] = 1;
                    v[k + 1] = -1;
                }
                Series::B => {
                    if k + 1 < r {
                        v[k] = 1;
                        v[k + 1] = -1;
                    } else {
                        v[k] = 1;
                    }
                }
                Series::C => {
                    if k + 1 < r {
                        v[k] = 1;
                        v[k + 1] = -1;
                    } else {
                        v[k] = 2;
                    }
                }
                Series::D => {
                    if k + 1 < r {
                        v[k] = 1;
                        v[k + 1] = -1;
                    } else {
                        v[r - 2] = 1;
                        v[r - 1] = 1;
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// All positive roots in epsilon coordinates with their `(e, f)`
    /// matrices in the defining representation.
    fn epsilon_root_vectors(&self) -> Vec<(Vec<i64>, QMat, QMat)> {
        let (series, r) = self.series_rank();
        let n = self.defining_dim();
        let em = |i: usize, j: usize| {
            let mut m = QMat::zeros(n, n);
            m[(i, j)] = Rat::one();
            m
        };
        let mut out = Vec::new();
        let eps = |entries: &[(usize, i64)]| {
            let amb = if series == Series::A { r + 1 } else { r };
            let mut v = vec![0i64; amb];
            for &(i, c) in entries {
                v[i] = c;
            }
            v
        };
        match series {
            Series::A => {
                for i in 0..n {
                    for j in (i + 1)..n {
                        out.push((eps(&[(i, 1), (j, -1)]), em(i, j), em(j, i)));
                    }
                }
            }
            Series::B => {
                let pr = |i: usize| n - 1 - i;
                let c = r;
                for i in 0..r {
                    for j in (i + 1)..r {
                        out.push((
                            eps(&[(i, 1), (j, -1)]),
                            &em(i, j) - &em(pr(j), pr(i)),
                            &em(j, i) - &em(pr(i), pr(j)),
                        ));
                        out.push((
                            eps(&[(i, 1), (j, 1)]),
                            &em(i, pr(j)) - &em(j, pr(i)),
                            &em(pr(j), i) - &em(pr(i), j),
                        ));
                    }
                    out.push((
                        eps(&[(i, 1)]),
                        &em(i, c) - &em(c, pr(i)),
                        (&em(c, i) - &em(pr(i), c)).scale(&rint(2)),
                    ));
                }
            }
            Series::C => {
                let pr = |i: usize| n - 1 - i;
                for i in 0..r {
                    for j in (i + 1)..r {
                        out.push((
                            eps(&[(i, 1), (j, -1)]),
                            &em(i, j) - &em(pr(j), pr(i)),
                            &em(j, i) - &em(pr(i), pr(j)),
                        ));
                        out.push((
                            eps(&[(i, 1), (j, 1)]),
                            &em(i, pr(j)) + &em(j, pr(i)),
                            &em(pr(j), i) + &em(pr(i), j),
                        ));
                    }
                    out.push((eps(&[(i, 2)]), em(i, pr(i)), em(pr(i), i)));
                }
            }
            Series::D => {
                let pr = |i: usize| n - 1 - i;
                for i in 0..r {
                    for j in (i + 1)..r {
                        out.push((
                            eps(&[(i, 1), (j, -1)]),
                            &em(i, j) - &em(pr(j), pr(i)),
                            &em(j, i) - &em(pr(i), pr(j)),
                        ));
                        out.push((
                            eps(&[(i, 1), (j, 1)]),
                            &em(i, pr(j)) - &em(j, pr(i)),
                            &em(pr(j), i) - &em(pr(i), j),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Invariant bilinear form of the defining representation: `None` for
    /// gl/sl, antidiagonal symmetric for so, antidiagonal alternating
    /// for sp. `X^T J + J X = 0` for every algebra element.
    pub fn invariant_form(&self) -> Option<QMat> {
        let n = self.defining_dim();
        match self {
            Algebra::Gl(_) | Algebra::Sl(_) => None,
            Algebra::So(_) => {
                let mut j = QMat::zeros(n, n);
                for i in 0..n {
                    j[(i, n - 1 - i)] = Rat::one();
                }
                Some(j)
            }
            Algebra::Sp(_) => {
                let mut j = QMat::zeros(n, n);
                for i in 0..n {
                    j[(i, n - 1 - i)] = if i < n / 2 { Rat::one() } else { -Rat::one() };
                }
                Some(j)
            }
        }
    }
}

/// Raw defining-representation data, aligned with a `RootSystem`.
pub struct DefiningData {
    pub root_vectors: Vec<(QMat, QMat)>,
    pub simple_h: Vec<QMat>,
    pub central: Option<QMat>,
    pub dim: usize,
}

impl DefiningData {
    /// Canonical flat basis order: all `e_alpha`, then all `f_alpha`, then
    /// the simple `h_i`, then the central element when present.
    pub fn flat_basis(&self) -> Vec<QMat> {
        let mut v: Vec<QMat> = self.root_vectors.iter().map(|(e, _)| e.clone()).collect();
        v.extend(self.root_vectors.iter().map(|(_, f)| f.clone()));
        v.extend(self.simple_h.iter().cloned());
        if let Some(z) = &self.central {
            v.push(z.clone());
        }
        v
    }
}

/// Gram matrix of a basis under `c * tr(X Y)` on the defining representation.
pub fn trace_gram(basis: &[QMat], c: &Rat) -> QMat {
    let n = basis.len();
    QMat::from_fn(n, n, |a, b| (&basis[a] * &basis[b]).trace() * c.clone())
}

/// Checks `X^T J + J X = 0` for all basis elements (form invariance).
pub fn check_form_invariance(alg: &Algebra, basis: &[QMat]) -> bool {
    match alg.invariant_form() {
        None => true,
        Some(j) => basis
            .iter()
            .all(|x| (&x.transpose() * &j + &j * x).is_zero()),
    }
}
