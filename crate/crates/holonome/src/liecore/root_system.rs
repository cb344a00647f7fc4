//! Cartan/Coxeter data for the classical series, normalized so the highest
//! root has squared length 2.

use crate::error::{Error, Result};
use crate::linalg::{rat, rint, QMat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::A => write!(f, "A"),
            Series::B => write!(f, "B"),
            Series::C => write!(f, "C"),
            Series::D => write!(f, "D"),
        }
    }
}

/// Root system of one classical series. Roots and coroots are stored as
/// integer coordinate vectors in the simple-root (resp. simple-coroot)
/// basis; `gram` is the inner product matrix of the simple roots under the
/// normalization `<theta, theta> = 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    /// Positive roots, simple-root coordinates; the first `rank` entries are
    /// the simple roots in order.
    pub positive_roots: Vec<Vec<i64>>,
    /// Coroot of each positive root in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Gram matrix `<alpha_i, alpha_j>` of the simple roots.
    pub gram: QMat,
    /// Coxeter orders `m_ij` of `s_i s_j`.
    pub coxeter_orders: Vec<Vec<usize>>,
    /// Weyl-orbit class of each positive root (0 = orbit of the first root).
    pub orbit_classes: Vec<usize>,
}

/// Builds the root system for one of the classical series.
///
/// Rank bounds: A needs rank >= 1, B and C rank >= 2, D rank >= 3. The
/// low-rank degenerate members (B1, C1) exist only through the matrix
/// algebras that need them; see `Algebra`.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    let min = match series {
        Series::A => 1,
        Series::B | Series::C => 2,
        Series::D => 3,
    };
    if rank < min {
        return Err(Error::UnsupportedRootSystem(format!("{series}{rank}")));
    }
    Ok(build_unchecked(series, rank))
}

/// Same construction without the public rank bounds; used for so(3) = B1
/// and sp(2) = C1.
pub(crate) fn build_unchecked(series: Series, rank: usize) -> RootSystem {
    assert!(rank >= 1);
    let gram = gram_matrix(series, rank);
    let cartan = cartan_from_gram(&gram, rank);

    let positive_roots = enumerate_positive_roots(&cartan, rank);
    let norm2 = |c: &[i64]| -> Rat {
        let mut s = Rat::zero();
        for (i, &ci) in c.iter().enumerate() {
            for (j, &cj) in c.iter().enumerate() {
                s += gram[(i, j)].clone() * rint(ci) * rint(cj);
            }
        }
        s
    };

    // Coroot coordinates: beta^vee = sum_i c_i <alpha_i,alpha_i>/<beta,beta> alpha_i^vee.
    let coroots: Vec<Vec<i64>> = positive_roots
        .iter()
        .map(|c| {
            let nb = norm2(c);
            c.iter()
                .enumerate()
                .map(|(i, &ci)| {
                    let x = rint(ci) * gram[(i, i)].clone() / nb.clone();
                    assert!(x.is_integer(), "coroot coordinates must be integers");
                    let (lo, hi) = (i64::MIN, i64::MAX);
                    let v = x.to_integer();
                    assert!(v >= lo.into() && v <= hi.into());
                    i64::try_from(v).unwrap()
                })
                .collect()
        })
        .collect();

    let coxeter_orders = coxeter_from_cartan(&cartan, rank);
    let orbit_classes = orbit_classes(&cartan, &positive_roots);

    let rs = RootSystem {
        series,
        rank,
        positive_roots,
        coroots,
        cartan,
        gram,
        coxeter_orders,
        orbit_classes,
    };
    debug_assert_eq!(rs.root_norm2(rs.highest_root_index()), rint(2));
    rs
}

fn gram_matrix(series: Series, r: usize) -> QMat {
    let mut g = QMat::zeros(r, r);
    match series {
        // All simple roots long: tridiagonal (2, -1).
        Series::A => {
            for i in 0..r {
                g[(i, i)] = rint(2);
                if i + 1 < r {
                    g[(i, i + 1)] = rint(-1);
                    g[(i + 1, i)] = rint(-1);
                }
            }
        }
        // Last simple root short of length^2 1.
        Series::B => {
            for i in 0..r {
                g[(i, i)] = if i + 1 == r { rint(1) } else { rint(2) };
                if i + 1 < r {
                    g[(i, i + 1)] = rint(-1);
                    g[(i + 1, i)] = rint(-1);
                }
            }
            if r == 1 {
                // so(3): single root, normalized long.
                g[(0, 0)] = rint(2);
            }
        }
        // Last simple root long, the others of length^2 1.
        Series::C => {
            for i in 0..r {
                g[(i, i)] = if i + 1 == r { rint(2) } else { rint(1) };
                if i + 1 < r {
                    let off = if i + 2 == r { rint(-1) } else { rat(-1, 2) };
                    g[(i, i + 1)] = off.clone();
                    g[(i + 1, i)] = off;
                }
            }
        }
        // Fork at the end: alpha_r attaches to alpha_{r-2}.
        Series::D => {
            for i in 0..r {
                g[(i, i)] = rint(2);
            }
            for i in 0..r.saturating_sub(2) {
                g[(i, i + 1)] = rint(-1);
                g[(i + 1, i)] = rint(-1);
            }
            if r >= 3 {
                g[(r - 3, r - 1)] = rint(-1);
                g[(r - 1, r - 3)] = rint(-1);
            }
        }
    }
    g
}

fn cartan_from_gram(g: &QMat, r: usize) -> Vec<Vec<i64>> {
    // cartan[i][j] = 2 <alpha_j, alpha_i> / <alpha_i, alpha_i>
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let x = rint(2) * g[(i, j)].clone() / g[(i, i)].clone();
                    assert!(x.is_integer());
                    i64::try_from(x.to_integer()).unwrap()
                })
                .collect()
        })
        .collect()
}

fn coxeter_from_cartan(cartan: &[Vec<i64>], r: usize) -> Vec<Vec<usize>> {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i == j {
                        1
                    } else {
                        match cartan[i][j] * cartan[j][i] {
                            0 => 2,
                            1 => 3,
                            2 => 4,
                            3 => 6,
                            n => panic!("unexpected cartan product {n}"),
                        }
                    }
                })
                .collect()
        })
        .collect()
}

/// All roots are Weyl images of simple roots; breadth-first closure under
/// the simple reflections, then keep the positive ones.
fn enumerate_positive_roots(cartan: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut v = vec![0i64; r];
        v[i] = 1;
        seen.insert(v.clone());
        queue.push(v);
    }
    while let Some(root) = queue.pop() {
        for i in 0..r {
            let refl = reflect_root(cartan, &root, i);
            if seen.insert(refl.clone()) {
                queue.push(refl);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> =
        seen.into_iter().filter(|v| v.iter().all(|&c| c >= 0)).collect();
    pos.sort_by(|a, b| {
        let (ha, hb) = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    pos
}

/// `s_i(beta) = beta - <beta, alpha_i^vee> alpha_i` in simple-root coordinates.
pub fn reflect_root(cartan: &[Vec<i64>], root: &[i64], i: usize) -> Vec<i64> {
    let pairing: i64 = root.iter().enumerate().map(|(j, &c)| c * cartan[i][j]).sum();
    let mut out = root.to_vec();
    out[i] -= pairing;
    out
}

fn orbit_classes(cartan: &[Vec<i64>], positive: &[Vec<i64>]) -> Vec<usize> {
    let r = cartan.len();
    let mut class = vec![usize::MAX; positive.len()];
    let index_of = |v: &[i64]| -> Option<usize> {
        positive.iter().position(|p| p == v)
    };
    let mut next = 0;
    for start in 0..positive.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![positive[start].clone()];
        class[start] = next;
        while let Some(root) = stack.pop() {
            for i in 0..r {
                let mut refl = reflect_root(cartan, &root, i);
                if refl.iter().all(|&c| c <= 0) {
                    for c in &mut refl {
                        *c = -*c;
                    }
                }
                if let Some(k) = index_of(&refl) {
                    if class[k] == usize::MAX {
                        class[k] = next;
                        stack.push(refl);
                    }
                }
            }
        }
        next += 1;
    }
    class
}

impl RootSystem {
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `<beta, beta>` for the positive root with the given index.
    pub fn root_norm2(&self, idx: usize) -> Rat {
        let c = &self.positive_roots[idx];
        let mut s = Rat::zero();
        for (i, &ci) in c.iter().enumerate() {
            for (j, &cj) in c.iter().enumerate() {
                s += self.gram[(i, j)].clone() * rint(ci) * rint(cj);
            }
        }
        s
    }

    pub fn highest_root_index(&self) -> usize {
        (0..self.positive_roots.len())
            .max_by_key(|&i| self.positive_roots[i].iter().sum::<i64>())
            .expect("nonempty root system")
    }

    /// `<beta, alpha_i^vee>` for `beta` in simple-root coordinates.
    pub fn pair_with_simple_coroot(&self, root: &[i64], i: usize) -> i64 {
        root.iter().enumerate().map(|(j, &c)| c * self.cartan[i][j]).sum()
    }

    /// `<alpha_j, beta^vee>` for the positive root of index `idx`.
    pub fn pair_simple_with_coroot(&self, j: usize, idx: usize) -> i64 {
        self.coroots[idx]
            .iter()
            .enumerate()
            .map(|(k, &cv)| cv * self.cartan[k][j])
            .sum()
    }

    /// Reflection `s_i` on a weight in fundamental-weight coordinates:
    /// `(s_i mu)_j = mu_j - mu_i * cartan[j][i]`.
    pub fn reflect_weight(&self, mu: &[i64], i: usize) -> Vec<i64> {
        (0..self.rank).map(|j| mu[j] - mu[i] * self.cartan[j][i]).collect()
    }

    /// Reflection by the positive root `idx` on a weight in
    /// fundamental-weight coordinates: `s_beta(mu) = mu - mu(h_beta) beta`.
    pub fn reflect_weight_by_root(&self, mu: &[i64], idx: usize) -> Vec<i64> {
        let mu_h: i64 = self.coroots[idx]
            .iter()
            .enumerate()
            .map(|(k, &cv)| cv * mu[k])
            .sum();
        let beta = &self.positive_roots[idx];
        (0..self.rank)
            .map(|j| {
                let beta_fw: i64 = (0..self.rank).map(|i| beta[i] * self.cartan[j][i]).sum();
                mu[j] - mu_h * beta_fw
            })
            .collect()
    }

    /// Matrix of `s_i` on Cartan-space coordinates `u_j = alpha_j(x)`:
    /// `u_j -> u_j - cartan[i][j] u_i`.
    pub fn simple_reflection_on_coords(&self, i: usize) -> QMat {
        let r = self.rank;
        let mut m = QMat::identity(r);
        for j in 0..r {
            m[(j, i)] = &m[(j, i)] - &rint(self.cartan[i][j]);
        }
        m
    }

    /// Matrix of `s_beta` (positive root `idx`) on the reflection
    /// representation in simple-root coordinates:
    /// `v_i -> v_i - c_i <alpha_j, beta^vee> v_j`-summed.
    pub fn reflection_rep_matrix(&self, idx: usize) -> QMat {
        let r = self.rank;
        let c = &self.positive_roots[idx];
        let mut m = QMat::identity(r);
        for i in 0..r {
            for j in 0..r {
                let p = self.pair_simple_with_coroot(j, idx);
                m[(i, j)] = &m[(i, j)] - &(rint(c[i]) * rint(p));
            }
        }
        m
    }

    /// Reflection representation matrices for all positive roots.
    pub fn reflection_rep(&self) -> Vec<QMat> {
        (0..self.num_positive_roots()).map(|i| self.reflection_rep_matrix(i)).collect()
    }

    /// Writes `s_beta` as a word `s_i1 ... s_il` in simple reflections,
    /// using `s_beta = s_i s_{s_i beta} s_i` on a height-reducing `i`.
    pub fn reflection_word(&self, idx: usize) -> Vec<usize> {
        let root = self.positive_roots[idx].clone();
        self.reflection_word_for(&root)
    }

    fn reflection_word_for(&self, root: &[i64]) -> Vec<usize> {
        if let Some(i) = (0..self.rank).position(|i| {
            let mut e = vec![0i64; self.rank];
            e[i] = 1;
            e == root
        }) {
            return vec![i];
        }
        let i = (0..self.rank)
            .find(|&i| self.pair_with_simple_coroot(root, i) > 0)
            .expect("positive root pairs positively with some simple coroot");
        let inner = reflect_root(&self.cartan, root, i);
        let mut word = vec![i];
        word.extend(self.reflection_word_for(&inner));
        word.push(i);
        word
    }
}
