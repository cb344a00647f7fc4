//! Dense matrices over exact big-integer rationals, with the row-reduction
//! routines (rank, nullspace, solve) the exact checks are built on.

use super::rat::{rat_from_str, rat_to_f64, rat_to_string, Rat};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cmat::CMat;

#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        QMat {
            rows,
            cols,
            data: entries.iter().map(|&x| super::rat::rint(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = &*x * s;
        }
        out
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Matrix commutator `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &QMat) -> QMat {
        assert_square_pair(self, other);
        self * other - other * self
    }

    pub fn kron(&self, other: &QMat) -> QMat {
        let mut out = QMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies column vectors: `self * v`.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Row echelon reduction in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].recip();
            for c in col..self.cols {
                let v = &self[(row, c)] * &inv;
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for c in col..self.cols {
                        let v = &self[(r, c)] - &(&factor * &self[(row, c)]);
                        self[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace, as columns of the returned matrix.
    pub fn nullspace(&self) -> QMat {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = QMat::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis[(fc, k)] = Rat::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                basis[(pc, k)] = -m[(prow, fc)].clone();
            }
        }
        basis
    }

    /// Solves `self * x = b` exactly; `Err(Singular)` when inconsistent,
    /// returns the particular solution with free variables set to zero.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::Singular);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(prow, self.cols)].clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<QMat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = QMat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rat::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::Singular);
        }
        Ok(QMat::from_fn(n, n, |r, c| aug[(r, n + c)].clone()))
    }

    /// Horizontal concatenation of column blocks.
    pub fn hstack(blocks: &[&QMat]) -> QMat {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMat::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for r in 0..rows {
                for c in 0..b.cols {
                    out[(r, off + c)] = b[(r, c)].clone();
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation of row blocks.
    pub fn vstack(blocks: &[&QMat]) -> QMat {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = QMat::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..cols {
                    out[(off + r, c)] = b[(r, c)].clone();
                }
            }
            off += b.rows;
        }
        out
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMat {
        QMat::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Nilpotency degree `d` with `self^d = 0`, or `None` if not nilpotent.
    pub fn nilpotency_degree(&self) -> Option<usize> {
        assert!(self.is_square());
        if self.is_zero() {
            return Some(1);
        }
        let mut p = self.clone();
        for d in 2..=self.rows + 1 {
            p = &p * self;
            if p.is_zero() {
                return Some(d);
            }
        }
        None
    }

    /// Exact exponential of a nilpotent matrix (finite series).
    pub fn exp_nilpotent(&self) -> Result<QMat> {
        let deg = self.nilpotency_degree().ok_or(Error::NotNilpotent)?;
        let mut sum = QMat::identity(self.rows);
        let mut term = QMat::identity(self.rows);
        let mut fact = Rat::one();
        for k in 1..deg {
            term = &term * self;
            fact *= super::rat::rint(k as i64);
            sum = sum + term.scale(&fact.recip());
        }
        Ok(sum)
    }

    pub fn to_cmat(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |r, c| {
            num_complex::Complex64::new(rat_to_f64(&self[(r, c)]), 0.0)
        })
    }
}

fn assert_square_pair(a: &QMat, b: &QMat) {
    assert!(a.is_square() && b.is_square() && a.rows == b.rows, "commutator: shape mismatch");
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for QMat {
    type Output = QMat;
    fn add(self, rhs: QMat) -> QMat {
        &self + &rhs
    }
}

impl Add for &QMat {
    type Output = QMat;
    fn add(self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for QMat {
    type Output = QMat;
    fn sub(self, rhs: QMat) -> QMat {
        &self - &rhs
    }
}

impl Sub for &QMat {
    type Output = QMat;
    fn sub(self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for QMat {
    type Output = QMat;
    fn neg(mut self) -> QMat {
        for x in &mut self.data {
            *x = -x.clone();
        }
        self
    }
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.rows, "matmul: inner dimensions differ");
        let mut out = QMat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for QMat {
    type Output = QMat;
    fn mul(self, rhs: QMat) -> QMat {
        &self * &rhs
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| rat_to_string(&self[(r, c)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for QMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Row-major nested arrays of "p/q" strings.
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| rat_to_string(&self[(r, c)])).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(de::Error::custom("ragged matrix"));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            for s in row {
                data.push(rat_from_str(s).ok_or_else(|| de::Error::custom("bad rational"))?);
            }
        }
        Ok(QMat { rows: r, cols: c, data })
    }
}
