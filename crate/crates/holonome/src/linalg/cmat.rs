//! Dense complex matrices for the numerical side: transport, spectra,
//! quantum operators. Eigenvalues go through nalgebra's complex Schur form.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMat { rows, cols, data }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = entries[i];
        }
        m
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

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x *= s;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Max-entry norm; the residual norm used throughout the reports.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn commutator(&self, other: &CMat) -> CMat {
        self * other - other * self
    }

    pub fn kron(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum())
            .collect()
    }

    /// Gaussian elimination with partial pivoting.
    pub fn inverse(&self) -> Result<CMat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        for col in 0..n {
            let (p, mag) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if mag < 1e-300 {
                return Err(Error::Singular);
            }
            a.swap_rows(col, p);
            inv.swap_rows(col, p);
            let piv = a[(col, col)];
            for c in 0..n {
                a[(col, c)] /= piv;
                inv[(col, c)] /= piv;
            }
            for r in 0..n {
                if r != col {
                    let f = a[(r, col)];
                    if f.norm_sqr() != 0.0 {
                        for c in 0..n {
                            let ac = a[(col, c)];
                            let ic = inv[(col, c)];
                            a[(r, c)] -= f * ac;
                            inv[(r, c)] -= f * ic;
                        }
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Eigenvalues with multiplicity, sorted lexicographically by (re, im).
    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        assert!(self.is_square());
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let m = DMatrix::<C64>::from_fn(self.rows, self.cols, |r, c| self[(r, c)]);
        let schur = m
            .try_schur(1e-14, 100_000)
            .ok_or_else(|| Error::InvalidInput("schur iteration failed".into()))?;
        let t = schur.unpack().1;
        let mut eig: Vec<C64> = (0..self.rows).map(|i| t[(i, i)]).collect();
        sort_complex(&mut eig);
        Ok(eig)
    }

    /// Matrix exponential (scaling and squaring on top of nalgebra).
    pub fn exp(&self) -> CMat {
        assert!(self.is_square());
        let m = DMatrix::<C64>::from_fn(self.rows, self.cols, |r, c| self[(r, c)]);
        let e = m.exp();
        CMat::from_fn(self.rows, self.cols, |r, c| e[(r, c)])
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let m = DMatrix::<C64>::from_fn(self.rows, self.cols, |r, c| self[(r, c)]);
        let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Permutation operator on an n-fold tensor power of a d-dimensional
    /// space swapping adjacent factors `i` and `i+1` (zero-based `i`).
    pub fn adjacent_swap(dim: usize, n: usize, i: usize) -> CMat {
        assert!(i + 1 < n);
        let total = dim.pow(n as u32);
        let mut m = CMat::zeros(total, total);
        for idx in 0..total {
            let mut digits = to_digits(idx, dim, n);
            digits.swap(i, i + 1);
            m[(from_digits(&digits, dim), idx)] = C64::new(1.0, 0.0);
        }
        m
    }
}

pub fn to_digits(mut idx: usize, dim: usize, n: usize) -> Vec<usize> {
    // Big-endian: first tensor factor is the most significant digit.
    let mut d = vec![0; n];
    for k in (0..n).rev() {
        d[k] = idx % dim;
        idx /= dim;
    }
    d
}

pub fn from_digits(digits: &[usize], dim: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * dim + d)
}

/// Lexicographic (re, im) sort used for spectrum comparison.
pub fn sort_complex(v: &mut [C64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for CMat {
    type Output = CMat;
    fn add(self, rhs: CMat) -> CMat {
        &self + &rhs
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for CMat {
    type Output = CMat;
    fn sub(self, rhs: CMat) -> CMat {
        &self - &rhs
    }
}

impl Neg for CMat {
    type Output = CMat;
    fn neg(mut self) -> CMat {
        for x in &mut self.data {
            *x = -*x;
        }
        self
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "matmul: inner dimensions differ");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs[(k, c)];
                    if b.norm_sqr() != 0.0 {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for CMat {
    type Output = CMat;
    fn mul(self, rhs: CMat) -> CMat {
        &self * &rhs
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| format!("{:+.4}{:+.4}i", self[(r, c)].re, self[(r, c)].im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for CMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Row-major nested arrays of [re, im] pairs.
        let rows: Vec<Vec<[f64; 2]>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| [self[(r, c)].re, self[(r, c)].im]).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(de::Error::custom("ragged matrix"));
        }
        let data = rows.into_iter().flatten().map(|[re, im]| C64::new(re, im)).collect();
        Ok(CMat { rows: r, cols: c, data })
    }
}
