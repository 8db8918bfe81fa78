//! Small dense complex matrices.
//!
//! The matrices handled here are tiny (reduced density matrices, Gram
//! matrices of a handful of vectors, single-site unitaries), so a flat
//! row-major `Vec` is all that is needed. Hermitian eigenvalues go through
//! `nalgebra`.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::Pair;

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries. Returns `None` when the length
    /// is not a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Option<Self> {
        let n = (data.len() as f64).sqrt().round() as usize;
        (n * n == data.len()).then_some(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self { n, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Sum of squared moduli of all entries.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest `|M_ij - conj(M_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `max |M^dag M - I|`, the unitarity defect.
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.n))
    }

    /// Lower bound on the smallest eigenvalue of a Hermitian matrix from
    /// Gershgorin discs.
    pub fn gershgorin_lower_bound(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                let radius: f64 = (0..self.n).filter(|&j| j != i).map(|j| self[(i, j)].norm()).sum();
                self[(i, i)].re - radius
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        let m = DMatrix::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        eig
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n).max_by(|&r, &s| a[r * n + col].norm().total_cmp(&a[s * n + col].norm())).unwrap();
            let p = a[pivot * n + col];
            if p.norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }

    /// Numerical rank by elimination with full pivoting; pivots at or below
    /// `rel_tol * max|M|` count as zero.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let n = self.n;
        let cutoff = rel_tol * self.max_abs();
        let mut a = self.data.clone();
        let mut rank = 0;
        let mut rows: Vec<usize> = (0..n).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        for step in 0..n {
            let mut best = (step, step, 0.0f64);
            for (ri, &r) in rows.iter().enumerate().skip(step) {
                for (ci, &c) in cols.iter().enumerate().skip(step) {
                    let v = a[r * n + c].norm();
                    if v > best.2 {
                        best = (ri, ci, v);
                    }
                }
            }
            if best.2 <= cutoff {
                break;
            }
            rows.swap(step, best.0);
            cols.swap(step, best.1);
            let (pr, pc) = (rows[step], cols[step]);
            let p = a[pr * n + pc];
            for &r in &rows[step + 1..] {
                let f = a[r * n + pc] / p;
                for &c in &cols[step..] {
                    let v = a[pr * n + c];
                    a[r * n + c] -= f * v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub(crate) fn to_pairs(&self) -> Vec<Vec<Pair>> {
        self.rows().map(|r| r.iter().map(|&z| Pair::from(z)).collect()).collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Serialized as nested rows of `[re, im]` pairs.
impl Serialize for CMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Pair>> = Vec::deserialize(d)?;
        let rows: Vec<Vec<Complex64>> =
            rows.into_iter().map(|r| r.into_iter().map(Complex64::from).collect()).collect();
        CMatrix::from_rows(&rows).ok_or_else(|| serde::de::Error::custom("matrix is not square"))
    }
}

/// `<a, b> = sum conj(a_i) b_i`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn determinant_matches_closed_form_2x2() {
        let m = CMatrix::from_row_major(vec![c(1.0, 2.0), c(0.5, -1.0), c(-3.0, 0.0), c(2.0, 1.0)]).unwrap();
        let expected = c(1.0, 2.0) * c(2.0, 1.0) - c(0.5, -1.0) * c(-3.0, 0.0);
        assert!((m.determinant() - expected).norm() < 1e-14);
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        let v = [c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)];
        let mut m = CMatrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        assert_eq!(m.rank(1e-10), 1);
        assert_eq!(CMatrix::identity(3).rank(1e-10), 3);
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_y() {
        let y = CMatrix::from_row_major(vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let eig = y.hermitian_eigenvalues();
        assert!((eig[0] + 1.0).abs() < 1e-14 && (eig[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gershgorin_bound_is_below_spectrum() {
        let m = CMatrix::from_row_major(vec![c(2.0, 0.0), c(0.5, 0.5), c(0.5, -0.5), c(1.0, 0.0)]).unwrap();
        let lo = m.gershgorin_lower_bound();
        assert!(lo <= m.hermitian_eigenvalues()[0] + 1e-14);
    }
}
