//! Exterior-algebra kernel: bivectors of complex vectors and wedge
//! magnitudes.
//!
//! Two routes compute the same squared magnitude. [`wedge2`] enumerates the
//! coefficients `a_i b_j - a_j b_i` explicitly, which is needed whenever
//! bivectors are summed before taking a modulus. [`wedge_magnitude_sq`] uses
//! the Lagrange identity `|a∧b|^2 = |a|^2 |b|^2 - |<a,b>|^2` and costs O(n)
//! instead of O(n^2). Higher grades only need magnitudes, which are Gram
//! determinants.

use std::ops::{Add, Neg};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{inner, norm_sqr, CMatrix};
use crate::tolerance;

/// Antisymmetric rank-2 tensor over an `n`-dimensional space, stored as the
/// coefficients of `e_i ∧ e_j` for `i < j` in lexicographic pair order.
#[derive(Debug, Clone, PartialEq)]
pub struct Bivector {
    dim: usize,
    coeffs: Vec<Complex64>,
}

impl Bivector {
    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: vec![Complex64::new(0.0, 0.0); dim * dim.saturating_sub(1) / 2] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        // pairs (0,1)..(0,n-1), (1,2).. precede row i
        i * (2 * self.dim - i - 1) / 2 + (j - i - 1)
    }

    /// Coefficient of `e_i ∧ e_j`; antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.coeffs[self.slot(i, j)],
            Greater => -self.coeffs[self.slot(j, i)],
            Equal => Complex64::new(0.0, 0.0),
        }
    }

    /// `sum_{i<j} |c_ij|^2`.
    pub fn magnitude_sq(&self) -> f64 {
        norm_sqr(&self.coeffs)
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude_sq().sqrt()
    }

    pub fn scale(&self, alpha: Complex64) -> Bivector {
        Bivector { dim: self.dim, coeffs: self.coeffs.iter().map(|c| c * alpha).collect() }
    }

    pub fn checked_add(&self, other: &Bivector) -> Result<Bivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("bivectors over {} and {} dims", self.dim, other.dim)));
        }
        Ok(Bivector { dim: self.dim, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }
}

impl Add for &Bivector {
    type Output = Bivector;
    fn add(self, rhs: &Bivector) -> Bivector {
        self.checked_add(rhs).expect("bivector dimension mismatch")
    }
}

impl Neg for &Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

fn same_len(a: &[Complex64], b: &[Complex64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!("vectors of length {} and {}", a.len(), b.len())));
    }
    Ok(())
}

/// `a ∧ b = sum_{i<j} (a_i b_j - a_j b_i) e_i ∧ e_j`.
pub fn wedge2(a: &[Complex64], b: &[Complex64]) -> Result<Bivector> {
    same_len(a, b)?;
    let n = a.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty vectors".into()));
    }
    let mut coeffs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            coeffs.push(a[i] * b[j] - a[j] * b[i]);
        }
    }
    Ok(Bivector { dim: n, coeffs })
}

/// Coefficient-wise sum; an empty input gives the zero bivector over `dim`.
pub fn bivector_sum<'a>(dim: usize, terms: impl IntoIterator<Item = &'a Bivector>) -> Result<Bivector> {
    terms.into_iter().try_fold(Bivector::zero(dim), |acc, b| acc.checked_add(b))
}

/// `|a∧b|^2`, computed through the projection form of the Lagrange identity.
pub fn wedge_magnitude_sq(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    same_len(a, b)?;
    Ok(wedge_sq(a, b))
}

/// `|a ∧ b|² = ‖a‖² ‖b - P_a b‖²`, equal to the Lagrange form
/// `‖a‖²‖b‖² - |<a,b>|²` but without its cancellation for near-parallel pairs.
pub(crate) fn wedge_sq(a: &[Complex64], b: &[Complex64]) -> f64 {
    let na = norm_sqr(a);
    if na == 0.0 {
        return 0.0;
    }
    let z = inner(a, b) / na;
    na * a.iter().zip(b).map(|(x, y)| (y - z * x).norm_sqr()).sum::<f64>()
}

/// Gram matrix `G_pq = <v_p, v_q>`.
pub fn gram_matrix(vectors: &[Vec<Complex64>]) -> Result<CMatrix> {
    if let Some(first) = vectors.first() {
        for v in vectors {
            same_len(first, v)?;
        }
    }
    let k = vectors.len();
    let mut g = CMatrix::zeros(k);
    for p in 0..k {
        for q in p..k {
            let z = inner(&vectors[p], &vectors[q]);
            g[(p, q)] = z;
            g[(q, p)] = z.conj();
        }
    }
    Ok(g)
}

/// Squared k-volume `|v_1 ∧ ... ∧ v_k|^2 = det G`.
///
/// Round-off below zero is clamped; anything more negative than
/// `tolerance::PSD` is logged since the Gram matrix should be PSD.
pub fn kvector_magnitude_sq(vectors: &[Vec<Complex64>]) -> Result<f64> {
    let g = gram_matrix(vectors)?;
    let n = vectors.first().map_or(0, |v| v.len());
    if vectors.len() > n {
        return Err(Error::DimensionMismatch(format!("{} vectors in {n} dimensions", vectors.len())));
    }
    let det = g.determinant().re;
    if det < -tolerance::PSD {
        log::warn!("Gram determinant {det:e} below zero; clamped");
    }
    Ok(det.max(0.0))
}

/// Rank of the family, from pivoted elimination on its Gram matrix with
/// relative cutoff 1e-10.
pub fn family_rank(vectors: &[Vec<Complex64>]) -> Result<usize> {
    Ok(gram_matrix(vectors)?.rank(1e-10))
}
