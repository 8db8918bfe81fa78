//! Reduced density matrices built from overlaps of post-measurement
//! vectors, a brute-force partial trace used as an oracle, and the
//! intrinsic degree of coherence.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, CMatrix};
use crate::state::{post_measurement_vectors, Bipartition, PureState, Side};
use crate::tolerance;

/// Above this dimension PSD checks always run a full eigensolve.
const GERSHGORIN_MAX_DIM: usize = 8;

/// Density matrix of a subsystem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    dim: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    /// Wraps `entries` after checking hermiticity, unit trace and positivity.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let rho = Self { dim: entries.dim(), entries };
        rho.check_invariants()?;
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    /// `Tr ρ²`; for Hermitian ρ this is `sum |ρ_ij|^2`.
    pub fn purity(&self) -> f64 {
        self.entries.frobenius_sq()
    }

    /// Largest entry modulus of `ρ - I/d`.
    pub fn distance_from_maximally_mixed(&self) -> f64 {
        let mut target = CMatrix::identity(self.dim);
        for i in 0..self.dim {
            target[(i, i)] /= self.dim as f64;
        }
        self.entries.max_abs_diff(&target)
    }

    pub fn check_invariants(&self) -> Result<()> {
        let herm = self.entries.hermitian_deviation();
        if herm > tolerance::HERMITIAN {
            return Err(Error::Numerical(format!("density matrix not Hermitian ({herm:e})")));
        }
        let tr = self.entries.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tolerance::HERMITIAN {
            return Err(Error::Numerical(format!("density matrix trace {tr}")));
        }
        let min_eig = self.min_eigenvalue_bound();
        if min_eig < -tolerance::PSD {
            return Err(Error::Numerical(format!("density matrix has eigenvalue {min_eig:e}")));
        }
        Ok(())
    }

    /// Gershgorin bound when it already certifies positivity on a small
    /// matrix, otherwise the smallest eigenvalue.
    fn min_eigenvalue_bound(&self) -> f64 {
        if self.dim <= GERSHGORIN_MAX_DIM {
            let lower = self.entries.gershgorin_lower_bound();
            if lower >= -tolerance::PSD {
                return lower;
            }
        }
        self.entries.hermitian_eigenvalues().first().copied().unwrap_or(0.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("density matrix serializes")
    }
}

/// `ρ_ij = <v_j | v_i>` over the post-measurement family of the kept block.
pub fn rdm_overlap(state: &PureState, cut: &Bipartition, keep: Side) -> Result<DensityMatrix> {
    let family = post_measurement_vectors(state, cut, Some(keep))?;
    DensityMatrix::new(overlap_matrix(family.vectors()))
}

pub(crate) fn overlap_matrix(vectors: &[Vec<Complex64>]) -> CMatrix {
    let d = vectors.len();
    let mut rho = CMatrix::zeros(d);
    for i in 0..d {
        for j in i..d {
            let z = inner(&vectors[j], &vectors[i]);
            rho[(i, j)] = z;
            rho[(j, i)] = z.conj();
        }
    }
    rho
}

/// Partial trace by direct summation over pairs of register indices that
/// agree on the traced-out sites. O(D^2); meant for cross-checking.
pub fn rdm_trace_oracle(state: &PureState, cut: &Bipartition, keep: Side) -> Result<DensityMatrix> {
    cut.validate_for(state.dims())?;
    let dims = state.dims().as_slice();
    let kept = cut.block(keep);
    let traced = cut.block(keep.other());
    let digits = |mut x: usize| {
        let mut out = vec![0; dims.len()];
        for (k, &d) in dims.iter().enumerate().rev() {
            out[k] = x % d;
            x /= d;
        }
        out
    };
    let local = |dig: &[usize], sites: &[usize]| sites.iter().fold(0, |acc, &s| acc * dims[s] + dig[s]);
    let amps = state.amplitudes();
    let all: Vec<Vec<usize>> = (0..amps.len()).map(digits).collect();
    let mut rho = CMatrix::zeros(cut.dim(keep));
    for (x, dx) in all.iter().enumerate() {
        for (y, dy) in all.iter().enumerate() {
            if traced.iter().all(|&s| dx[s] == dy[s]) {
                rho[(local(dx, kept), local(dy, kept))] += amps[x] * amps[y].conj();
            }
        }
    }
    DensityMatrix::new(rho)
}

/// Intrinsic degree of coherence of the kept block,
/// `P = sqrt((d sum_ij |<v_j|v_i>|^2 - 1) / (d - 1))` with `d` the kept
/// block's dimension. Equals 1 for product states and 0 when the reduced
/// state is maximally mixed.
pub fn intrinsic_coherence(state: &PureState, cut: &Bipartition, keep: Side) -> Result<f64> {
    let d = cut.dim(keep);
    if d < 2 {
        return Err(Error::InvalidCut(format!("kept block has dimension {d}")));
    }
    let rho = rdm_overlap(state, cut, keep)?;
    let d = d as f64;
    let p_sq = (d * rho.purity() - 1.0) / (d - 1.0);
    if !(-tolerance::PSD..=1.0 + tolerance::PSD).contains(&p_sq) {
        return Err(Error::Numerical(format!("coherence squared {p_sq} outside [0, 1]")));
    }
    Ok(p_sq.clamp(0.0, 1.0).sqrt())
}
