//! Entanglement measures and geometric certificates.
//!
//! For a cut `A|B` with post-measurement family `{v_i}` on the smaller
//! block, the I-concurrence is `C^2 = 4 sum_{i<j} |v_i ∧ v_j|^2`. A cut is
//! separable when the `v_i` are pairwise parallel and maximally entangled
//! when they are pairwise orthogonal with `|v_i|^2 = 1/d` each, i.e. they
//! span a d-cube.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, CMatrix};
use crate::rdm::rdm_overlap;
use crate::state::{enumerate_bipartitions, post_measurement_vectors, Bipartition, PureState, Side};
use crate::tolerance;
use crate::wedge::{wedge2, wedge_sq};

/// Concurrence of one cut by both routes.
#[derive(Debug, Clone, PartialEq)]
pub struct CutConcurrence {
    pub cut: Bipartition,
    pub c_wedge: f64,
    pub c_purity: f64,
    pub residual: f64,
}

impl CutConcurrence {
    pub fn compute(state: &PureState, cut: &Bipartition) -> Result<Self> {
        let c_wedge = concurrence_wedge(state, cut)?;
        let c_purity = concurrence_purity(state, cut)?;
        let residual = (c_wedge - c_purity).abs();
        // Compared on C²: the square root on the purity route turns rounding
        // in 1 - Tr ρ² into ~1e-8 near separable cuts.
        let gap = (c_wedge * c_wedge - c_purity * c_purity).abs();
        if gap > tolerance::CONSISTENCY {
            return Err(Error::Numerical(format!("wedge and purity C² differ by {gap:e} on {cut}")));
        }
        Ok(Self { cut: cut.clone(), c_wedge, c_purity, residual })
    }
}

/// Upper bound `sqrt(2 (1 - 1/d))` of the concurrence across a cut whose
/// smaller block has dimension `d`.
pub fn max_concurrence(d_small: usize) -> f64 {
    (2.0 * (1.0 - 1.0 / d_small as f64)).sqrt()
}

/// `C = sqrt(4 sum_{i<j} |v_i ∧ v_j|^2)` over the smaller block's family.
pub fn concurrence_wedge(state: &PureState, cut: &Bipartition) -> Result<f64> {
    let family = post_measurement_vectors(state, cut, None)?;
    let v = family.vectors();
    let mut sum = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            sum += wedge_sq(&v[i], &v[j]);
        }
    }
    Ok((4.0 * sum).sqrt())
}

/// `C = sqrt(2 (1 - Tr ρ²))` with ρ the overlap reduced density matrix.
pub fn concurrence_purity(state: &PureState, cut: &Bipartition) -> Result<f64> {
    let rho = rdm_overlap(state, cut, cut.smaller_side())?;
    Ok((2.0 * (1.0 - rho.purity())).max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Separable,
    Maximal,
    Neither,
}

/// Residuals of the separability and maximality conditions on one cut.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationResult {
    pub cut: Bipartition,
    /// `max_{i<j} |<v_i, v_j>|`
    pub ortho_residual: f64,
    /// `max_i | |v_i|^2 - 1/d |`
    pub equality_residual: f64,
    /// `max_{i<j} |v_i ∧ v_j|`
    pub separability_residual: f64,
    pub verdict: Verdict,
}

impl CertificationResult {
    pub fn is_maximal(&self) -> bool {
        self.verdict == Verdict::Maximal
    }
}

/// Certifies the cut with the smaller block measured.
pub fn certify(state: &PureState, cut: &Bipartition, tol: f64) -> Result<CertificationResult> {
    let family = post_measurement_vectors(state, cut, None)?;
    let v = family.vectors();
    let target = 1.0 / v.len() as f64;
    let equality_residual = family.norms_sqr().iter().map(|n| (n - target).abs()).fold(0.0, f64::max);
    let mut ortho_residual = 0.0f64;
    let mut separability_residual = 0.0f64;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            ortho_residual = ortho_residual.max(inner(&v[i], &v[j]).norm());
            separability_residual = separability_residual.max(wedge_sq(&v[i], &v[j]).sqrt());
        }
    }
    let verdict = if separability_residual <= tol {
        Verdict::Separable
    } else if ortho_residual <= tol && equality_residual <= tol {
        Verdict::Maximal
    } else {
        Verdict::Neither
    };
    Ok(CertificationResult { cut: cut.clone(), ortho_residual, equality_residual, separability_residual, verdict })
}

/// Outcome of certifying every canonical cut.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsoluteCertificate {
    pub absolutely_maximal: bool,
    pub worst_ortho_residual: f64,
    pub worst_equality_residual: f64,
    pub cuts: Vec<CertificationResult>,
}

/// True when every canonical cut certifies maximal at `tol`.
pub fn certify_absolutely_maximal(state: &PureState, tol: f64) -> Result<AbsoluteCertificate> {
    let cuts =
        enumerate_bipartitions(state.dims())?.iter().map(|cut| certify(state, cut, tol)).collect::<Result<Vec<_>>>()?;
    Ok(AbsoluteCertificate {
        absolutely_maximal: cuts.iter().all(CertificationResult::is_maximal),
        worst_ortho_residual: cuts.iter().map(|c| c.ortho_residual).fold(0.0, f64::max),
        worst_equality_residual: cuts.iter().map(|c| c.equality_residual).fold(0.0, f64::max),
        cuts,
    })
}

/// Per-cut line of an [`EntanglementReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct CutReport {
    pub concurrence: CutConcurrence,
    pub certificate: CertificationResult,
}

/// Every canonical cut's concurrence and certificate, their sum, and the
/// 3-tangle for three qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub cuts: Vec<CutReport>,
    pub global_e: f64,
    pub tangle: Option<f64>,
    pub tol: f64,
}

impl EntanglementReport {
    pub fn build(state: &PureState, tol: f64) -> Result<Self> {
        let cuts = enumerate_bipartitions(state.dims())?;
        let cuts = cuts
            .par_iter()
            .map(|cut| {
                Ok(CutReport {
                    concurrence: CutConcurrence::compute(state, cut)?,
                    certificate: certify(state, cut, tol)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let global_e = cuts.iter().map(|c| c.concurrence.c_wedge).sum();
        let tangle = if is_three_qubits(state) { Some(three_tangle(state)?) } else { None };
        Ok(Self { cuts, global_e, tangle, tol })
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            cuts: self
                .cuts
                .iter()
                .map(|c| CutJson {
                    block_a: c.certificate.cut.block_a().to_vec(),
                    label: c.certificate.cut.to_string(),
                    c: c.concurrence.c_wedge,
                    c_purity: c.concurrence.c_purity,
                    ortho_res: c.certificate.ortho_residual,
                    eq_res: c.certificate.equality_residual,
                    sep_res: c.certificate.separability_residual,
                    verdict: c.certificate.verdict,
                })
                .collect(),
            global_e: self.global_e,
            tangle: self.tangle,
        }
    }
}

/// Serialized form of an [`EntanglementReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub cuts: Vec<CutJson>,
    pub global_e: f64,
    pub tangle: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutJson {
    pub block_a: Vec<usize>,
    pub label: String,
    pub c: f64,
    pub c_purity: f64,
    pub ortho_res: f64,
    pub eq_res: f64,
    pub sep_res: f64,
    pub verdict: Verdict,
}

/// Sum of the wedge concurrences over all `2^(n-1) - 1` canonical cuts,
/// with the full per-cut report at the default certification tolerance.
pub fn global_entanglement(state: &PureState) -> Result<EntanglementReport> {
    EntanglementReport::build(state, tolerance::CERTIFY)
}

fn is_three_qubits(state: &PureState) -> bool {
    state.dims().as_slice() == [2, 2, 2]
}

fn require_three_qubits(state: &PureState) -> Result<()> {
    if !is_three_qubits(state) {
        return Err(Error::WrongShape { expected: "three qubits", found: state.dims().as_slice().to_vec() });
    }
    Ok(())
}

/// Terms of the Coffman-Kundu-Wootters inequality
/// `C²(A|BC) >= C²(A|B) + C²(A|C)` for a three-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CkwRecord {
    /// `4 |<0_A|ψ> ∧ <1_A|ψ>|^2`
    pub c2_a_bc: f64,
    /// Pairwise term for A and B, traced over C.
    pub c2_ab: f64,
    /// Pairwise term for A and C, traced over B.
    pub c2_ac: f64,
    /// `c2_a_bc - c2_ab - c2_ac`, the 3-tangle before clamping.
    pub slack: f64,
}

/// Pairwise term of the 3-tangle for A and `partner`, with `traced` the
/// remaining qubit.
///
/// Projecting `traced` onto basis state `i` leaves a two-qubit vector whose
/// A-family `(a_i, b_i)` lives in the partner's space. The literal sum
/// `sum_i a_i ∧ b_i` depends on which basis of `traced` was used; changing
/// that basis by a unitary `V` turns the diagonal of
/// `T_ij = [a_i ∧ b_j + a_j ∧ b_i]` into the diagonal of `V^T T V`. The
/// smallest achievable `|sum_i a_i ∧ b_i|` is `(s1 - s2)/2` with `s1 >= s2`
/// the singular values of `T`, and `(s1 - s2)^2 = |T|_F^2 - 2 |det T|`.
fn pairwise_term(state: &PureState, partner: usize, traced: usize) -> Result<f64> {
    let amps = state.amplitudes();
    let strides = state.dims().strides();
    // (a_i, b_i): A-family in partner space of the traced-qubit slice i
    let family = |i: usize| -> [Vec<Complex64>; 2] {
        [0, 1].map(|a| (0..2).map(|p| amps[a * strides[0] + p * strides[partner] + i * strides[traced]]).collect())
    };
    let slices = [family(0), family(1)];
    let mut t = CMatrix::zeros(2);
    for i in 0..2 {
        for j in i..2 {
            let cross =
                wedge2(&slices[i][0], &slices[j][1])?.get(0, 1) + wedge2(&slices[j][0], &slices[i][1])?.get(0, 1);
            t[(i, j)] = cross;
            t[(j, i)] = cross;
        }
    }
    Ok((t.frobenius_sq() - 2.0 * t.determinant().norm()).max(0.0))
}

/// CKW terms in wedge form.
pub fn ckw_check(state: &PureState) -> Result<CkwRecord> {
    require_three_qubits(state)?;
    let cut = Bipartition::new(state.dims(), &[0])?;
    let family = post_measurement_vectors(state, &cut, Some(Side::A))?;
    let v = family.vectors();
    let c2_a_bc = 4.0 * wedge_sq(&v[0], &v[1]);
    let c2_ab = pairwise_term(state, 1, 2)?;
    let c2_ac = pairwise_term(state, 2, 1)?;
    Ok(CkwRecord { c2_a_bc, c2_ab, c2_ac, slack: c2_a_bc - c2_ab - c2_ac })
}

/// Residual three-way entanglement `τ = C²(A|BC) - C²(A|B) - C²(A|C)`.
///
/// Values below `-tolerance::TANGLE` or above `1 + tolerance::TANGLE` are
/// reported as numerical errors; smaller excursions are clamped.
pub fn three_tangle(state: &PureState) -> Result<f64> {
    let tau = ckw_check(state)?.slack;
    if !(-tolerance::TANGLE..=1.0 + tolerance::TANGLE).contains(&tau) {
        return Err(Error::Numerical(format!("3-tangle {tau:e} outside [0, 1]")));
    }
    Ok(tau.clamp(0.0, 1.0))
}
