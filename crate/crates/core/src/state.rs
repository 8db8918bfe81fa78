//! Pure states on a register of qudits, bipartitions of the register and
//! post-measurement vectors.
//!
//! Amplitudes are stored row-major with site 0 the most significant digit,
//! so for three qubits index `4*i + 2*j + k` holds the amplitude of
//! `|i j k>`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{is_finite, Pair};
use crate::error::{Error, Result};
use crate::linalg::{norm_sqr, CMatrix};
use crate::tolerance;

/// Local dimensions of the sites of a register.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SiteDims(Vec<usize>);

impl SiteDims {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(Error::InvalidDims("register has no sites".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!("site dimension {d} is below 2")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidDims("total dimension overflows".into()))?;
        Ok(Self(dims))
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn num_sites(&self) -> usize {
        self.0.len()
    }

    /// Total Hilbert space dimension.
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Dimension of the space spanned by `sites`.
    pub fn block_dim(&self, sites: &[usize]) -> usize {
        sites.iter().map(|&s| self.0[s]).product()
    }

    /// Row-major strides; site 0 has the largest.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for k in (0..self.0.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1];
        }
        strides
    }
}

impl<'de> Deserialize<'de> for SiteDims {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(d)?;
        SiteDims::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SiteDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: SiteDims,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Validates `amps` without touching them; the norm must already be one
    /// within [`tolerance::NORM`].
    pub fn new(dims: SiteDims, amps: Vec<Complex64>) -> Result<Self> {
        let norm = Self::checked_norm(&dims, &amps)?;
        if (norm - 1.0).abs() > tolerance::NORM {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { dims, amps })
    }

    /// Like [`PureState::new`] but rescales the amplitudes to unit norm.
    pub fn normalized(dims: SiteDims, mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = Self::checked_norm(&dims, &amps)?;
        for a in &mut amps {
            *a /= norm;
        }
        Ok(Self { dims, amps })
    }

    fn checked_norm(dims: &SiteDims, amps: &[Complex64]) -> Result<f64> {
        if amps.len() != dims.total() {
            return Err(Error::LengthMismatch { expected: dims.total(), found: amps.len() });
        }
        if let Some(i) = amps.iter().position(|&z| !is_finite(z)) {
            return Err(Error::NonFinite(i));
        }
        let norm = norm_sqr(amps).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        if !norm.is_finite() {
            return Err(Error::NonFinite(0));
        }
        Ok(norm)
    }

    /// Computational basis state `|digits>`.
    pub fn basis(dims: SiteDims, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.num_sites() {
            return Err(Error::LengthMismatch { expected: dims.num_sites(), found: digits.len() });
        }
        if let Some(k) = digits.iter().zip(dims.as_slice()).position(|(&i, &d)| i >= d) {
            return Err(Error::InvalidParameter(format!("digit out of range on site {k}")));
        }
        let index: usize = digits.iter().zip(dims.strides()).map(|(i, s)| i * s).sum();
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.0.clone();
        dims.extend_from_slice(&other.dims.0);
        let amps = self.amps.iter().flat_map(|&a| other.amps.iter().map(move |&b| a * b)).collect();
        PureState { dims: SiteDims(dims), amps }
    }

    pub fn dims(&self) -> &SiteDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_sites(&self) -> usize {
        self.dims.num_sites()
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amps).sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dims, other.dims)));
        }
        Ok(crate::linalg::inner(&self.amps, &other.amps))
    }

    /// `|<self|other>|`, which ignores global phase.
    pub fn fidelity_amplitude(&self, other: &PureState) -> Result<f64> {
        self.inner(other).map(|z| z.norm())
    }

    /// Copy with the global phase chosen so that the first nonzero
    /// amplitude is real and positive.
    pub fn with_canonical_phase(&self) -> PureState {
        let mut out = self.clone();
        if let Some(first) = self.amps.iter().find(|z| z.norm() > 0.0) {
            let phase = first.conj() / first.norm();
            for a in &mut out.amps {
                *a *= phase;
            }
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("state file: {e}")))?;
        file.into_state()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateFile::from(self)).expect("state file serializes")
    }
}

/// On-disk state: `{"dims":[2,2],"amplitudes":[[re,im],...]}`.
///
/// Unknown keys are ignored so that report envelopes can carry a state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<Pair>,
}

impl StateFile {
    pub fn into_state(self) -> Result<PureState> {
        let dims = SiteDims::new(self.dims)?;
        PureState::new(dims, self.amplitudes.into_iter().map(Complex64::from).collect())
    }
}

impl From<&PureState> for StateFile {
    fn from(s: &PureState) -> Self {
        StateFile { dims: s.dims.0.clone(), amplitudes: s.amps.iter().map(|&z| Pair::from(z)).collect() }
    }
}

/// One side of a bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A split of the register into two complementary nonempty blocks.
///
/// Both blocks are kept sorted. The canonical representative of a cut has
/// site 0 in `block_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    block_a: Vec<usize>,
    block_b: Vec<usize>,
    dim_a: usize,
    dim_b: usize,
}

impl Bipartition {
    pub fn new(dims: &SiteDims, block_a: &[usize]) -> Result<Self> {
        let n = dims.num_sites();
        if n < 2 {
            return Err(Error::InvalidCut("a bipartition needs at least two sites".into()));
        }
        let mut a = block_a.to_vec();
        a.sort_unstable();
        let len = a.len();
        a.dedup();
        if a.len() != len {
            return Err(Error::InvalidCut(format!("duplicate site in {block_a:?}")));
        }
        if let Some(&s) = a.iter().find(|&&s| s >= n) {
            return Err(Error::InvalidCut(format!("site {s} out of range for {n} sites")));
        }
        if a.is_empty() || a.len() == n {
            return Err(Error::InvalidCut(format!("{block_a:?} is not a proper nonempty subset")));
        }
        let b: Vec<usize> = (0..n).filter(|s| !a.contains(s)).collect();
        Ok(Self { dim_a: dims.block_dim(&a), dim_b: dims.block_dim(&b), block_a: a, block_b: b })
    }

    pub fn block_a(&self) -> &[usize] {
        &self.block_a
    }

    pub fn block_b(&self) -> &[usize] {
        &self.block_b
    }

    pub fn block(&self, side: Side) -> &[usize] {
        match side {
            Side::A => &self.block_a,
            Side::B => &self.block_b,
        }
    }

    pub fn dim(&self, side: Side) -> usize {
        match side {
            Side::A => self.dim_a,
            Side::B => self.dim_b,
        }
    }

    pub fn num_sites(&self) -> usize {
        self.block_a.len() + self.block_b.len()
    }

    /// Dimension of the smaller block.
    pub fn d_small(&self) -> usize {
        self.dim_a.min(self.dim_b)
    }

    /// The smaller-dimension block; `A` on ties.
    pub fn smaller_side(&self) -> Side {
        if self.dim_a <= self.dim_b {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.block_a.first() == Some(&0)
    }

    pub fn canonical(&self) -> Bipartition {
        if self.is_canonical() {
            self.clone()
        } else {
            Bipartition {
                block_a: self.block_b.clone(),
                block_b: self.block_a.clone(),
                dim_a: self.dim_b,
                dim_b: self.dim_a,
            }
        }
    }

    /// Checks that this cut was built for `dims`.
    pub fn validate_for(&self, dims: &SiteDims) -> Result<()> {
        if self.num_sites() != dims.num_sites()
            || dims.block_dim(&self.block_a) != self.dim_a
            || dims.block_dim(&self.block_b) != self.dim_b
        {
            return Err(Error::InvalidCut(format!("cut {self} does not fit dims {dims}")));
        }
        Ok(())
    }

    /// For every basis index of the full register, the pair
    /// (index within `measured` block, index within its complement).
    pub(crate) fn index_split(&self, dims: &SiteDims, measured: Side) -> Vec<(usize, usize)> {
        let meas = self.block(measured);
        let rest = self.block(measured.other());
        let d = dims.as_slice();
        let strides = dims.strides();
        let local =
            |sites: &[usize], x: usize| sites.iter().fold(0usize, |acc, &s| acc * d[s] + (x / strides[s]) % d[s]);
        (0..dims.total()).map(|x| (local(meas, x), local(rest, x))).collect()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |b: &[usize]| b.iter().map(|s| site_label(*s)).collect::<String>();
        write!(f, "{}|{}", label(&self.block_a), label(&self.block_b))
    }
}

fn site_label(s: usize) -> String {
    if s < 26 {
        ((b'A' + s as u8) as char).to_string()
    } else {
        format!("[{s}]")
    }
}

/// All `2^(n-1) - 1` canonical bipartitions, ordered by block size then
/// lexicographically by `block_a`.
pub fn enumerate_bipartitions(dims: &SiteDims) -> Result<Vec<Bipartition>> {
    let n = dims.num_sites();
    if n < 2 {
        return Err(Error::InvalidCut("a bipartition needs at least two sites".into()));
    }
    if n > 30 {
        return Err(Error::InvalidDims(format!("{n} sites is too many to enumerate cuts")));
    }
    let rest = n - 1;
    let mut cuts = Vec::with_capacity((1usize << rest) - 1);
    for mask in 0..(1usize << rest) - 1 {
        let mut a = vec![0];
        a.extend((0..rest).filter(|k| mask >> k & 1 == 1).map(|k| k + 1));
        cuts.push(Bipartition::new(dims, &a)?);
    }
    cuts.sort_by(|x, y| x.block_a.len().cmp(&y.block_a.len()).then_with(|| x.block_a.cmp(&y.block_a)));
    Ok(cuts)
}

/// The vectors `<phi_i|Psi>` obtained by projecting one block onto each of
/// its computational basis states. Each vector lives in the complementary
/// block's space.
#[derive(Debug, Clone, PartialEq)]
pub struct PostMeasurementFamily {
    cut: Bipartition,
    measured: Side,
    vectors: Vec<Vec<Complex64>>,
}

impl PostMeasurementFamily {
    pub fn cut(&self) -> &Bipartition {
        &self.cut
    }

    pub fn measured(&self) -> Side {
        self.measured
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Rebuilds `sum_i |phi_i> ⊗ v_i` in register order.
    pub fn reassemble(&self, dims: &SiteDims) -> Vec<Complex64> {
        self.cut.index_split(dims, self.measured).into_iter().map(|(i, m)| self.vectors[i][m]).collect()
    }

    /// Squared lengths of the vectors.
    pub fn norms_sqr(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| norm_sqr(v)).collect()
    }
}

/// Projects `measured` (or the smaller block when `None`) onto its
/// computational basis.
pub fn post_measurement_vectors(
    state: &PureState,
    cut: &Bipartition,
    measured: Option<Side>,
) -> Result<PostMeasurementFamily> {
    cut.validate_for(&state.dims)?;
    let measured = measured.unwrap_or_else(|| cut.smaller_side());
    let mut vectors = vec![vec![Complex64::new(0.0, 0.0); cut.dim(measured.other())]; cut.dim(measured)];
    for ((i, m), &amp) in cut.index_split(&state.dims, measured).into_iter().zip(&state.amps) {
        vectors[i][m] = amp;
    }
    Ok(PostMeasurementFamily { cut: cut.clone(), measured, vectors })
}

/// Tensor product of single-site unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    factors: Vec<CMatrix>,
}

impl LocalUnitary {
    /// Each factor must satisfy `max |U^dag U - I| <= tolerance::UNITARY`.
    pub fn new(factors: Vec<CMatrix>) -> Result<Self> {
        for (site, u) in factors.iter().enumerate() {
            let deviation = u.unitarity_deviation();
            if deviation.is_nan() || deviation > tolerance::UNITARY {
                return Err(Error::NotUnitary { site, deviation });
            }
        }
        Ok(Self { factors })
    }

    pub fn identity(dims: &SiteDims) -> Self {
        Self { factors: dims.as_slice().iter().map(|&d| CMatrix::identity(d)).collect() }
    }

    /// `u` on `site`, identity elsewhere.
    pub fn on_site(dims: &SiteDims, site: usize, u: CMatrix) -> Result<Self> {
        if site >= dims.num_sites() {
            return Err(Error::DimensionMismatch(format!("site {site} out of range")));
        }
        let mut lu = Self::identity(dims);
        lu.factors[site] = u;
        Self::new(lu.factors)
    }

    pub fn factors(&self) -> &[CMatrix] {
        &self.factors
    }
}

/// Applies `⊗_k U_k` to the state.
pub fn apply_local_unitary(state: &PureState, lu: &LocalUnitary) -> Result<PureState> {
    let dims = state.dims.as_slice();
    if lu.factors.len() != dims.len() {
        return Err(Error::DimensionMismatch(format!("{} factors for {} sites", lu.factors.len(), dims.len())));
    }
    if let Some(site) = lu.factors.iter().zip(dims).position(|(u, &d)| u.dim() != d) {
        return Err(Error::DimensionMismatch(format!("factor on site {site} has wrong size")));
    }
    let strides = state.dims.strides();
    let mut amps = state.amps.clone();
    let mut scratch = Vec::new();
    for (site, u) in lu.factors.iter().enumerate() {
        let (d, stride) = (dims[site], strides[site]);
        let block = d * stride;
        for base in (0..amps.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                scratch.clear();
                scratch.extend((0..d).map(|j| amps[start + j * stride]));
                for i in 0..d {
                    amps[start + i * stride] = (0..d).map(|j| u[(i, j)] * scratch[j]).sum();
                }
            }
        }
    }
    Ok(PureState { dims: state.dims.clone(), amps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{c, real};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn dims(d: &[usize]) -> SiteDims {
        SiteDims::new(d.to_vec()).unwrap()
    }

    #[test]
    fn make_state_accepts_basis_state() {
        let s = PureState::new(dims(&[2, 2]), vec![real(1.0), real(0.0), real(0.0), real(0.0)]).unwrap();
        assert_eq!(s.amplitudes()[0], real(1.0));
    }

    #[test]
    fn make_state_rescales_on_request() {
        let s = PureState::normalized(dims(&[2, 2]), vec![real(1.0), real(0.0), real(0.0), real(1.0)]).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitudes()[3].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn make_state_rejects_unnormalized() {
        let err = PureState::new(dims(&[2, 2]), vec![real(1.0), real(0.0), real(0.0), real(1.0)]).unwrap_err();
        match err {
            Error::NotNormalized(n) => assert!((n - 2f64.sqrt()).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn make_state_error_paths() {
        assert!(matches!(
            PureState::new(dims(&[2, 2]), vec![real(1.0); 3]),
            Err(Error::LengthMismatch { expected: 4, found: 3 })
        ));
        assert!(matches!(PureState::normalized(dims(&[2]), vec![real(0.0); 2]), Err(Error::ZeroVector)));
        assert!(matches!(
            PureState::normalized(dims(&[2]), vec![real(1.0), c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(1))
        ));
        assert!(SiteDims::new(vec![2, 1]).is_err());
        assert!(SiteDims::new(Vec::<usize>::new()).is_err());
        assert!(SiteDims::new(vec![usize::MAX, 2]).is_err());
    }

    #[test]
    fn bell_post_measurement_vectors() {
        let s = PureState::normalized(dims(&[2, 2]), vec![real(1.0), real(0.0), real(0.0), real(1.0)]).unwrap();
        let cut = Bipartition::new(s.dims(), &[0]).unwrap();
        let fam = post_measurement_vectors(&s, &cut, Some(Side::A)).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_eq!(fam.vectors().len(), 2);
        assert!((fam.vectors()[0][0].re - h).abs() < 1e-15 && fam.vectors()[0][1] == real(0.0));
        assert!(fam.vectors()[1][0] == real(0.0) && (fam.vectors()[1][1].re - h).abs() < 1e-15);
    }

    #[test]
    fn product_state_post_measurement_vectors() {
        let s = PureState::basis(dims(&[2, 2]), &[0, 0]).unwrap();
        let cut = Bipartition::new(s.dims(), &[0]).unwrap();
        let fam = post_measurement_vectors(&s, &cut, None).unwrap();
        assert_eq!(fam.vectors(), &[vec![real(1.0), real(0.0)], vec![real(0.0), real(0.0)]]);
    }

    #[test]
    fn ghz_a_cut_vectors() {
        let mut amps = vec![real(0.0); 8];
        amps[0] = real(FRAC_1_SQRT_2);
        amps[7] = real(FRAC_1_SQRT_2);
        let s = PureState::new(dims(&[2, 2, 2]), amps).unwrap();
        let cut = Bipartition::new(s.dims(), &[0]).unwrap();
        let fam = post_measurement_vectors(&s, &cut, None).unwrap();
        assert_eq!(fam.measured(), Side::A);
        let h = real(FRAC_1_SQRT_2);
        let z = real(0.0);
        assert_eq!(fam.vectors(), &[vec![h, z, z, z], vec![z, z, z, h]]);
    }

    #[test]
    fn measured_block_defaults_to_smaller() {
        let d = dims(&[3, 2, 2]);
        let cut = Bipartition::new(&d, &[0]).unwrap();
        assert_eq!(cut.smaller_side(), Side::A);
        let cut = Bipartition::new(&d, &[1, 2]).unwrap();
        assert_eq!(cut.smaller_side(), Side::B);
        assert_eq!(cut.d_small(), 3);
    }

    #[test]
    fn non_contiguous_block_indexing() {
        // |i j k> with amplitude index 4i+2j+k; measure sites {0,2}.
        let amps: Vec<Complex64> = (0..8).map(|x| real(x as f64)).collect();
        let s = PureState::normalized(dims(&[2, 2, 2]), amps).unwrap();
        let cut = Bipartition::new(s.dims(), &[0, 2]).unwrap();
        let fam = post_measurement_vectors(&s, &cut, Some(Side::A)).unwrap();
        let scale = s.amplitudes()[1].re;
        // measured index = 2i + k, complement index = j
        let raw: Vec<Vec<f64>> =
            fam.vectors().iter().map(|v| v.iter().map(|z| (z.re / scale).round()).collect()).collect();
        assert_eq!(raw, vec![vec![0.0, 2.0], vec![1.0, 3.0], vec![4.0, 6.0], vec![5.0, 7.0]]);
    }

    #[test]
    fn cut_validation() {
        let d = dims(&[2, 2, 2]);
        assert!(Bipartition::new(&d, &[]).is_err());
        assert!(Bipartition::new(&d, &[0, 1, 2]).is_err());
        assert!(Bipartition::new(&d, &[3]).is_err());
        assert!(Bipartition::new(&d, &[1, 1]).is_err());
        let cut = Bipartition::new(&d, &[1, 2]).unwrap();
        assert!(!cut.is_canonical());
        assert_eq!(cut.canonical().block_a(), &[0]);
        let other = dims(&[2, 3, 2]);
        assert!(cut.validate_for(&other).is_err());
        assert!(Bipartition::new(&dims(&[2]), &[0]).is_err());
    }

    #[test]
    fn bipartition_counts() {
        assert_eq!(enumerate_bipartitions(&dims(&[2, 2])).unwrap().len(), 1);
        let three = enumerate_bipartitions(&dims(&[2, 2, 2])).unwrap();
        let blocks: Vec<&[usize]> = three.iter().map(|c| c.block_a()).collect();
        assert_eq!(blocks, vec![&[0][..], &[0, 1][..], &[0, 2][..]]);
        assert_eq!(three.iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["A|BC", "AB|C", "AC|B"]);
        assert_eq!(enumerate_bipartitions(&dims(&[2, 2, 2, 2])).unwrap().len(), 7);
        assert!(enumerate_bipartitions(&dims(&[2])).is_err());
    }

    #[test]
    fn local_unitary_rejects_bad_input() {
        let d = dims(&[2, 2]);
        let not_unitary = CMatrix::from_row_major(vec![real(1.0), real(1.0), real(0.0), real(1.0)]).unwrap();
        assert!(matches!(LocalUnitary::on_site(&d, 0, not_unitary), Err(Error::NotUnitary { site: 0, .. })));
        let s = PureState::basis(d.clone(), &[0, 1]).unwrap();
        let wrong = LocalUnitary::identity(&dims(&[2, 2, 2]));
        assert!(apply_local_unitary(&s, &wrong).is_err());
        let wrong_size = LocalUnitary::new(vec![CMatrix::identity(3), CMatrix::identity(2)]).unwrap();
        assert!(apply_local_unitary(&s, &wrong_size).is_err());
    }

    #[test]
    fn identity_unitary_is_noop() {
        let s = PureState::normalized(dims(&[2, 3]), (0..6).map(|x| c(x as f64, 1.0)).collect()).unwrap();
        let out = apply_local_unitary(&s, &LocalUnitary::identity(s.dims())).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn pauli_x_on_middle_site() {
        let d = dims(&[2, 2, 2]);
        let s = PureState::basis(d.clone(), &[1, 0, 1]).unwrap();
        let x = CMatrix::from_row_major(vec![real(0.0), real(1.0), real(1.0), real(0.0)]).unwrap();
        let out = apply_local_unitary(&s, &LocalUnitary::on_site(&d, 1, x).unwrap()).unwrap();
        assert_eq!(out, PureState::basis(d, &[1, 1, 1]).unwrap());
    }

    #[test]
    fn state_file_round_trip_and_validation() {
        let s = PureState::normalized(dims(&[2, 2]), vec![real(1.0), c(0.0, 1.0), real(0.0), real(0.0)]).unwrap();
        let back = PureState::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(PureState::from_json(r#"{"dims":[2,2],"amplitudes":[[1,0],[1,0],[0,0],[0,0]]}"#).is_err());
        assert!(PureState::from_json(r#"{"dims":[2,1],"amplitudes":[[1,0],[0,0]]}"#).is_err());
        assert!(PureState::from_json("not json").is_err());
        let extra = r#"{"schema_version":1,"dims":[2],"amplitudes":[[0,0],[1,0]]}"#;
        assert!(PureState::from_json(extra).is_ok());
    }

    #[test]
    fn canonical_phase() {
        let s = PureState::new(dims(&[2]), vec![real(0.0), c(0.0, -1.0)]).unwrap();
        assert_eq!(s.with_canonical_phase().amplitudes()[1], real(1.0));
    }
}
