//! Named states: Bell, GHZ, GHZ-like, W, generalized Bell, the symmetric
//! three-qubit canonical form and the table of maximally entangled states
//! per class of local base product states.
//!
//! States are returned exactly as conventionally written, signs included;
//! use [`PureState::with_canonical_phase`] to fix the global phase.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{c, real};
use crate::error::{Error, Result};
use crate::state::{PureState, SiteDims};
use crate::tolerance;

/// Sparse description `[(coefficient, "bitstring")]`, normalized on build.
fn from_terms(n: usize, terms: &[(f64, &str)]) -> Result<PureState> {
    let dims = SiteDims::qubits(n)?;
    let scale = (1.0 / terms.iter().map(|(c, _)| c * c).sum::<f64>()).sqrt();
    let mut amps = vec![real(0.0); dims.total()];
    for &(coef, bits) in terms {
        let index = usize::from_str_radix(bits, 2).expect("valid bitstring");
        amps[index] += real(coef * scale);
    }
    PureState::new(dims, amps)
}

/// Bell states: 0 → (|00⟩+|11⟩)/√2, 1 → (|00⟩−|11⟩)/√2,
/// 2 → (|01⟩+|10⟩)/√2, 3 → (|01⟩−|10⟩)/√2.
pub fn bell(index: usize) -> Result<PureState> {
    let (pair, sign) = match index {
        0 => (("00", "11"), 1.0),
        1 => (("00", "11"), -1.0),
        2 => (("01", "10"), 1.0),
        3 => (("01", "10"), -1.0),
        _ => return Err(Error::InvalidParameter(format!("Bell index {index} not in 0..4"))),
    };
    from_terms(2, &[(1.0, pair.0), (sign, pair.1)])
}

/// General maximally entangled two-qubit state
/// `a|00⟩ + b|01⟩ − b̄ e^{−iθ}|10⟩ + ā e^{−iθ}|11⟩`, which requires
/// `|a|² + |b|² = 1/2`.
pub fn max_two_qubit(a: Complex64, b: Complex64, theta: f64) -> Result<PureState> {
    let weight = a.norm_sqr() + b.norm_sqr();
    if !weight.is_finite() || (weight - 0.5).abs() > tolerance::NORM || !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("|a|^2 + |b|^2 = {weight}, expected 1/2")));
    }
    let phase = Complex64::from_polar(1.0, -theta);
    PureState::new(SiteDims::qubits(2)?, vec![a, b, -b.conj() * phase, a.conj() * phase])
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("GHZ needs at least 2 qubits, got {n}")));
    }
    let zeros = "0".repeat(n);
    let ones = "1".repeat(n);
    from_terms(n, &[(1.0, &zeros), (1.0, &ones)])
}

/// The four GHZ-like states ξ₁..ξ₄, mutually orthogonal and related by
/// the diagonal local unitaries `−σ_z` on single qubits.
pub fn ghz_like(variant: usize) -> Result<PureState> {
    let signs = match variant {
        1 => [1.0, 1.0, 1.0],
        2 => [-1.0, -1.0, 1.0],
        3 => [1.0, -1.0, -1.0],
        4 => [-1.0, 1.0, -1.0],
        _ => return Err(Error::InvalidParameter(format!("GHZ-like variant {variant} not in 1..=4"))),
    };
    from_terms(3, &[(signs[0], "001"), (signs[1], "010"), (signs[2], "100"), (1.0, "111")])
}

/// `(|100⟩ + |010⟩ + |001⟩)/√3`.
pub fn w_state() -> PureState {
    from_terms(3, &[(1.0, "100"), (1.0, "010"), (1.0, "001")]).expect("W state")
}

/// `(1/√d) Σ_i |ii⟩` on two qudits.
pub fn generalized_bell(d: usize) -> Result<PureState> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("local dimension {d} below 2")));
    }
    let dims = SiteDims::new(vec![d, d])?;
    let amp = (1.0 / d as f64).sqrt();
    let mut amps = vec![real(0.0); d * d];
    for i in 0..d {
        amps[i * d + i] = real(amp);
    }
    PureState::new(dims, amps)
}

/// Symmetric canonical form
/// `k₀e^{iθ}|000⟩ + k₁|001⟩ + k₂|010⟩ + k₃|100⟩ + k₄|111⟩`
/// with `k_i ≥ 0`, `Σk_i² = 1` and `0 ≤ θ ≤ π`.
pub fn acin_canonical(k: [f64; 5], theta: f64) -> Result<PureState> {
    if k.iter().any(|&x| !x.is_finite() || x < 0.0) {
        return Err(Error::InvalidParameter(format!("amplitudes {k:?} must be finite and non-negative")));
    }
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidParameter(format!("phase {theta} outside [0, π]")));
    }
    let dims = SiteDims::qubits(3)?;
    let mut amps = vec![real(0.0); 8];
    amps[0b000] = c(k[0] * theta.cos(), k[0] * theta.sin());
    amps[0b001] = real(k[1]);
    amps[0b010] = real(k[2]);
    amps[0b100] = real(k[3]);
    amps[0b111] = real(k[4]);
    PureState::new(dims, amps)
}

type TableRow = &'static [(f64, &'static str)];

/// States listed per LBPS class. Classes 3 and 5 are built from the same
/// printed product-state set but carry different states.
const LBPS_TABLE: [&[TableRow]; 5] = [
    &[
        &[(1.0, "000"), (1.0, "110"), (1.0, "101"), (1.0, "011")],
        &[(1.0, "000"), (1.0, "110"), (-1.0, "101"), (-1.0, "011")],
        &[(1.0, "000"), (-1.0, "110"), (1.0, "101"), (-1.0, "011")],
        &[(1.0, "000"), (-1.0, "110"), (-1.0, "101"), (1.0, "011")],
    ],
    &[
        &[(1.0, "111"), (1.0, "001"), (1.0, "010"), (1.0, "100")],
        &[(1.0, "111"), (1.0, "001"), (-1.0, "010"), (-1.0, "100")],
        &[(1.0, "111"), (-1.0, "001"), (1.0, "010"), (-1.0, "100")],
        &[(1.0, "111"), (-1.0, "001"), (-1.0, "010"), (1.0, "100")],
    ],
    &[&[(1.0, "010"), (1.0, "101")], &[(1.0, "010"), (-1.0, "101")]],
    &[&[(1.0, "001"), (1.0, "110")], &[(1.0, "001"), (-1.0, "110")]],
    &[&[(1.0, "100"), (1.0, "011")], &[(1.0, "100"), (-1.0, "011")]],
];

/// Number of rows listed for LBPS class `class_index` (1-based).
pub fn lbps_rows(class_index: usize) -> Option<usize> {
    class_index.checked_sub(1).and_then(|i| LBPS_TABLE.get(i)).map(|rows| rows.len())
}

/// Row `row` (1-based) of LBPS class `class_index` (1-based). Classes 1
/// and 2 have four rows; classes 3 to 5 have two (`+` then `−`).
pub fn lbps_table_state(class_index: usize, row: usize) -> Result<PureState> {
    let rows = class_index
        .checked_sub(1)
        .and_then(|i| LBPS_TABLE.get(i))
        .ok_or_else(|| Error::InvalidParameter(format!("LBPS class {class_index} not in 1..=5")))?;
    let terms = row
        .checked_sub(1)
        .and_then(|r| rows.get(r))
        .ok_or_else(|| Error::InvalidParameter(format!("row {row} not in 1..={}", rows.len())))?;
    from_terms(3, terms)
}

/// Serializable request for one of the named states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CanonicalSpec {
    Bell { index: usize },
    Max2q { a: (f64, f64), b: (f64, f64), theta: f64 },
    Ghz { n: usize },
    GhzLike { variant: usize },
    W,
    GeneralizedBell { d: usize },
    Acin { k: [f64; 5], theta: f64 },
    LbpsTable { class: usize, row: usize },
}

impl CanonicalSpec {
    pub fn build(&self) -> Result<PureState> {
        match *self {
            CanonicalSpec::Bell { index } => bell(index),
            CanonicalSpec::Max2q { a, b, theta } => max_two_qubit(c(a.0, a.1), c(b.0, b.1), theta),
            CanonicalSpec::Ghz { n } => ghz(n),
            CanonicalSpec::GhzLike { variant } => ghz_like(variant),
            CanonicalSpec::W => Ok(w_state()),
            CanonicalSpec::GeneralizedBell { d } => generalized_bell(d),
            CanonicalSpec::Acin { k, theta } => acin_canonical(k, theta),
            CanonicalSpec::LbpsTable { class, row } => lbps_table_state(class, row),
        }
    }
}
