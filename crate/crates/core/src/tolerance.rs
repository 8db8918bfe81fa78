//! Default numerical tolerances shared by every module.

/// Allowed deviation of a state's norm from one.
pub const NORM: f64 = 1e-10;

/// Allowed `max |U^dag U - I|` for a local unitary factor.
pub const UNITARY: f64 = 1e-10;

/// Default absolute tolerance on certification residuals.
pub const CERTIFY: f64 = 1e-9;

/// Round-off allowance below zero for the 3-tangle before it is an error.
pub const TANGLE: f64 = 1e-10;

/// Hermiticity allowance for density and Gram matrices.
pub const HERMITIAN: f64 = 1e-12;

/// Eigenvalues above `-PSD` count as non-negative.
pub const PSD: f64 = 1e-10;

/// Allowed disagreement between the wedge and purity concurrences.
pub const CONSISTENCY: f64 = 1e-10;
