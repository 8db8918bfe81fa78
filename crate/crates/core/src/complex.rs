use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Complex number on the wire: a two-element JSON array `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pair(pub f64, pub f64);

impl From<Complex64> for Pair {
    fn from(z: Complex64) -> Self {
        Pair(z.re, z.im)
    }
}

impl From<Pair> for Complex64 {
    fn from(p: Pair) -> Self {
        Complex64::new(p.0, p.1)
    }
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
