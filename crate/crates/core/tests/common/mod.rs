#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use wedgent::{CMatrix, Complex64, LocalUnitary, PureState, SiteDims};

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

pub fn random_state(rng: &mut ChaCha8Rng, dims: &[usize]) -> PureState {
    let dims = SiteDims::new(dims.to_vec()).unwrap();
    let amps = random_vector(rng, dims.total());
    PureState::normalized(dims, amps).unwrap()
}

/// Random unitary from Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v = random_vector(rng, d);
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= proj * y);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut m = CMatrix::zeros(d);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    m
}

pub fn random_local_unitary(rng: &mut ChaCha8Rng, dims: &SiteDims) -> LocalUnitary {
    LocalUnitary::new(dims.as_slice().iter().map(|&d| random_unitary(rng, d)).collect()).unwrap()
}

/// Product of independent random single-site states.
pub fn random_product(rng: &mut ChaCha8Rng, dims: &[usize]) -> PureState {
    dims.iter().map(|&d| random_state(rng, &[d])).reduce(|a, b| a.tensor(&b)).unwrap()
}

/// Reorders the sites of a state: output site `k` is input site `perm[k]`.
pub fn permute_sites(state: &PureState, perm: &[usize]) -> PureState {
    let dims = state.dims().as_slice();
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let new = SiteDims::new(new_dims.clone()).unwrap();
    let old_strides = state.dims().strides();
    let mut amps = vec![Complex64::new(0.0, 0.0); new.total()];
    for (x, amp) in amps.iter_mut().enumerate() {
        let mut rem = x;
        let mut old_index = 0;
        for k in (0..perm.len()).rev() {
            let digit = rem % new_dims[k];
            rem /= new_dims[k];
            old_index += digit * old_strides[perm[k]];
        }
        *amp = state.amplitudes()[old_index];
    }
    PureState::new(new, amps).unwrap()
}

/// Cayley hyperdeterminant form of the 3-tangle, `4 |d1 - 2 d2 + 4 d3|`.
pub fn hyperdeterminant_tangle(state: &PureState) -> f64 {
    let a = |i: usize, j: usize, k: usize| state.amplitudes()[4 * i + 2 * j + k];
    let d1 = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm()
}

pub fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.random_range(0..items.len())]
}
