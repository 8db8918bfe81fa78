//! Numerical search for maximally entangled states on the unit sphere of
//! amplitudes.
//!
//! A state with `D` amplitudes is parametrized by `2D` reals (real and
//! imaginary parts) and normalized on every evaluation. Each restart draws a
//! Gaussian starting point and runs projected ascent: central finite
//! differences give the gradient, its radial part is removed, and a step is
//! only accepted when it improves the objective, so the objective is
//! monotone along a restart.
//!
//! Randomness comes from ChaCha8 seeded with `seed`, using stream `r` for
//! restart `r`; restarts are therefore independent and run in parallel
//! without changing the result.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::Pair;
use crate::concurrence::{certify, certify_absolutely_maximal, global_entanglement};
use crate::error::{Error, Result};
use crate::state::{enumerate_bipartitions, PureState, SiteDims};
use crate::tolerance;

/// Largest register the search accepts.
pub const MAX_TOTAL_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Maximize the sum of cut concurrences.
    MaximizeGlobalE,
    /// Drive every cut's reduced state to `I/d`.
    MinimizeConstraintResidual,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dims: SiteDims,
    pub objective: Objective,
    pub restarts: usize,
    pub max_iters: usize,
    /// Initial ascent step; adapted per iteration.
    pub initial_step: f64,
    /// Central-difference step.
    pub fd_step: f64,
    pub seed: u64,
    /// Certification tolerance for the best state.
    pub tol: f64,
}

impl SearchConfig {
    pub fn new(dims: SiteDims, objective: Objective) -> Self {
        Self {
            dims,
            objective,
            restarts: 8,
            max_iters: 2000,
            initial_step: 0.1,
            fd_step: 1e-6,
            seed: 0,
            tol: tolerance::CERTIFY,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dims.num_sites() < 2 {
            return Err(Error::InvalidDims("search needs at least two sites".into()));
        }
        if self.dims.total() > MAX_TOTAL_DIM {
            return Err(Error::InvalidDims(format!("total dimension {} above {MAX_TOTAL_DIM}", self.dims.total())));
        }
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidParameter("restarts and max_iters must be at least 1".into()));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.initial_step) || !positive(self.fd_step) || !positive(self.tol) {
            return Err(Error::InvalidParameter("step sizes and tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// What happened in one restart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartSummary {
    pub index: usize,
    pub initial_objective: f64,
    pub final_objective: f64,
    pub iterations: usize,
    pub accepted_steps: usize,
    /// Stopped on a stationary point or target rather than the iteration cap.
    pub converged: bool,
    /// Objective after every accepted step.
    #[serde(skip)]
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_state: PureState,
    /// Objective of the best state: global E, or the constraint residual in
    /// residual mode.
    pub best_objective: f64,
    pub best_restart: usize,
    pub global_e: f64,
    pub constraint_residual: f64,
    pub worst_ortho_residual: f64,
    pub worst_equality_residual: f64,
    pub certified: bool,
    pub restarts: Vec<RestartSummary>,
}

/// Serialized form of [`SearchResult`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResultJson {
    pub dims: Vec<usize>,
    pub best_objective: f64,
    pub best_restart: usize,
    pub global_e: f64,
    pub constraint_residual: f64,
    pub worst_ortho_residual: f64,
    pub worst_equality_residual: f64,
    pub certified: bool,
    pub amplitudes: Vec<Pair>,
    pub restarts: Vec<RestartSummary>,
}

impl SearchResult {
    pub fn to_json(&self) -> SearchResultJson {
        SearchResultJson {
            dims: self.best_state.dims().as_slice().to_vec(),
            best_objective: self.best_objective,
            best_restart: self.best_restart,
            global_e: self.global_e,
            constraint_residual: self.constraint_residual,
            worst_ortho_residual: self.worst_ortho_residual,
            worst_equality_residual: self.worst_equality_residual,
            certified: self.certified,
            amplitudes: self.best_state.amplitudes().iter().map(|&z| Pair::from(z)).collect(),
            restarts: self.restarts.clone(),
        }
    }
}

/// `sum over cuts of (ortho_residual^2 + equality_residual^2)`; zero exactly
/// when every cut is maximally entangled.
pub fn constraint_residual(state: &PureState) -> Result<f64> {
    enumerate_bipartitions(state.dims())?
        .iter()
        .map(|cut| {
            certify(state, cut, tolerance::CERTIFY).map(|r| r.ortho_residual.powi(2) + r.equality_residual.powi(2))
        })
        .sum()
}

/// Reduced-state purities straight from a raw amplitude slice, with the
/// index maps of every cut computed once.
struct Evaluator {
    cuts: Vec<CutMap>,
}

struct CutMap {
    d_small: usize,
    d_large: usize,
    /// register index → position in the d_small × d_large matrix
    slot: Vec<usize>,
}

impl Evaluator {
    fn new(dims: &SiteDims) -> Result<Self> {
        let cuts = enumerate_bipartitions(dims)?
            .iter()
            .map(|cut| {
                let side = cut.smaller_side();
                let d_large = cut.dim(side.other());
                let slot = cut.index_split(dims, side).into_iter().map(|(i, m)| i * d_large + m).collect();
                CutMap { d_small: cut.dim(side), d_large, slot }
            })
            .collect();
        Ok(Self { cuts })
    }

    /// Calls `f(d, rho)` with each cut's reduced state (row-major).
    fn for_each_rdm(&self, amps: &[Complex64], mut f: impl FnMut(usize, &[Complex64])) {
        let mut m = Vec::new();
        let mut rho = Vec::new();
        for cut in &self.cuts {
            m.clear();
            m.resize(cut.d_small * cut.d_large, Complex64::new(0.0, 0.0));
            for (x, &s) in cut.slot.iter().enumerate() {
                m[s] = amps[x];
            }
            let d = cut.d_small;
            rho.clear();
            rho.resize(d * d, Complex64::new(0.0, 0.0));
            for i in 0..d {
                let vi = &m[i * cut.d_large..(i + 1) * cut.d_large];
                for j in i..d {
                    let vj = &m[j * cut.d_large..(j + 1) * cut.d_large];
                    let z: Complex64 = vi.iter().zip(vj).map(|(a, b)| a * b.conj()).sum();
                    rho[i * d + j] = z;
                    rho[j * d + i] = z.conj();
                }
            }
            f(d, &rho);
        }
    }

    fn global_e(&self, amps: &[Complex64]) -> f64 {
        let mut e = 0.0;
        self.for_each_rdm(amps, |_, rho| {
            let purity: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
            e += (2.0 * (1.0 - purity)).max(0.0).sqrt();
        });
        e
    }

    /// `sum over cuts of |rho - I/d|_F^2`, a smooth surrogate with the same
    /// zero set as [`constraint_residual`].
    fn frobenius_residual(&self, amps: &[Complex64]) -> f64 {
        let mut total = 0.0;
        self.for_each_rdm(amps, |d, rho| {
            let target = 1.0 / d as f64;
            for i in 0..d {
                for j in 0..d {
                    let z = rho[i * d + j];
                    total += if i == j { (z.re - target).powi(2) + z.im.powi(2) } else { z.norm_sqr() };
                }
            }
        });
        total
    }

    /// Objective to maximize.
    fn score(&self, objective: Objective, amps: &[Complex64]) -> f64 {
        match objective {
            Objective::MaximizeGlobalE => self.global_e(amps),
            Objective::MinimizeConstraintResidual => -self.frobenius_residual(amps),
        }
    }
}

fn to_amps(x: &[f64], out: &mut Vec<Complex64>) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    out.clear();
    out.extend(x.chunks_exact(2).map(|p| Complex64::new(p[0] / norm, p[1] / norm)));
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

struct Restart {
    x: Vec<f64>,
    summary: RestartSummary,
}

fn run_restart(config: &SearchConfig, eval: &Evaluator, index: usize) -> Restart {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let n = 2 * config.dims.total();
    let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    normalize(&mut x);

    let mut amps = Vec::with_capacity(n / 2);
    let mut score = |p: &[f64]| {
        to_amps(p, &mut amps);
        eval.score(config.objective, &amps)
    };

    let h = config.fd_step;
    let mut f = score(&x);
    let initial = f;
    let mut step = config.initial_step;
    let mut trace = vec![f];
    let mut grad = vec![0.0; n];
    let mut probe = x.clone();
    let mut trial = vec![0.0; n];
    let (mut iterations, mut accepted, mut converged) = (0, 0, false);
    // Residual mode stops once the smooth residual is far below tol^2.
    let target = config.tol * config.tol * 1e-4;

    while iterations < config.max_iters {
        iterations += 1;
        if config.objective == Objective::MinimizeConstraintResidual && -f <= target {
            converged = true;
            break;
        }
        for k in 0..n {
            probe[k] = x[k] + h;
            let up = score(&probe);
            probe[k] = x[k] - h;
            let down = score(&probe);
            probe[k] = x[k];
            grad[k] = (up - down) / (2.0 * h);
        }
        let radial: f64 = grad.iter().zip(&x).map(|(g, v)| g * v).sum();
        grad.iter_mut().zip(&x).for_each(|(g, v)| *g -= radial * v);
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < 1e-14 {
            converged = true;
            break;
        }

        let mut improved = false;
        while step > 1e-16 {
            trial.iter_mut().zip(&x).zip(&grad).for_each(|((t, v), g)| *t = v + step * g);
            normalize(&mut trial);
            let ft = score(&trial);
            if ft > f {
                std::mem::swap(&mut x, &mut trial);
                probe.copy_from_slice(&x);
                f = ft;
                step *= 1.5;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            converged = true;
            break;
        }
        accepted += 1;
        trace.push(f);
    }

    Restart {
        x,
        summary: RestartSummary {
            index,
            initial_objective: initial,
            final_objective: f,
            iterations,
            accepted_steps: accepted,
            converged,
            trace,
        },
    }
}

/// Runs every restart, keeps the best (ties go to the lower restart index)
/// and certifies it at `config.tol`. Non-convergence shows up in the
/// restart summaries, never as an error.
pub fn maximize(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let eval = Evaluator::new(&config.dims)?;
    let runs: Vec<Restart> = (0..config.restarts).into_par_iter().map(|r| run_restart(config, &eval, r)).collect();
    let best = runs
        .iter()
        .reduce(|a, b| if b.summary.final_objective > a.summary.final_objective { b } else { a })
        .expect("at least one restart");

    let mut amps = Vec::new();
    to_amps(&best.x, &mut amps);
    let best_state = PureState::normalized(config.dims.clone(), amps)?;
    let report = global_entanglement(&best_state)?;
    let residual = constraint_residual(&best_state)?;
    let cert = certify_absolutely_maximal(&best_state, config.tol)?;
    let best_objective = match config.objective {
        Objective::MaximizeGlobalE => report.global_e,
        Objective::MinimizeConstraintResidual => residual,
    };
    Ok(SearchResult {
        best_objective,
        best_restart: best.summary.index,
        global_e: report.global_e,
        constraint_residual: residual,
        worst_ortho_residual: cert.worst_ortho_residual,
        worst_equality_residual: cert.worst_equality_residual,
        certified: cert.absolutely_maximal,
        restarts: runs.into_iter().map(|r| r.summary).collect(),
        best_state,
    })
}
