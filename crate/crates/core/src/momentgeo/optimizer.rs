use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CompactModel;

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-14;
/// Restarts are evaluated in fixed-size batches so that early exit never
/// depends on the worker count.
const BATCH: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub step_init: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { restarts: 100, max_iters: 500, grad_tol: 1e-8, step_init: 0.1, seed: 0 }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        OptimizerConfig { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.restarts == 0 || self.max_iters == 0 {
            return Err("restarts and maxIters must be positive".into());
        }
        if !(self.grad_tol > 0.0 && self.step_init > 0.0) {
            return Err("gradTol and stepInit must be positive".into());
        }
        Ok(())
    }
}

/// One descent run on the unit-normalized orbit.
#[derive(Clone, Debug)]
pub struct DescentRun {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub point: DVector<f64>,
    pub history: Vec<f64>,
}

impl CompactModel {
    fn objective(&self, xi: &DVector<f64>) -> (f64, DVector<f64>) {
        let p = self.project_ortho(xi);
        (0.5 * p.norm_squared(), p)
    }

    /// Riemannian descent of `½‖P_l ξ‖²` along the adjoint orbit, with
    /// gradient `[ξ, P_l ξ]` and Armijo backtracking.
    pub(crate) fn descend(&self, start: DVector<f64>, cfg: &OptimizerConfig, record: bool) -> DescentRun {
        let mut xi = start;
        let (mut f, mut p) = self.objective(&xi);
        let mut step = cfg.step_init;
        let mut history = if record { vec![f] } else { Vec::new() };
        let mut iterations = 0;
        let mut converged = false;
        while iterations < cfg.max_iters {
            let grad = self.bracket_ortho(&xi, &p);
            let g2 = grad.norm_squared();
            if g2.sqrt() < cfg.grad_tol {
                converged = true;
                break;
            }
            let ad = self.ad_ortho_of(&grad);
            let mut accepted = false;
            while step >= MIN_STEP {
                let candidate = (&ad * -step).exp() * &xi;
                let (fc, pc) = self.objective(&candidate);
                if fc <= f - ARMIJO * step * g2 {
                    xi = candidate;
                    f = fc;
                    p = pc;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
            iterations += 1;
            step *= 2.0;
            if record {
                history.push(f);
            }
        }
        DescentRun { value: f, iterations, converged, point: xi, history }
    }

    /// Starting point `exp(ad Z) ξ` for restart `index`, `Z` standard normal.
    pub(crate) fn random_start(&self, xi: &DVector<f64>, seed: u64, index: u64) -> DVector<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let z = DVector::from_fn(self.dimension(), |_, _| rng.sample::<f64, _>(StandardNormal));
        self.ad_ortho_of(&z).exp() * xi
    }

    /// Best run over the restarts for a unit vector `xi` (orthonormal
    /// coordinates). Stops after the batch in which the normalized distance
    /// first drops below `stop_below`.
    pub(crate) fn best_run(
        &self,
        xi: &DVector<f64>,
        cfg: &OptimizerConfig,
        stop_below: Option<f64>,
    ) -> (usize, usize, DescentRun) {
        let mut best: Option<(usize, DescentRun)> = None;
        let mut done = 0;
        let indices: Vec<usize> = (0..cfg.restarts).collect();
        for batch in indices.chunks(BATCH) {
            let runs: Vec<DescentRun> = batch
                .par_iter()
                .map(|&k| self.descend(self.random_start(xi, cfg.seed, k as u64), cfg, false))
                .collect();
            for (&k, run) in batch.iter().zip(runs) {
                if best.as_ref().is_none_or(|(_, b)| run.value < b.value) {
                    best = Some((k, run));
                }
            }
            done += batch.len();
            if let (Some(limit), Some((_, b))) = (stop_below, &best) {
                if (2.0 * b.value).sqrt() < limit {
                    break;
                }
            }
        }
        let (k, run) = best.expect("at least one restart");
        (k, done, run)
    }
}
