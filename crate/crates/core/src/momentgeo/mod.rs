//! Numerical geometry of the moment image `im N = Ad*_G · h^⊥`.
//!
//! Coadjoint orbits are handled as adjoint orbits of the compact form `k`
//! through the invariant metric. The distance from the orbit of `ξ_λ` to
//! `h^⊥` is `min_k ‖P_l(Ad_k ξ_λ)‖`, found by multistart descent.

mod compact;
mod optimizer;

pub use compact::CompactModel;
pub use optimizer::{DescentRun, OptimizerConfig};

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::liecore::{RootSystem, Weight};

/// Result of an orbit-to-`h^⊥` distance computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitDistance {
    pub distance: f64,
    /// `‖ξ_λ‖`.
    pub norm: f64,
    /// Minimizing orbit point, compact coordinates.
    pub argmin: Vec<f64>,
    pub iterations: usize,
    pub best_restart: usize,
    pub restarts_run: usize,
    pub converged: bool,
}

impl OrbitDistance {
    pub fn meets(&self, tol: f64) -> bool {
        self.distance < tol * (1.0 + self.norm)
    }
}

impl CompactModel {
    /// Distance from the orbit through a compact element `xi` to `h^⊥`.
    pub fn orbit_distance(&self, xi: &[f64], cfg: &OptimizerConfig) -> OrbitDistance {
        self.orbit_distance_until(xi, cfg, None)
    }

    fn orbit_distance_until(&self, xi: &[f64], cfg: &OptimizerConfig, stop_below: Option<f64>) -> OrbitDistance {
        let y = self.to_ortho(xi);
        let norm = y.norm();
        if norm == 0.0 {
            return OrbitDistance {
                distance: 0.0,
                norm,
                argmin: vec![0.0; xi.len()],
                iterations: 0,
                best_restart: 0,
                restarts_run: 0,
                converged: true,
            };
        }
        let unit = y / norm;
        let (best_restart, restarts_run, run) = self.best_run(&unit, cfg, stop_below.map(|s| s / norm));
        OrbitDistance {
            distance: norm * (2.0 * run.value).sqrt(),
            norm,
            argmin: self.from_ortho(&(run.point * norm)),
            iterations: run.iterations,
            best_restart,
            restarts_run,
            converged: run.converged,
        }
    }

    /// One recorded descent run from restart `index`, for diagnostics.
    pub fn descent_trace(&self, lambda: &[f64], cfg: &OptimizerConfig, index: u64) -> DescentRun {
        let y = self.to_ortho(&self.chamber_map(lambda));
        let unit = &y / y.norm();
        let start = self.random_start(&unit, cfg.seed, index);
        self.descend(start, cfg, true)
    }

    pub fn ortho_norm(&self, x: &[f64]) -> f64 {
        self.to_ortho(x).norm()
    }
}

/// `δ(λ, im N)` for a real weight in fundamental coordinates.
pub fn moment_image_distance(model: &CompactModel, lambda: &[f64], cfg: &OptimizerConfig) -> OrbitDistance {
    model.orbit_distance(&model.chamber_map(lambda), cfg)
}

pub fn moment_image_distance_weight(model: &CompactModel, lambda: &Weight, cfg: &OptimizerConfig) -> Result<OrbitDistance> {
    lambda.check_system(model.system())?;
    Ok(moment_image_distance(model, &lambda.to_f64(), cfg))
}

/// Whether the orbit through `ξ_λ` comes within `tol·(1 + ‖ξ_λ‖)` of `h^⊥`.
/// Stops restarting once a run lands well inside the threshold.
pub fn orbit_meets_h_perp(model: &CompactModel, lambda: &[f64], cfg: &OptimizerConfig, tol: f64) -> (bool, OrbitDistance) {
    let xi = model.chamber_map(lambda);
    let threshold = tol * (1.0 + model.ortho_norm(&xi));
    let d = model.orbit_distance_until(&xi, cfg, Some(threshold / 4.0));
    (d.meets(tol), d)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    /// 1-based fundamental weight index.
    pub index: usize,
    pub lambda: Vec<f64>,
    pub distance: f64,
    pub meets: bool,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FundamentalScan {
    pub rows: Vec<ScanRow>,
    /// Every fundamental orbit meets `h^⊥` (numerical evidence of surjectivity).
    pub all_meet: bool,
}

pub fn scan_fundamental_orbits(model: &CompactModel, cfg: &OptimizerConfig, tol: f64) -> FundamentalScan {
    let rank = model.system().rank();
    let rows: Vec<ScanRow> = (0..rank)
        .map(|i| {
            let mut lambda = vec![0.0; rank];
            lambda[i] = 1.0;
            let (meets, d) = orbit_meets_h_perp(model, &lambda, cfg, tol);
            ScanRow { index: i + 1, lambda, distance: d.distance, meets, iterations: d.iterations }
        })
        .collect();
    let all_meet = rows.iter().all(|r| r.meets);
    FundamentalScan { rows, all_meet }
}

/// Smallest real dimension of a coadjoint orbit through a fundamental
/// weight: `2·#{α > 0 : (ω_i, α) ≠ 0}`.
pub fn min_orbit_dimension(rs: &RootSystem) -> usize {
    (0..rs.rank())
        .map(|i| 2 * rs.positive_roots().iter().filter(|r| r.simple[i] > 0).count())
        .min()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WzSample {
    pub lambda: Vec<i64>,
    pub distance: f64,
    pub meets: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WzReport {
    pub hypothesis_holds: bool,
    pub min_orbit_dimension: usize,
    pub dim_h: usize,
    pub samples: Vec<WzSample>,
    pub failures: Vec<Vec<i64>>,
}

/// Checks that every sampled orbit of dimension above `2·dim h` meets `h^⊥`.
/// Sample weights have coordinates in `[0, 4]`, drawn from a stream of the
/// configured seed distinct from the restart streams.
pub fn wz_orbit_property(model: &CompactModel, sample_count: usize, cfg: &OptimizerConfig, tol: f64) -> WzReport {
    let g = model.system();
    let min_dim = min_orbit_dimension(g);
    let dim_h = model.spec().h().dimension();
    let hypothesis_holds = min_dim > 2 * dim_h;
    let mut report =
        WzReport { hypothesis_holds, min_orbit_dimension: min_dim, dim_h, samples: Vec::new(), failures: Vec::new() };
    if !hypothesis_holds {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(u64::MAX);
    while report.samples.len() < sample_count {
        let lambda: Vec<i64> = (0..g.rank()).map(|_| rng.random_range(0..=4)).collect();
        if lambda.iter().all(|&x| x == 0) {
            continue;
        }
        let real: Vec<f64> = lambda.iter().map(|&x| x as f64).collect();
        let (meets, d) = orbit_meets_h_perp(model, &real, cfg, tol);
        if !meets {
            report.failures.push(lambda.clone());
        }
        report.samples.push(WzSample { lambda, distance: d.distance, meets });
    }
    report
}

/// Random compact element with standard normal orthonormal coordinates.
pub fn random_compact_element(model: &CompactModel, rng: &mut impl Rng) -> Vec<f64> {
    let z = DVector::from_fn(model.dimension(), |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
    model.from_ortho(&z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::catalog_embedding;

    fn model(pair: &str) -> CompactModel {
        CompactModel::new(&catalog_embedding(pair).unwrap()).unwrap()
    }

    fn fast() -> OptimizerConfig {
        OptimizerConfig { restarts: 12, ..OptimizerConfig::with_seed(7) }
    }

    #[test]
    fn projector_ranks() {
        let id = model("identity:A1");
        assert_eq!(id.dimension(), 3);
        assert!((id.h_projector() - nalgebra::DMatrix::identity(3, 3)).abs().max() < 1e-9);
        assert_eq!(model("diagonal:A1").h_rank(), 3);
        let p = model("principal-sl2:A2");
        assert_eq!(p.dimension(), 8);
        assert_eq!(p.h_rank(), 3);
    }

    #[test]
    fn identity_distance_is_full_norm() {
        let m = model("identity:A1");
        let d = moment_image_distance(&m, &[1.0], &fast());
        assert!((d.distance - d.norm).abs() < 1e-9);
        assert!((d.norm - 1.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn diagonal_examples() {
        let m = model("diagonal:A1");
        let d10 = moment_image_distance(&m, &[1.0, 0.0], &fast());
        assert!((d10.distance - d10.norm / 2f64.sqrt()).abs() < 5e-3, "{d10:?}");
        let d11 = moment_image_distance(&m, &[1.0, 1.0], &fast());
        assert!(d11.distance < 1e-3, "{d11:?}");
        assert!(orbit_meets_h_perp(&m, &[1.0, 1.0], &fast(), 1e-3).0);
        assert!(!orbit_meets_h_perp(&m, &[1.0, 0.0], &fast(), 1e-3).0);
    }

    #[test]
    fn orbit_dimensions() {
        let dim = |s: &str| min_orbit_dimension(&RootSystem::parse(s).unwrap());
        assert_eq!(dim("A1"), 2);
        assert_eq!(dim("A2"), 4);
        assert_eq!(dim("G2"), 10);
    }

    #[test]
    fn scan_identity_and_principal() {
        let id = model("identity:A1");
        assert!(!scan_fundamental_orbits(&id, &fast(), 1e-3).all_meet);
        let p = model("principal-sl2:A2");
        let scan = scan_fundamental_orbits(&p, &fast(), 1e-3);
        assert!(scan.all_meet, "{scan:?}");
    }

    #[test]
    fn wz_hypothesis_gate() {
        let d = model("diagonal:A1");
        let r = wz_orbit_property(&d, 5, &fast(), 1e-3);
        assert!(!r.hypothesis_holds);
        assert!(r.samples.is_empty());
    }

    #[test]
    fn results_do_not_depend_on_batching_order() {
        let m = model("principal-sl2:A2");
        let a = moment_image_distance(&m, &[1.0, 2.0], &fast());
        let b = moment_image_distance(&m, &[1.0, 2.0], &fast());
        assert_eq!(a, b);
    }
}
