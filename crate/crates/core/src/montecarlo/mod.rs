//! Replica-parallel Monte Carlo estimates of the density, the pair
//! correlation and `gamma_s`.
//!
//! Each replica is one arrival field drawn from its own stream (see [`rng`]),
//! reduced to translation-averaged observables. Standard errors come from the
//! spread across replicas only: sites within one lattice are correlated, so
//! they do not count as independent samples. Per-replica values are collected
//! in replica order before any summation, so results are bit-identical for
//! any number of worker threads.
//!
//! `C_s` is estimated as `(1/N) sum_i omega_i omega_{i+s} - rho_hat^2` with the
//! replica's own density; this carries an `O(1/N)` bias that is left
//! uncorrected.

pub mod rng;
mod stats;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use self::rng::{replica_rng, ReplicaRng};
pub use self::stats::Estimate;
use crate::error::{Error, Result};
use crate::simulate::{run_parity_fill, ArrivalField, Boundary, Occupancy};
use crate::time::TimePoint;

/// Default cap on `sites * replicas`.
pub const DEFAULT_SITE_REPLICA_BUDGET: u128 = 1 << 33;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub sites: usize,
    pub replicas: usize,
    pub seed: u64,
    pub t_grid: Vec<TimePoint>,
    pub s_max: usize,
    pub boundary: Boundary,
    /// Worker threads; `None` uses the global rayon pool. Never affects results.
    #[serde(default)]
    pub threads: Option<usize>,
    /// Largest allowed `sites * replicas`.
    #[serde(default = "default_budget")]
    pub budget: u128,
}

fn default_budget() -> u128 {
    DEFAULT_SITE_REPLICA_BUDGET
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            sites: 1_000_000,
            replicas: 32,
            seed: 42,
            t_grid: vec![TimePoint::ONE],
            s_max: 4,
            boundary: Boundary::Ring,
            threads: None,
            budget: DEFAULT_SITE_REPLICA_BUDGET,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sites == 0 {
            return Err(Error::EmptyLattice);
        }
        if self.boundary == Boundary::Ring && self.sites < 3 {
            return Err(Error::RingTooSmall(self.sites));
        }
        if self.replicas < 2 {
            return Err(Error::InvalidArgument(format!(
                "standard errors need at least 2 replicas, got {}",
                self.replicas
            )));
        }
        if 2 * self.s_max >= self.sites {
            return Err(Error::InvalidArgument(format!(
                "s_max = {} must be below half the lattice ({} sites)",
                self.s_max, self.sites
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidArgument("thread count must be positive".into()));
        }
        let requested = self.sites as u128 * self.replicas as u128;
        if requested > self.budget {
            return Err(Error::ResourceGuard {
                requested,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub t: TimePoint,
    pub estimate: Estimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRow {
    pub s: usize,
    pub t: TimePoint,
    pub estimate: Estimate,
}

/// `gamma_s` together with the other terms of
/// `rho = p_{s+1} + p_s + gamma_s`, all from the same replicas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaRow {
    pub s: usize,
    pub t: TimePoint,
    pub gamma: Estimate,
    /// `p_s`: origin and site `s` both occupied.
    pub pair: Estimate,
    /// `p_{s+1}`.
    pub pair_next: Estimate,
    pub density: Estimate,
    /// Per-replica `rho - p_{s+1} - p_s - gamma_s`.
    pub residual: Estimate,
}

impl GammaRow {
    /// Standard errors of the four terms combined in quadrature.
    pub fn combined_stderr(&self) -> f64 {
        [self.gamma, self.pair, self.pair_next, self.density]
            .iter()
            .map(|e| e.stderr * e.stderr)
            .sum::<f64>()
            .sqrt()
    }
}

/// Runs `observe` on every replica's field and returns the results in
/// replica order.
fn run_replicas<T, F>(config: &SimConfig, observe: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&ArrivalField) -> T + Sync,
{
    config.validate()?;
    let job = || -> Result<Vec<T>> {
        (0..config.replicas)
            .into_par_iter()
            .map(|r| {
                let mut rng = replica_rng(config.seed, r as u64);
                let field = ArrivalField::random(config.sites, config.boundary, &mut rng)?;
                Ok(observe(&field))
            })
            .collect()
    };
    match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(job),
        None => job(),
    }
}

fn pair_fraction(occ: &Occupancy, s: usize) -> f64 {
    let pairs = occ.count_pairs_at(s) as f64;
    match occ.boundary() {
        Boundary::Ring => pairs / occ.len() as f64,
        Boundary::Free => pairs / (occ.len() - s) as f64,
    }
}

fn gap_fraction(occ: &Occupancy, s: usize) -> f64 {
    let hits = occ.count_gap_then_occupied(s) as f64;
    match occ.boundary() {
        Boundary::Ring => hits / occ.len() as f64,
        Boundary::Free => {
            let span = occ.len().saturating_sub(s + 1);
            if span == 0 {
                0.0
            } else {
                hits / span as f64
            }
        }
    }
}

/// Column `c` of a replica-major table.
fn column<const W: usize>(rows: &[Vec<[f64; W]>], cell: usize, c: usize) -> Vec<f64> {
    rows.iter().map(|r| r[cell][c]).collect()
}

/// Density of occupied sites at each time of the grid.
pub fn run_density_mc(config: &SimConfig) -> Result<Vec<DensityRow>> {
    let per_replica = run_replicas(config, |field| {
        config
            .t_grid
            .iter()
            .map(|&t| [run_parity_fill(field, t).density()])
            .collect::<Vec<[f64; 1]>>()
    })?;
    Ok(config
        .t_grid
        .iter()
        .enumerate()
        .map(|(i, &t)| DensityRow {
            t,
            estimate: Estimate::from_samples(&column(&per_replica, i, 0)),
        })
        .collect())
}

/// `C_s(t)` for every `s` in `0..=s_max` and every time of the grid, ordered
/// by time then `s`.
pub fn run_correlation_mc(config: &SimConfig) -> Result<Vec<CorrelationRow>> {
    let s_count = config.s_max + 1;
    let per_replica = run_replicas(config, |field| {
        let mut cells = Vec::with_capacity(config.t_grid.len() * s_count);
        for &t in &config.t_grid {
            let occ = run_parity_fill(field, t);
            let rho = occ.density();
            for s in 0..s_count {
                cells.push([pair_fraction(&occ, s) - rho * rho]);
            }
        }
        cells
    })?;
    let mut rows = Vec::with_capacity(per_replica.first().map_or(0, Vec::len));
    for (ti, &t) in config.t_grid.iter().enumerate() {
        for s in 0..s_count {
            rows.push(CorrelationRow {
                s,
                t,
                estimate: Estimate::from_samples(&column(&per_replica, ti * s_count + s, 0)),
            });
        }
    }
    Ok(rows)
}

/// `gamma_s(t)` for even `s`, with `p_s`, `p_{s+1}` and the density from the
/// same replicas.
pub fn run_gamma_mc(config: &SimConfig, s: usize) -> Result<Vec<GammaRow>> {
    if s < 2 || s % 2 != 0 {
        return Err(Error::OddSeparation(s as u32));
    }
    if 2 * (s + 2) >= config.sites {
        return Err(Error::InvalidArgument(format!(
            "s + 2 = {} must be below half the lattice ({} sites)",
            s + 2,
            config.sites
        )));
    }
    let per_replica = run_replicas(config, |field| {
        config
            .t_grid
            .iter()
            .map(|&t| {
                let occ = run_parity_fill(field, t);
                let gamma = gap_fraction(&occ, s);
                let pair = pair_fraction(&occ, s);
                let pair_next = pair_fraction(&occ, s + 1);
                let rho = occ.density();
                [gamma, pair, pair_next, rho, rho - pair_next - pair - gamma]
            })
            .collect::<Vec<[f64; 5]>>()
    })?;
    Ok(config
        .t_grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let est = |c| Estimate::from_samples(&column(&per_replica, i, c));
            GammaRow {
                s,
                t,
                gamma: est(0),
                pair: est(1),
                pair_next: est(2),
                density: est(3),
                residual: est(4),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(t_grid: Vec<f64>) -> SimConfig {
        SimConfig {
            sites: 20_000,
            replicas: 8,
            seed: 42,
            t_grid: t_grid.into_iter().map(|t| TimePoint::new(t).unwrap()).collect(),
            s_max: 3,
            ..SimConfig::default()
        }
    }

    #[test]
    fn validation() {
        let ok = small(vec![1.0]);
        assert!(ok.validate().is_ok());
        assert!(SimConfig { replicas: 1, ..ok.clone() }.validate().is_err());
        assert!(SimConfig { s_max: 10_000, ..ok.clone() }.validate().is_err());
        assert!(SimConfig { sites: 2, s_max: 0, ..ok.clone() }.validate().is_err());
        assert!(SimConfig { threads: Some(0), ..ok.clone() }.validate().is_err());
        assert!(matches!(
            SimConfig { budget: 1000, ..ok }.validate(),
            Err(Error::ResourceGuard { requested: 160_000, budget: 1000 })
        ));
    }

    #[test]
    fn zero_time_is_exactly_zero() {
        let cfg = small(vec![0.0]);
        let d = run_density_mc(&cfg).unwrap();
        assert_eq!((d[0].estimate.mean, d[0].estimate.stderr), (0.0, 0.0));
        for row in run_correlation_mc(&cfg).unwrap() {
            assert_eq!(row.estimate.mean, 0.0);
        }
        let g = run_gamma_mc(&cfg, 2).unwrap();
        assert_eq!(g[0].gamma.mean, 0.0);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let cfg = small(vec![0.5, 1.0]);
        let one = run_correlation_mc(&SimConfig { threads: Some(1), ..cfg.clone() }).unwrap();
        let three = run_correlation_mc(&SimConfig { threads: Some(3), ..cfg.clone() }).unwrap();
        assert_eq!(one, three);
        assert_eq!(one, run_correlation_mc(&cfg).unwrap());
    }

    #[test]
    fn ring_partition_is_exact_per_replica() {
        let cfg = small(vec![0.3, 1.0]);
        for row in run_gamma_mc(&cfg, 2).unwrap() {
            assert!(row.residual.mean.abs() < 1e-14);
        }
    }

    #[test]
    fn gamma_rejects_odd() {
        assert!(run_gamma_mc(&small(vec![1.0]), 3).is_err());
    }

    #[test]
    fn free_boundary_runs() {
        let cfg = SimConfig {
            boundary: Boundary::Free,
            ..small(vec![1.0])
        };
        let d = run_density_mc(&cfg).unwrap();
        // edge effects are O(1/N)
        assert!((d[0].estimate.mean - 0.4323).abs() < 0.01);
    }
}
