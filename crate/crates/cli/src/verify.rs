//! The identity suite behind `adsorb verify`.
//!
//! Every check reduces to a worst-case discrepancy compared against a fixed
//! tolerance. `quick` covers the closed forms, the two fillers and small
//! oracle windows; `full` adds Monte Carlo checks on the settings' grid.

use adsorb_core::analytic::*;
use adsorb_core::montecarlo::{replica_rng, run_correlation_mc, run_density_mc, run_gamma_mc};
use adsorb_core::oracle::{exact_center_density, exact_gamma, for_each_order, window_bound};
use adsorb_core::simulate::{chronological_fill, run_parity_fill, ArrivalField, Boundary};
use adsorb_core::{uniform_grid, TimePoint};

use crate::record::{OutputRecord, Quantity};
use crate::settings::{Level, Settings};
use crate::CliError;

/// Names accepted by the corruption hook, in run order.
pub const QUICK_CHECKS: [&str; 14] = [
    "density-closed-form",
    "density-ik-sum",
    "event-sum",
    "variance",
    "adjacent-pair-tail",
    "telescope",
    "gamma-assembly",
    "s1-s2",
    "gamma-jammed",
    "filler-equivalence",
    "exclusion-jamming-monotone",
    "oracle-density",
    "oracle-gamma",
    "oracle-deposition",
];
pub const FULL_CHECKS: [&str; 4] = ["mc-density", "mc-correlation", "mc-gamma", "mc-partition"];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// Worst discrepancy (absolute, or in standard errors for `mc-*`).
    pub value: f64,
    pub tol: f64,
    /// Time at which `value` was attained.
    pub t: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.value <= self.tol
    }
}

/// Test hook: shifts the reference value of one named check so that it must
/// fail.
struct Corruption<'a>(Option<&'a str>);

impl Corruption<'_> {
    fn apply(&self, name: &str, reference: f64) -> f64 {
        if self.0 == Some(name) {
            reference + 1e-3
        } else {
            reference
        }
    }
}

/// Running maximum of `|a - b|` with the time it occurred at.
struct Worst {
    value: f64,
    t: f64,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0, t: 0.0 }
    }

    fn see(&mut self, gap: f64, t: TimePoint) {
        // NaN must fail the check, so it always replaces the maximum
        if gap.is_nan() || gap > self.value {
            self.value = if gap.is_nan() { f64::INFINITY } else { gap };
            self.t = t.get();
        }
    }

    fn check(self, name: &'static str, tol: f64) -> Check {
        Check {
            name,
            value: self.value,
            tol,
            t: self.t,
        }
    }
}

fn tp(t: f64) -> TimePoint {
    TimePoint::new(t).expect("constant in [0, 1]")
}

fn analytic_checks(c: &Corruption) -> Result<Vec<Check>, CliError> {
    let grid = uniform_grid(10);
    let mut out = Vec::new();

    let mut w = Worst::new();
    let closed = c.apply("density-closed-form", (1.0 - (-2.0f64).exp()) / 2.0);
    w.see((density_exact(TimePoint::ONE) - closed).abs(), TimePoint::ONE);
    out.push(w.check("density-closed-form", 1e-12));

    let mut w = Worst::new();
    for &t in &grid {
        let sum: f64 = (0..=60).map(|k| i_k(k, t)).sum();
        w.see((sum - c.apply("density-ik-sum", density_exact(t))).abs(), t);
    }
    out.push(w.check("density-ik-sum", 1e-12));

    let mut w = Worst::new();
    for &t in &grid {
        let sum: f64 = (0..=60u32).flat_map(|j| (0..=60u32).map(move |k| g_event_prob(j, k, t))).sum();
        w.see((sum - c.apply("event-sum", density_exact(t))).abs(), t);
    }
    out.push(w.check("event-sum", 1e-8));

    let mut variance = Worst::new();
    let mut pairs = Worst::new();
    let mut telescope = Worst::new();
    for &t in &grid {
        let rho = density_exact(t);
        let cs: Vec<f64> = (0..=21)
            .map(|s| correlation_exact(s, t, 1e-15).map(|v| v.value))
            .collect::<Result<_, _>>()?;
        variance.see((cs[0] - c.apply("variance", rho * (1.0 - rho))).abs(), t);
        for r in 0..=20u32 {
            let tail = c.apply("adjacent-pair-tail", tail_sum(r, t));
            pairs.see((cs[r as usize + 1] + cs[r as usize] - tail).abs(), t);
            let partial = telescope_partial(r, t, 30)?;
            telescope.see((partial - c.apply("telescope", cs[r as usize])).abs(), t);
        }
    }
    out.push(variance.check("variance", 1e-12));
    out.push(pairs.check("adjacent-pair-tail", 1e-10));
    out.push(telescope.check("telescope", 1e-10));

    let mut assembly = Worst::new();
    let mut s1s2 = Worst::new();
    for &t in &grid {
        for s in (2..=20).step_by(2) {
            let sum = (1..=4).map(|i| gamma_component(i, s, t)).sum::<Result<f64, _>>()?;
            assembly.see((sum - c.apply("gamma-assembly", gamma_even_exact(s, t)?)).abs(), t);
        }
        for r in 2..=10 {
            let (direct, simplified) = s1_s2_identity(r, t)?;
            s1s2.see((direct - c.apply("s1-s2", simplified)).abs(), t);
        }
    }
    out.push(assembly.check("gamma-assembly", 1e-10));
    out.push(s1s2.check("s1-s2", 1e-10));

    // sites -1, 0, 1 would all be vacant, impossible once jammed
    let mut w = Worst::new();
    w.see((gamma_even_exact(2, TimePoint::ONE)? - c.apply("gamma-jammed", 0.0)).abs(), TimePoint::ONE);
    out.push(w.check("gamma-jammed", 1e-15));
    Ok(out)
}

fn simulator_checks(c: &Corruption, seed: u64) -> Result<Vec<Check>, CliError> {
    let grid = uniform_grid(10);
    let mut bits = Worst::new();
    let mut violations = Worst::new();
    for (b, boundary) in [Boundary::Free, Boundary::Ring].into_iter().enumerate() {
        let mut mismatched = 0u32;
        let mut bad = 0u32;
        for i in 0..200u64 {
            let mut rng = replica_rng(seed.wrapping_add(b as u64), i);
            let field = ArrivalField::random(1000, boundary, &mut rng)?;
            let fills: Vec<_> = grid.iter().map(|&t| run_parity_fill(&field, t)).collect();
            for (&t, fast) in grid.iter().zip(&fills) {
                let slow = chronological_fill(&field, t);
                mismatched += fast.words().iter().zip(slow.words()).map(|(x, y)| (x ^ y).count_ones()).sum::<u32>();
            }
            bad += fills.iter().filter(|o| o.has_adjacent_pair()).count() as u32;
            bad += !fills[fills.len() - 1].is_jammed() as u32;
            bad += fills.windows(2).filter(|w| !w[0].is_subset_of(&w[1])).count() as u32;
        }
        bits.see((mismatched as f64 - c.apply("filler-equivalence", 0.0)).abs(), TimePoint::ONE);
        violations.see((bad as f64 - c.apply("exclusion-jamming-monotone", 0.0)).abs(), TimePoint::ONE);
    }
    Ok(vec![
        bits.check("filler-equivalence", 0.0),
        violations.check("exclusion-jamming-monotone", 0.0),
    ])
}

fn oracle_checks(c: &Corruption) -> Result<Vec<Check>, CliError> {
    let t = tp(0.3);
    let mut out = Vec::new();

    let mut w = Worst::new();
    w.see((exact_center_density(4, t)? - c.apply("oracle-density", density_exact(t))).abs(), t);
    out.push(w.check("oracle-density", window_bound(4, t)));

    let mut w = Worst::new();
    w.see((exact_gamma(3, 2, t)? - c.apply("oracle-gamma", gamma_even_exact(2, t)?)).abs(), t);
    out.push(w.check("oracle-gamma", window_bound(3, t)));

    let mut mismatches = 0u32;
    let half = tp(0.5);
    for n in 1..=7 {
        for_each_order(n, |_, order, occ| {
            let mut times = vec![0.75; n];
            for (rank, &site) in order.iter().enumerate() {
                times[site as usize] = 0.5 * (rank + 1) as f64 / (order.len() + 1) as f64;
            }
            let field = ArrivalField::new(times, Boundary::Free).expect("times in [0, 1]");
            if chronological_fill(&field, half).words()[0] != occ as u64 {
                mismatches += 1;
            }
        })?;
    }
    let mut w = Worst::new();
    w.see((mismatches as f64 - c.apply("oracle-deposition", 0.0)).abs(), half);
    out.push(w.check("oracle-deposition", 0.0));
    Ok(out)
}

fn mc_checks(c: &Corruption, st: &Settings) -> Result<Vec<Check>, CliError> {
    let cfg = st.sim_config();
    let mut out = Vec::new();

    let mut w = Worst::new();
    for row in run_density_mc(&cfg)? {
        w.see(row.estimate.z_score(c.apply("mc-density", density_exact(row.t))), row.t);
    }
    out.push(w.check("mc-density", 4.0));

    let mut w = Worst::new();
    for row in run_correlation_mc(&cfg)? {
        let exact = correlation_exact(row.s as u32, row.t, 1e-15)?.value;
        w.see(row.estimate.z_score(c.apply("mc-correlation", exact)), row.t);
    }
    out.push(w.check("mc-correlation", 4.0));

    let mut gamma = Worst::new();
    let mut partition = Worst::new();
    for s in (2..=st.s_max.max(2)).step_by(2) {
        for row in run_gamma_mc(&cfg, s as usize)? {
            let exact = gamma_even_exact(s, row.t)?;
            gamma.see(row.gamma.z_score(c.apply("mc-gamma", exact)), row.t);
            let residual = (row.residual.mean - c.apply("mc-partition", 0.0)).abs();
            partition.see(residual / row.combined_stderr().max(f64::MIN_POSITIVE), row.t);
        }
    }
    out.push(gamma.check("mc-gamma", 4.0));
    out.push(partition.check("mc-partition", 4.0));
    Ok(out)
}

pub fn run(st: &Settings, corrupt: Option<&str>) -> Result<Vec<Check>, CliError> {
    if let Some(name) = corrupt {
        if !QUICK_CHECKS.contains(&name) && !FULL_CHECKS.contains(&name) {
            return Err(CliError::Usage(format!("unknown check '{name}'")));
        }
    }
    let c = Corruption(corrupt);
    let mut checks = analytic_checks(&c)?;
    checks.extend(simulator_checks(&c, st.seed)?);
    checks.extend(oracle_checks(&c)?);
    if st.level == Level::Full {
        checks.extend(mc_checks(&c, st)?);
    }
    Ok(checks)
}

pub fn table(checks: &[Check]) -> String {
    let mut s = format!("{:<6} {:<28} {:>12} {:>12} {:>6}\n", "status", "check", "worst", "tolerance", "at t");
    for c in checks {
        let status = if c.pass() { "PASS" } else { "FAIL" };
        s += &format!("{status:<6} {:<28} {:>12.3e} {:>12.3e} {:>6.3}\n", c.name, c.value, c.tol, c.t);
    }
    s
}

pub fn records(checks: &[Check]) -> Vec<OutputRecord> {
    checks
        .iter()
        .map(|c| OutputRecord::exact(Quantity::Identity, None, c.t, c.value))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_is_wired() {
        let st = Settings::default();
        let names: Vec<_> = run(&st, None).unwrap().iter().map(|c| c.name).collect();
        assert_eq!(names, QUICK_CHECKS);
    }

    #[test]
    fn corruption_fails_only_its_check() {
        let st = Settings::default();
        for name in ["event-sum", "oracle-deposition", "filler-equivalence"] {
            let checks = run(&st, Some(name)).unwrap();
            let failed: Vec<_> = checks.iter().filter(|c| !c.pass()).map(|c| c.name).collect();
            assert_eq!(failed, [name]);
        }
    }
}
