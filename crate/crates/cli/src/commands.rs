//! Record producers for the `density`, `correlation`, `gamma`, `oracle` and
//! `sweep` subcommands.

use adsorb_core::analytic::{correlation_exact, density_exact, gamma_even_exact, pair_occupied_exact};
use adsorb_core::montecarlo::{run_correlation_mc, run_density_mc, run_gamma_mc};
use adsorb_core::oracle::{exact_center_density, exact_gamma, exact_pair, MAX_WINDOW};

use crate::record::{OutputRecord, Quantity, Source};
use crate::settings::Settings;
use crate::CliError;

pub fn density(st: &Settings) -> Result<Vec<OutputRecord>, CliError> {
    match st.source {
        Source::Exact => Ok(st
            .t
            .iter()
            .map(|&t| OutputRecord::exact(Quantity::Density, None, t.get(), density_exact(t)))
            .collect()),
        Source::Oracle => st
            .t
            .iter()
            .map(|&t| {
                let v = exact_center_density(st.radius, t)?;
                Ok(OutputRecord::oracle(Quantity::Density, None, t.get(), v))
            })
            .collect(),
        Source::Mc => Ok(run_density_mc(&st.sim_config())?
            .into_iter()
            .map(|row| OutputRecord::mc(Quantity::Density, None, row.t.get(), row.estimate))
            .collect()),
    }
}

/// `C_s` for `s = 0..=s_max`, ordered by time then `s`.
pub fn correlation(st: &Settings) -> Result<Vec<OutputRecord>, CliError> {
    let mut out = Vec::new();
    match st.source {
        Source::Exact => {
            for &t in &st.t {
                for s in 0..=st.s_max {
                    let v = correlation_exact(s, t, st.tol)?.value;
                    out.push(OutputRecord::exact(Quantity::Correlation, Some(s), t.get(), v));
                }
            }
        }
        Source::Oracle => {
            for &t in &st.t {
                let rho = exact_center_density(st.radius, t)?;
                for s in 0..=st.s_max {
                    let v = exact_pair(st.radius, s as usize, t)? - rho * rho;
                    out.push(OutputRecord::oracle(Quantity::Correlation, Some(s), t.get(), v));
                }
            }
        }
        Source::Mc => {
            for row in run_correlation_mc(&st.sim_config())? {
                out.push(OutputRecord::mc(Quantity::Correlation, Some(row.s as u32), row.t.get(), row.estimate));
            }
        }
    }
    Ok(out)
}

fn even_separations(st: &Settings) -> Result<Vec<u32>, CliError> {
    if st.s_max < 2 {
        return Err(CliError::Usage(format!("gamma needs --s-max >= 2, got {}", st.s_max)));
    }
    Ok((2..=st.s_max).step_by(2).collect())
}

/// `gamma_s` for even `s` in `2..=s_max`, ordered by `s` then time.
pub fn gamma(st: &Settings) -> Result<Vec<OutputRecord>, CliError> {
    let mut out = Vec::new();
    for s in even_separations(st)? {
        match st.source {
            Source::Exact => {
                for &t in &st.t {
                    out.push(OutputRecord::exact(Quantity::Gamma, Some(s), t.get(), gamma_even_exact(s, t)?));
                }
            }
            Source::Oracle => {
                for &t in &st.t {
                    let v = exact_gamma(st.radius, s as usize, t)?;
                    out.push(OutputRecord::oracle(Quantity::Gamma, Some(s), t.get(), v));
                }
            }
            Source::Mc => {
                for row in run_gamma_mc(&st.sim_config(), s as usize)? {
                    out.push(OutputRecord::mc(Quantity::Gamma, Some(s), row.t.get(), row.gamma));
                }
            }
        }
    }
    Ok(out)
}

/// Largest radius not above `wanted` whose window of `fixed + 2r` sites fits
/// the enumeration limit.
fn fitting_radius(wanted: usize, fixed: usize) -> Option<usize> {
    let r = wanted.min(MAX_WINDOW.saturating_sub(fixed) / 2);
    (r >= 1).then_some(r)
}

fn note(list: &mut Vec<String>, item: String) {
    if !list.contains(&item) {
        list.push(item);
    }
}

/// Oracle values next to their exact counterparts: density, `p_s` for
/// `1..=s_max` and `gamma_s` for even `s`. Each quantity uses the largest
/// radius up to `--radius` that fits; quantities that fit no window are
/// skipped with a note on stderr.
pub fn oracle(st: &Settings) -> Result<Vec<OutputRecord>, CliError> {
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for &t in &st.t {
        let tv = t.get();
        if let Some(r) = fitting_radius(st.radius, 1) {
            out.push(OutputRecord::oracle(Quantity::Density, None, tv, exact_center_density(r, t)?));
            out.push(OutputRecord::exact(Quantity::Density, None, tv, density_exact(t)));
        }
        for s in 1..=st.s_max {
            match fitting_radius(st.radius, s as usize + 1) {
                Some(r) => {
                    out.push(OutputRecord::oracle(Quantity::PPair, Some(s), tv, exact_pair(r, s as usize, t)?));
                    let exact = pair_occupied_exact(s, t, st.tol)?.value;
                    out.push(OutputRecord::exact(Quantity::PPair, Some(s), tv, exact));
                }
                None => note(&mut skipped, format!("p_pair s={s}")),
            }
            if s % 2 == 0 {
                match fitting_radius(st.radius, s as usize + 2) {
                    Some(r) => {
                        out.push(OutputRecord::oracle(Quantity::Gamma, Some(s), tv, exact_gamma(r, s as usize, t)?));
                        out.push(OutputRecord::exact(Quantity::Gamma, Some(s), tv, gamma_even_exact(s, t)?));
                    }
                    None => note(&mut skipped, format!("gamma s={s}")),
                }
            }
        }
    }
    if !skipped.is_empty() {
        eprintln!("skipped (window exceeds {MAX_WINDOW} sites): {}", skipped.join(", "));
    }
    Ok(out)
}

/// Density, correlations and gamma from one source over the whole grid.
pub fn sweep(st: &Settings) -> Result<Vec<OutputRecord>, CliError> {
    let mut out = density(st)?;
    out.extend(correlation(st)?);
    if st.s_max >= 2 {
        out.extend(gamma(st)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_fitting() {
        assert_eq!(fitting_radius(4, 1), Some(4));
        assert_eq!(fitting_radius(4, 4), Some(3));
        assert_eq!(fitting_radius(2, 4), Some(2));
        assert_eq!(fitting_radius(4, 9), None);
    }
}
