//! Closed forms and series for the density, the pair correlation and every
//! intermediate event probability of the one-dimensional nearest-neighbour
//! exclusion process.
//!
//! Notation used below: `H(-m, n)` is the event that the origin attempts before
//! `t` and its times descend strictly for `m` sites to the left and `n` sites to
//! the right; `G(j, k)` is the event that those descents have exact lengths
//! `2j` and `2k`. The `G(j, k)` partition the event "origin occupied".

use crate::error::{Error, Result};
use crate::series::{exp_partial, odd_partial, pow_over_factorial, SeriesValue};
use crate::time::TimePoint;

/// Occupied-site density at time `t`: `(1 - e^{-2t}) / 2`.
pub fn density_exact(t: TimePoint) -> f64 {
    -0.5 * (-2.0 * t.get()).exp_m1()
}

/// Pair correlation `C_s(t) = Cov(omega_0, omega_s)` at time `t`,
/// `-1/2 e^{-2t} sum_{n>=0} (-2t)^{2n+s+1} / (2n+s+1)!`, summed until the
/// discarded tail is provably below `tol`.
///
/// All terms of the series share one sign, and from the second term on the
/// ratio of consecutive magnitudes is at most `(2t)^2 / ((m+1)(m+2)) <= 1/5`, so
/// the tail after the last kept term is bounded by a geometric series.
pub fn correlation_exact(s: u32, t: TimePoint, tol: f64) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let x = -2.0 * t.get();
    let prefactor = 0.5 * x.exp();
    let mut order = s + 1;
    let mut term = pow_over_factorial(x, order);
    let mut sum = 0.0;
    let mut terms_used = 0;
    loop {
        sum += term;
        terms_used += 1;
        let next = term * x * x / ((order + 1) as f64 * (order + 2) as f64);
        order += 2;
        let ratio = x * x / ((order + 1) as f64 * (order + 2) as f64);
        let bound = prefactor * next.abs() / (1.0 - ratio);
        if bound <= tol || next == 0.0 {
            return Ok(SeriesValue {
                value: -prefactor * sum,
                truncation_bound: bound,
                terms_used,
            });
        }
        term = next;
    }
}

/// Probability `p_s(t)` that the origin and site `s` are both occupied.
pub fn pair_occupied_exact(s: u32, t: TimePoint, tol: f64) -> Result<SeriesValue> {
    let c = correlation_exact(s, t, tol)?;
    if s == 0 {
        return Ok(SeriesValue {
            value: density_exact(t),
            ..c
        });
    }
    if s == 1 {
        // exclusion; the series sum only cancels to rounding
        return Ok(SeriesValue { value: 0.0, ..c });
    }
    let rho = density_exact(t);
    Ok(SeriesValue {
        value: c.value + rho * rho,
        ..c
    })
}

fn require_even(s: u32) -> Result<()> {
    if s >= 2 && s % 2 == 0 {
        Ok(())
    } else {
        Err(Error::OddSeparation(s))
    }
}

/// `gamma_s(t)`: probability that sites -1 and 0 are vacant while site `s` is
/// occupied. The closed form is only established for even `s`.
pub fn gamma_even_exact(s: u32, t: TimePoint) -> Result<f64> {
    require_even(s)?;
    let t = t.get();
    Ok(-0.5 * (-2.0 * t).exp() * exp_partial(-2.0 * t, 1, s))
}

/// `P(H(-m), H(n)) = t^{m+n+1} / (m! n! (m+n+1))`.
pub fn h_pair_prob(m: u32, n: u32, t: TimePoint) -> f64 {
    let t = t.get();
    pow_over_factorial(t, m) * pow_over_factorial(t, n) * t / (m as f64 + n as f64 + 1.0)
}

/// `P_jk(t) = P(G(j, k))` by inclusion-exclusion over the two terminating ascents.
pub fn g_event_prob(j: u32, k: u32, t: TimePoint) -> f64 {
    let (l, r) = (2 * j, 2 * k);
    h_pair_prob(l, r, t) - h_pair_prob(l, r + 1, t) - h_pair_prob(l + 1, r, t)
        + h_pair_prob(l + 1, r + 1, t)
}

/// `I_k(t) = sum_j P_jk(t) = t^{2k+1} / (2k+1)! * e^{-t}`.
pub fn i_k(k: u32, t: TimePoint) -> f64 {
    pow_over_factorial(t.get(), 2 * k + 1) * (-t.get()).exp()
}

/// `P(B_k(t))`, a strict descent `t > t_0 > ... > t_{2k+1}` closed by an ascent.
pub fn b_run_prob(k: u32, t: TimePoint) -> f64 {
    let t = t.get();
    pow_over_factorial(t, 2 * k + 2) - pow_over_factorial(t, 2 * k + 3)
}

/// Upper summation limit used for the last sum in `gamma_{s,4}`.
///
/// `Half` is `(s-4)/2`, the limit of the matching sum in `gamma_{s,2}`, and
/// the only reading under which the four components add up to `gamma_s`.
/// `Quarter` is `floor((s-2)/4)`, kept to demonstrate that it does not; the
/// two differ at `s = 2` and every `s >= 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gamma4Limit {
    #[default]
    Half,
    Quarter,
}

impl Gamma4Limit {
    fn upper(self, s: u32) -> i64 {
        let s = s as i64;
        match self {
            Gamma4Limit::Half => (s - 4).div_euclid(2),
            Gamma4Limit::Quarter => (s - 2) / 4,
        }
    }
}

/// Component `gamma_{s,i}`, `i` in 1..=4, splitting `gamma_s` by whether
/// sites -1 and 0 attempted before `t`:
/// 1: neither, 2: both, 3: only -1, 4: only 0.
pub fn gamma_component(i: u8, s: u32, t: TimePoint) -> Result<f64> {
    gamma_component_with(i, s, t, Gamma4Limit::Half)
}

pub fn gamma_component_with(i: u8, s: u32, t: TimePoint, limit: Gamma4Limit) -> Result<f64> {
    if !(1..=4).contains(&i) {
        return Err(Error::InvalidComponent(i));
    }
    require_even(s)?;
    let tv = t.get();
    let e = (-tv).exp();
    let one_minus = 1.0 - tv;
    // sum_k P(B_k) = e^{-t} - 1 + t
    let b_total = (-tv).exp_m1() + tv;
    let half = (s as i64 - 2) / 2;
    let odd_sum = odd_partial(tv, 0, half);
    let alt = exp_partial(-2.0 * tv, 3, s);
    // sum_{i=0}^{u} t^{2i+3}/(2i+3)!
    let cube_sum = |u: i64| odd_partial(tv, 1, u + 1);
    let value = match i {
        1 => one_minus * one_minus * e * odd_sum,
        2 => -b_total * e * (0.5 * alt + one_minus * cube_sum((s as i64 - 4).div_euclid(2))),
        3 => one_minus * b_total * e * odd_sum,
        _ => -one_minus * e * (0.5 * alt + one_minus * cube_sum(limit.upper(s))),
    };
    Ok(value)
}

/// Both sides of the `S_1 - S_2` simplification used for `gamma_{s,2}`:
/// `(direct, simplified)` where `direct` evaluates the raw double sums and
/// `simplified` the collapsed single sums.
pub fn s1_s2_identity(r: u32, t: TimePoint) -> Result<(f64, f64)> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("r must be at least 2, got {r}")));
    }
    let tv = t.get();
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for k in 0..=r - 2 {
        for l in 0..=r - k - 2 {
            let left = pow_over_factorial(tv, 2 * l + 1);
            s1 += left * pow_over_factorial(tv, 2 * k + 2);
            s2 += left * pow_over_factorial(tv, 2 * k + 3);
        }
    }
    let direct = s1 - s2;
    let simplified = -0.5 * exp_partial(-2.0 * tv, 3, 2 * r) - (1.0 - tv) * odd_partial(tv, 1, r as i64 - 1);
    Ok((direct, simplified))
}

/// `C_{r+1}(t) + C_r(t) = -1/2 e^{-2t} (e^{-2t} - sum_{i=0}^{r} (-2t)^i / i!)`.
pub fn tail_sum(r: u32, t: TimePoint) -> f64 {
    let x = -2.0 * t.get();
    let e = x.exp();
    -0.5 * e * (e - exp_partial(x, 0, r))
}

/// `sum_{n=0}^{terms} [tail_sum(s+2n) - tail_sum(s+2n+1)]`, which telescopes to
/// `C_s - C_{s+2 terms+2}` and so converges to `C_s`.
pub fn telescope_partial(s: u32, t: TimePoint, terms: u32) -> Result<f64> {
    if terms == 0 {
        return Err(Error::InvalidArgument("telescope needs at least one term".into()));
    }
    Ok((0..=terms)
        .map(|n| tail_sum(s + 2 * n, t) - tail_sum(s + 2 * n + 1, t))
        .sum())
}
