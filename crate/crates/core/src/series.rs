//! Factorial helpers and the truncated-series result type.
//!
//! Factorials up to 170! are tabulated from a running product; anything
//! larger would overflow `f64` and is handled in log space.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// Largest `n` with `n!` finite in `f64`.
pub const MAX_DIRECT_FACTORIAL: u32 = 170;

fn factorial_table() -> &'static [f64; 171] {
    static TABLE: OnceLock<[f64; 171]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [1.0f64; 171];
        for n in 1..table.len() {
            table[n] = table[n - 1] * n as f64;
        }
        table
    })
}

/// `n!` as a float. Returns `+inf` beyond 170.
#[inline]
pub fn factorial(n: u32) -> f64 {
    if n <= MAX_DIRECT_FACTORIAL {
        factorial_table()[n as usize]
    } else {
        f64::INFINITY
    }
}

/// `ln(n!)`, exact table lookup up to 170 and a Stirling series beyond.
pub fn ln_factorial(n: u32) -> f64 {
    if n <= MAX_DIRECT_FACTORIAL {
        return factorial(n).ln();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Stirling with three correction terms; relative error well below 1e-16 for x > 170.
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0))
}

/// `x^n / n!` without intermediate overflow.
pub fn pow_over_factorial(x: f64, n: u32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    if n <= MAX_DIRECT_FACTORIAL {
        let p = x.powi(n as i32);
        if p.is_finite() {
            return p / factorial(n);
        }
    }
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    sign * (n as f64 * x.abs().ln() - ln_factorial(n)).exp()
}

/// Sum of `x^i / i!` for `i` in `lo..=hi` (empty when `lo > hi`).
pub fn exp_partial(x: f64, lo: u32, hi: u32) -> f64 {
    if lo > hi {
        return 0.0;
    }
    let mut term = pow_over_factorial(x, lo);
    let mut sum = term;
    for i in lo + 1..=hi {
        term *= x / i as f64;
        sum += term;
    }
    sum
}

/// Odd-power partial sum: `sum_{i=lo}^{hi} x^(2i+1) / (2i+1)!`.
pub fn odd_partial(x: f64, lo: i64, hi: i64) -> f64 {
    (lo.max(0)..=hi).map(|i| pow_over_factorial(x, (2 * i + 1) as u32)).sum()
}

/// A finite partial sum of a convergent series with a rigorous bound on the
/// discarded tail: the true value lies in `value ± truncation_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub truncation_bound: f64,
    pub terms_used: u32,
}

impl SeriesValue {
    pub fn exact(value: f64) -> Self {
        SeriesValue {
            value,
            truncation_bound: 0.0,
            terms_used: 0,
        }
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (self.value - x).abs() <= self.truncation_bound + slack
    }
}
