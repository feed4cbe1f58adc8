use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A deposition time in `[0, 1]`.
///
/// Each site attempts exactly once at a uniform time in the unit interval,
/// so every time-dependent quantity is only defined on this range.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct TimePoint(f64);

impl TimePoint {
    pub const ZERO: TimePoint = TimePoint(0.0);
    pub const ONE: TimePoint = TimePoint(1.0);

    pub fn new(t: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&t) {
            Ok(TimePoint(t))
        } else {
            Err(Error::TimeOutOfRange(t))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for TimePoint {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        TimePoint::new(t)
    }
}

impl From<TimePoint> for f64 {
    fn from(t: TimePoint) -> f64 {
        t.0
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `n` evenly spaced points `1/n, 2/n, ..., 1`.
pub fn uniform_grid(n: usize) -> Vec<TimePoint> {
    (1..=n).map(|i| TimePoint(i as f64 / n as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(TimePoint::new(-1e-300).is_err());
        assert!(TimePoint::new(1.0 + f64::EPSILON).is_err());
        assert!(TimePoint::new(f64::NAN).is_err());
        assert!(TimePoint::new(0.0).is_ok());
        assert!(TimePoint::new(1.0).is_ok());
    }

    #[test]
    fn grid_ends_at_one() {
        let g = uniform_grid(10);
        assert_eq!(g.len(), 10);
        assert_eq!(g[9].get(), 1.0);
        assert!((g[0].get() - 0.1).abs() < 1e-15);
    }
}
