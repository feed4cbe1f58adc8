use serde::{Deserialize, Serialize};

/// Mean of independent replica values with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl Estimate {
    /// Sample mean and `sqrt(var / n)` with the unbiased variance. Values are
    /// summed in slice order so the result does not depend on how they were
    /// produced.
    pub fn from_samples(values: &[f64]) -> Self {
        let n = values.len();
        assert!(n >= 2, "an estimate needs at least two replicas");
        let mean = values.iter().sum::<f64>() / n as f64;
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        let var = ss / (n - 1) as f64;
        Estimate {
            mean,
            stderr: (var / n as f64).sqrt(),
            samples: n,
        }
    }

    /// `|mean - target| <= k * stderr`.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr
    }

    /// Distance from `target` in standard errors (infinite if the estimate is
    /// exact and wrong, zero if exact and right).
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_stderr() {
        let e = Estimate::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        // var = 5/3, stderr = sqrt(5/12)
        assert!((e.stderr - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert_eq!(e.samples, 4);
    }

    #[test]
    fn constant_samples() {
        let e = Estimate::from_samples(&[0.0; 8]);
        assert_eq!((e.mean, e.stderr), (0.0, 0.0));
        assert!(e.agrees_with(0.0, 4.0));
        assert_eq!(e.z_score(0.0), 0.0);
        assert!(e.z_score(1.0).is_infinite());
    }
}
