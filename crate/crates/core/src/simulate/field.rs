use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the ends of a finite lattice are joined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Sites `0` and `N-1` have a single neighbour; the missing one is
    /// permanently vacant.
    Free,
    /// Site `N-1` neighbours site `0`.
    #[default]
    Ring,
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Boundary::Free),
            "ring" => Ok(Boundary::Ring),
            other => Err(Error::InvalidArgument(format!("unknown boundary '{other}'"))),
        }
    }
}

/// One deposition time per site, each in `[0, 1]`.
///
/// Ties between times are legal; every filler breaks them by site index
/// (the lower index attempts first).
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalField {
    times: Vec<f64>,
    boundary: Boundary,
}

impl ArrivalField {
    pub fn new(times: Vec<f64>, boundary: Boundary) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::EmptyLattice);
        }
        if boundary == Boundary::Ring && times.len() < 3 {
            return Err(Error::RingTooSmall(times.len()));
        }
        if let Some((site, &value)) = times
            .iter()
            .enumerate()
            .find(|(_, t)| !(0.0..=1.0).contains(*t))
        {
            return Err(Error::InvalidArrivalTime { site, value });
        }
        Ok(ArrivalField { times, boundary })
    }

    /// Draws `n` i.i.d. uniform times.
    pub fn random<R: Rng + ?Sized>(n: usize, boundary: Boundary, rng: &mut R) -> Result<Self> {
        let times = (0..n).map(|_| rng.gen::<f64>()).collect();
        Self::new(times, boundary)
    }

    /// Refills `self` in place with fresh uniform times, keeping the allocation.
    pub fn resample<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for t in &mut self.times {
            *t = rng.gen::<f64>();
        }
    }

    #[inline]
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    #[inline]
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.times.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn into_times(self) -> Vec<f64> {
        self.times
    }

    /// Whether site `a` attempts after site `b`, ties broken by index.
    #[inline]
    pub(crate) fn later(&self, a: usize, b: usize) -> bool {
        let (ta, tb) = (self.times[a], self.times[b]);
        ta > tb || (ta == tb && a > b)
    }

    /// Site that attempts first.
    pub(crate) fn earliest(&self) -> usize {
        let mut best = 0;
        for (i, &t) in self.times.iter().enumerate().skip(1) {
            if t < self.times[best] {
                best = i;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(ArrivalField::new(vec![], Boundary::Free), Err(Error::EmptyLattice));
        assert_eq!(ArrivalField::new(vec![0.1, 0.2], Boundary::Ring), Err(Error::RingTooSmall(2)));
        assert!(ArrivalField::new(vec![0.1, 0.2], Boundary::Free).is_ok());
        assert!(matches!(
            ArrivalField::new(vec![0.1, f64::NAN, 0.3], Boundary::Ring),
            Err(Error::InvalidArrivalTime { site: 1, .. })
        ));
        assert!(ArrivalField::new(vec![0.1, 1.5], Boundary::Free).is_err());
        assert!(ArrivalField::new(vec![0.0, 1.0], Boundary::Free).is_ok());
    }

    #[test]
    fn earliest_breaks_ties_by_index() {
        let f = ArrivalField::new(vec![0.5, 0.2, 0.7, 0.2], Boundary::Ring).unwrap();
        assert_eq!(f.earliest(), 1);
        assert!(f.later(3, 1));
        assert!(!f.later(1, 3));
    }

    #[test]
    fn boundary_parse() {
        assert_eq!("ring".parse::<Boundary>().unwrap(), Boundary::Ring);
        assert_eq!("free".parse::<Boundary>().unwrap(), Boundary::Free);
        assert!("torus".parse::<Boundary>().is_err());
    }
}
