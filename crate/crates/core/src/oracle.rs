//! Exact event probabilities on small free windows by brute-force enumeration.
//!
//! Given `t`, each site of an `n`-site window independently attempts before
//! `t` with probability `t`, and conditional on the attempting set `S` all
//! `|S|!` attempt orders are equally likely. Enumerating every (subset, order)
//! pair and replaying the deposition gives the exact law of the configuration
//! at time `t` on the window, with no appeal to any series or run argument.
//!
//! Subsets are visited by size, then lexicographically by their sorted site
//! lists; orders within a subset lexicographically. The order is fixed so that
//! failures are reproducible.

use crate::error::{Error, Result};
use crate::series::pow_over_factorial;
use crate::time::TimePoint;

/// Largest window the enumerator accepts (about 10^7 orders at n = 10).
pub const MAX_WINDOW: usize = 10;

/// A single per-site requirement in a [`PatternSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Occupied,
    Vacant,
    /// The site's time is at most `t`.
    Attempted,
    /// The site's time exceeds `t`.
    NotAttempted,
}

impl Atom {
    fn is_occupancy(self) -> bool {
        matches!(self, Atom::Occupied | Atom::Vacant)
    }
}

impl std::str::FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "occupied" | "1" => Ok(Atom::Occupied),
            "vacant" | "0" => Ok(Atom::Vacant),
            "attempted" => Ok(Atom::Attempted),
            "not-attempted" => Ok(Atom::NotAttempted),
            other => Err(Error::InvalidArgument(format!("unknown atom '{other}'"))),
        }
    }
}

/// A conjunction of per-site constraints, sites indexed from the left end of
/// the window.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternSpec {
    constraints: Vec<(usize, Atom)>,
}

/// A pattern reduced to bit masks over the window.
#[derive(Debug, Clone, Copy, Default)]
struct Masks {
    occupied: u16,
    vacant: u16,
    attempted: u16,
    not_attempted: u16,
}

impl PatternSpec {
    pub fn new(constraints: Vec<(usize, Atom)>) -> Result<Self> {
        let spec = PatternSpec { constraints };
        for (i, &(site, atom)) in spec.constraints.iter().enumerate() {
            for &(other_site, other) in &spec.constraints[..i] {
                if other_site == site && other.is_occupancy() == atom.is_occupancy() {
                    return Err(Error::InconsistentPattern(format!(
                        "site {site} constrained twice ({other:?}, {atom:?})"
                    )));
                }
            }
        }
        let occupied_unattempted = spec.constraints.iter().any(|&(site, atom)| {
            atom == Atom::Occupied && spec.constraints.contains(&(site, Atom::NotAttempted))
        });
        if occupied_unattempted {
            return Err(Error::InconsistentPattern(
                "a site that never attempts cannot be occupied".into(),
            ));
        }
        Ok(spec)
    }

    pub fn constraints(&self) -> &[(usize, Atom)] {
        &self.constraints
    }

    /// Same constraints with every occupancy atom flipped. Only meaningful as
    /// a complement for single-atom patterns.
    pub fn negated_occupancy(&self) -> PatternSpec {
        let constraints = self
            .constraints
            .iter()
            .map(|&(site, atom)| {
                let flipped = match atom {
                    Atom::Occupied => Atom::Vacant,
                    Atom::Vacant => Atom::Occupied,
                    Atom::Attempted => Atom::NotAttempted,
                    Atom::NotAttempted => Atom::Attempted,
                };
                (site, flipped)
            })
            .collect();
        PatternSpec { constraints }
    }

    fn masks(&self, n: usize) -> Result<Masks> {
        let mut m = Masks::default();
        for &(site, atom) in &self.constraints {
            if site >= n {
                return Err(Error::InvalidArgument(format!(
                    "pattern site {site} outside window of {n} sites"
                )));
            }
            let bit = 1u16 << site;
            match atom {
                Atom::Occupied => m.occupied |= bit,
                Atom::Vacant => m.vacant |= bit,
                Atom::Attempted => m.attempted |= bit,
                Atom::NotAttempted => m.not_attempted |= bit,
            }
        }
        Ok(m)
    }
}

fn check_window(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyLattice)
    } else if n > MAX_WINDOW {
        Err(Error::WindowTooLarge(n))
    } else {
        Ok(())
    }
}

/// All attempt subsets of an `n`-site window in enumeration order.
fn subsets(n: usize) -> Vec<u16> {
    let mut all: Vec<u16> = (0..1u32 << n).map(|m| m as u16).collect();
    all.sort_by_key(|&m| {
        let sites: Vec<u32> = (0..n as u32).filter(|&i| m >> i & 1 == 1).collect();
        (m.count_ones(), sites)
    });
    all
}

/// Deposits `site` into the free-boundary window configuration `occ` if both
/// neighbours are vacant.
#[inline]
pub fn deposit(occ: u16, site: usize, n: usize) -> u16 {
    let left = site > 0 && occ >> (site - 1) & 1 == 1;
    let right = site + 1 < n && occ >> (site + 1) & 1 == 1;
    if left || right {
        occ
    } else {
        occ | 1 << site
    }
}

/// Final window configuration after the attempts in `order`.
pub fn deposit_in_order(n: usize, order: &[u8]) -> u16 {
    order.iter().fold(0, |occ, &s| deposit(occ, s as usize, n))
}

struct Walker<'a, F> {
    n: usize,
    members: Vec<u8>,
    used: u16,
    order: Vec<u8>,
    visit: &'a mut F,
}

impl<F: FnMut(&[u8], u16)> Walker<'_, F> {
    fn descend(&mut self, occ: u16) {
        if self.order.len() == self.members.len() {
            (self.visit)(&self.order, occ);
            return;
        }
        for idx in 0..self.members.len() {
            if self.used >> idx & 1 == 1 {
                continue;
            }
            let site = self.members[idx];
            self.used |= 1 << idx;
            self.order.push(site);
            self.descend(deposit(occ, site as usize, self.n));
            self.order.pop();
            self.used &= !(1 << idx);
        }
    }
}

/// Visits every attempting subset and every order of it, passing the subset
/// mask, the order, and the resulting configuration.
pub fn for_each_order<F: FnMut(u16, &[u8], u16)>(n: usize, mut visit: F) -> Result<()> {
    check_window(n)?;
    for mask in subsets(n) {
        let mut per_order = |order: &[u8], occ: u16| visit(mask, order, occ);
        walk_subset(n, mask, &mut per_order);
    }
    Ok(())
}

fn walk_subset<F: FnMut(&[u8], u16)>(n: usize, mask: u16, visit: &mut F) {
    let members: Vec<u8> = (0..n as u8).filter(|&i| mask >> i & 1 == 1).collect();
    let mut walker = Walker {
        n,
        order: Vec::with_capacity(members.len()),
        members,
        used: 0,
        visit,
    };
    walker.descend(0);
}

/// Exact probability that the configuration at time `t` on a free window of
/// `n` sites satisfies `pattern`.
pub fn exact_pattern_prob(n: usize, t: TimePoint, pattern: &PatternSpec) -> Result<f64> {
    check_window(n)?;
    let m = pattern.masks(n)?;
    let t = t.get();
    let mut total = 0.0;
    for mask in subsets(n) {
        if mask & m.attempted != m.attempted || mask & m.not_attempted != 0 {
            continue;
        }
        let k = mask.count_ones();
        let weight = t.powi(k as i32) * (1.0 - t).powi((n as u32 - k) as i32);
        if weight == 0.0 {
            continue;
        }
        let mut hits = 0u64;
        walk_subset(n, mask, &mut |_: &[u8], occ: u16| {
            if occ & m.occupied == m.occupied && occ & m.vacant == 0 {
                hits += 1;
            }
        });
        // hits / k!
        total += weight * hits as f64 * pow_over_factorial(1.0, k);
    }
    Ok(total)
}

/// Truncation bound `2 t^{r+1} / (r+1)!` for a site `r` or more sites away
/// from both window edges.
pub fn window_bound(radius: usize, t: TimePoint) -> f64 {
    2.0 * pow_over_factorial(t.get(), radius as u32 + 1)
}

/// Probability that the centre of a `2 radius + 1` window is occupied, an
/// approximation of the infinite-lattice density within [`window_bound`].
pub fn exact_center_density(radius: usize, t: TimePoint) -> Result<f64> {
    if radius == 0 {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let pattern = PatternSpec::new(vec![(radius, Atom::Occupied)])?;
    exact_pattern_prob(2 * radius + 1, t, &pattern)
}

/// Probability that site 0 and site `s` are both occupied, on the window
/// `-radius ..= s+radius`. Within `2 window_bound` of `p_s`.
pub fn exact_pair(radius: usize, s: usize, t: TimePoint) -> Result<f64> {
    if radius == 0 {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let n = s + 1 + 2 * radius;
    check_window(n)?;
    if s == 0 {
        return exact_pattern_prob(n, t, &PatternSpec::new(vec![(radius, Atom::Occupied)])?);
    }
    let pattern = PatternSpec::new(vec![(radius, Atom::Occupied), (radius + s, Atom::Occupied)])?;
    exact_pattern_prob(n, t, &pattern)
}

/// Probability that sites -1 and 0 are vacant and site `s` occupied, on the
/// window `-1-radius ..= s+radius`.
pub fn exact_gamma(radius: usize, s: usize, t: TimePoint) -> Result<f64> {
    if radius == 0 {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    if s < 2 || s % 2 != 0 {
        return Err(Error::OddSeparation(s as u32));
    }
    let n = s + 2 + 2 * radius;
    check_window(n)?;
    // window index of site 0
    let origin = radius + 1;
    let pattern = PatternSpec::new(vec![
        (origin - 1, Atom::Vacant),
        (origin, Atom::Vacant),
        (origin + s, Atom::Occupied),
    ])?;
    exact_pattern_prob(n, t, &pattern)
}
