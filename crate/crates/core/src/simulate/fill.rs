//! Two independent ways of turning an arrival field into a configuration.
//!
//! `chronological_fill` is the literal process: sort the attempts and let each
//! site deposit if both neighbours are still vacant. `run_parity_fill` never
//! sorts. A site `s` that attempted by `t` is occupied exactly when the maximal
//! strictly descending chain of times leaving `s` has even length on both
//! sides: the last site of a chain has no earlier neighbour and deposits, which
//! blocks its predecessor, which frees the one before, and so on back to `s`.
//! Whether a site ends up occupied does not depend on `t` beyond its own
//! attempt, so `omega(t) = omega(1) & [t_s <= t]`.

use super::field::{ArrivalField, Boundary};
use super::occupancy::{word_count, Occupancy};
use crate::time::TimePoint;

/// Maximal strict descent lengths starting at each site.
///
/// `right[s]` counts the sites in `t_s > t_{s+1} > ...`; `left[s]` the sites in
/// `t_s > t_{s-1} > ...`. Equal times are ordered by index, matching the order
/// in which `chronological_fill` processes ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengths {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

pub fn compute_runs(field: &ArrivalField) -> RunLengths {
    let n = field.len();
    let mut left = vec![0u32; n];
    let mut right = vec![0u32; n];
    match field.boundary() {
        Boundary::Free => {
            for s in (0..n.saturating_sub(1)).rev() {
                if field.later(s, s + 1) {
                    right[s] = right[s + 1] + 1;
                }
            }
            for s in 1..n {
                if field.later(s, s - 1) {
                    left[s] = left[s - 1] + 1;
                }
            }
        }
        Boundary::Ring => {
            // No chain can pass through the earliest site, so both sweeps start there.
            let anchor = field.earliest();
            for step in 1..n {
                let s = (anchor + n - step) % n;
                let next = (s + 1) % n;
                if field.later(s, next) {
                    right[s] = right[next] + 1;
                }
            }
            for step in 1..n {
                let s = (anchor + step) % n;
                let prev = (s + n - 1) % n;
                if field.later(s, prev) {
                    left[s] = left[prev] + 1;
                }
            }
        }
    }
    RunLengths { left, right }
}

/// Literal chronological deposition: attempts with `t_s <= t` in increasing
/// `(t_s, s)` order, each succeeding iff both neighbours are vacant.
pub fn chronological_fill(field: &ArrivalField, t: TimePoint) -> Occupancy {
    let threshold = t.get();
    let mut order: Vec<(f64, u32)> = field
        .times()
        .iter()
        .enumerate()
        .filter(|(_, &ts)| ts <= threshold)
        .map(|(i, &ts)| (ts, i as u32))
        .collect();
    order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut occ = Occupancy::empty(field.len(), field.boundary(), t);
    for (_, site) in order {
        let site = site as usize;
        if !occ.neighbour_occupied(site) {
            occ.set(site, true);
        }
    }
    occ
}

#[inline(always)]
fn put(words: &mut [u64], i: usize, bit: bool) {
    words[i >> 6] |= (bit as u64) << (i & 63);
}

#[inline(always)]
fn bit(words: &[u64], i: usize) -> bool {
    (words[i >> 6] >> (i & 63)) & 1 == 1
}

/// Right-to-left sweep over `lo..hi` recording whether each right chain is odd.
/// `next_time`/`next_odd` describe site `hi` (or the free edge).
#[inline]
fn sweep_right(times: &[f64], odd: &mut [u64], lo: usize, hi: usize, mut next_time: f64, mut next_odd: bool) {
    for s in (lo..hi).rev() {
        let ts = times[s];
        // s < s + 1, so a tie is not a descent
        let descends = ts > next_time;
        next_odd = descends & !next_odd;
        put(odd, s, next_odd);
        next_time = ts;
    }
}

/// Left-to-right sweep over `lo..hi` combining the left chain parity with the
/// stored right parities into the occupancy words.
#[inline]
#[allow(clippy::too_many_arguments)]
fn sweep_left(
    times: &[f64],
    right_odd: &[u64],
    out: &mut [u64],
    lo: usize,
    hi: usize,
    threshold: f64,
    mut prev_time: f64,
    mut prev_odd: bool,
) -> bool {
    for s in lo..hi {
        let ts = times[s];
        // s > s - 1, so a tie is a descent
        let descends = ts >= prev_time;
        prev_odd = descends & !prev_odd;
        put(out, s, (ts <= threshold) & !prev_odd & !bit(right_odd, s));
        prev_time = ts;
    }
    prev_odd
}

/// Occupancy at time `t` by the run-parity rule: two linear sweeps, no sort.
pub fn run_parity_fill(field: &ArrivalField, t: TimePoint) -> Occupancy {
    let times = field.times();
    let n = times.len();
    let threshold = t.get();
    let mut right_odd = vec![0u64; word_count(n)];
    let mut out = vec![0u64; word_count(n)];
    match field.boundary() {
        Boundary::Free => {
            sweep_right(times, &mut right_odd, 0, n, f64::INFINITY, false);
            sweep_left(times, &right_odd, &mut out, 0, n, threshold, f64::INFINITY, false);
        }
        Boundary::Ring => {
            let m = field.earliest();
            // right chains: m-1 down to 0, then the seam site n-1, then n-2 down to m+1
            sweep_right(times, &mut right_odd, 0, m, times[m], false);
            if m != n - 1 {
                // n-1 > 0, so a tie across the seam is a descent
                let odd = (times[n - 1] >= times[0]) & !bit(&right_odd, 0);
                put(&mut right_odd, n - 1, odd);
                sweep_right(times, &mut right_odd, m + 1, n - 1, times[n - 1], odd);
            }
            // left chains: m itself, m+1 up to n-1, then the seam site 0, then 1 up to m-1
            put(&mut out, m, (times[m] <= threshold) & !bit(&right_odd, m));
            let odd_last = sweep_left(times, &right_odd, &mut out, m + 1, n, threshold, times[m], false);
            if m != 0 {
                let odd0 = (times[0] > times[n - 1]) & !odd_last;
                put(&mut out, 0, (times[0] <= threshold) & !odd0 & !bit(&right_odd, 0));
                sweep_left(times, &right_odd, &mut out, 1, m, threshold, times[0], odd0);
            }
        }
    }
    Occupancy::from_words(out, n, field.boundary(), t)
}

/// Final (jammed) configuration; equal to `run_parity_fill(field, 1)`.
pub fn jammed(field: &ArrivalField) -> Occupancy {
    run_parity_fill(field, TimePoint::ONE)
}

/// Restricts a jammed configuration to the sites that attempted by `t`.
pub fn occupancy_at(field: &ArrivalField, jammed: &Occupancy, t: TimePoint) -> Occupancy {
    debug_assert_eq!(field.len(), jammed.len());
    let threshold = t.get();
    let mut words = jammed.words().to_vec();
    for (w, word) in words.iter_mut().enumerate() {
        if *word == 0 {
            continue;
        }
        let base = w * 64;
        let mut keep = 0u64;
        let mut rest = *word;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            keep |= ((field.times()[base + k] <= threshold) as u64) << k;
            rest &= rest - 1;
        }
        *word = keep;
    }
    Occupancy::from_words(words, field.len(), field.boundary(), t)
}
