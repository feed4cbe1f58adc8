//! Bit-packed lattice configurations.

use std::fmt;

use super::field::Boundary;
use crate::time::TimePoint;

/// Occupied sites of a lattice at a given time, one bit per site.
///
/// Bits past `len` in the last word are always zero.
#[derive(Clone, PartialEq)]
pub struct Occupancy {
    words: Vec<u64>,
    len: usize,
    boundary: Boundary,
    threshold: TimePoint,
}

#[inline]
pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Occupancy {
    pub fn empty(len: usize, boundary: Boundary, threshold: TimePoint) -> Self {
        Occupancy {
            words: vec![0; word_count(len)],
            len,
            boundary,
            threshold,
        }
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize, boundary: Boundary, threshold: TimePoint) -> Self {
        debug_assert_eq!(words.len(), word_count(len));
        let mut occ = Occupancy {
            words,
            len,
            boundary,
            threshold,
        };
        occ.clear_tail();
        occ
    }

    pub fn from_bools(bits: &[bool], boundary: Boundary, threshold: TimePoint) -> Self {
        let mut occ = Occupancy::empty(bits.len(), boundary, threshold);
        for (i, &b) in bits.iter().enumerate() {
            occ.set(i, b);
        }
        occ
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    #[inline]
    pub fn threshold(&self) -> TimePoint {
        self.threshold
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn density(&self) -> f64 {
        self.count_ones() as f64 / self.len as f64
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Occupancy as a `0`/`1` vector, handy for assertions.
    pub fn to_u8(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Neighbour of `i` at offset `-1` or `+1`, honouring the boundary.
    #[inline]
    fn neighbour(&self, i: usize, right: bool) -> Option<usize> {
        match (self.boundary, right) {
            (_, true) if i + 1 < self.len => Some(i + 1),
            (_, false) if i > 0 => Some(i - 1),
            (Boundary::Ring, true) => Some(0),
            (Boundary::Ring, false) => Some(self.len - 1),
            (Boundary::Free, _) => None,
        }
    }

    /// Whether site `i` has an occupied neighbour.
    #[inline]
    pub fn neighbour_occupied(&self, i: usize) -> bool {
        [false, true]
            .into_iter()
            .filter_map(|r| self.neighbour(i, r))
            .any(|j| self.get(j))
    }

    /// True if two adjacent sites (wrapping on a ring) are both occupied.
    pub fn has_adjacent_pair(&self) -> bool {
        if self.len < 2 {
            return false;
        }
        self.count_pairs_at(1) > 0
    }

    /// True if every vacant site has at least one occupied neighbour.
    pub fn is_jammed(&self) -> bool {
        (0..self.len).all(|i| self.get(i) || self.neighbour_occupied(i))
    }

    /// True if every occupied site of `self` is occupied in `other`.
    pub fn is_subset_of(&self, other: &Occupancy) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// 64 bits starting at site `start`: bit `k` is site `start + k`, wrapping
    /// on a ring and reading zero past the end on a free lattice.
    fn window(&self, start: usize) -> u64 {
        let n = self.len;
        let read = |pos: usize| -> u64 {
            let (w, o) = (pos >> 6, pos & 63);
            let lo = self.words.get(w).copied().unwrap_or(0) >> o;
            let hi = if o == 0 {
                0
            } else {
                self.words.get(w + 1).copied().unwrap_or(0) << (64 - o)
            };
            lo | hi
        };
        if start + 64 <= n || self.boundary == Boundary::Free {
            return if start >= n { 0 } else { read(start) };
        }
        if n >= 64 {
            // bits start..n, then 0.. after the seam
            let head = n - start;
            let low = read(start) & ((1u64 << head) - 1);
            low | (read(0) << head)
        } else {
            let mut out = 0u64;
            for k in 0..64 {
                let site = (start + k) % n;
                out |= (self.get(site) as u64) << k;
            }
            out
        }
    }

    /// Mask of sites `lo..hi` that fall in word `w`.
    #[inline]
    fn range_mask(w: usize, lo: usize, hi: usize) -> u64 {
        let base = w * 64;
        if hi <= base || lo >= base + 64 {
            return 0;
        }
        let from = lo.saturating_sub(base);
        let to = (hi - base).min(64);
        let upper = if to == 64 { u64::MAX } else { (1u64 << to) - 1 };
        upper & !((1u64 << from) - 1)
    }

    /// Number of sites `i` with `omega_i = omega_{i+s} = 1`.
    ///
    /// On a ring every `i` counts (indices wrap); on a free lattice only
    /// `i + s < len`.
    pub fn count_pairs_at(&self, s: usize) -> usize {
        let n = self.len;
        let hi = match self.boundary {
            Boundary::Ring => n,
            Boundary::Free => n.saturating_sub(s),
        };
        let shift = if n == 0 { 0 } else { s % n };
        let mut count = 0;
        for (w, &word) in self.words.iter().enumerate() {
            let mask = Self::range_mask(w, 0, hi);
            if mask == 0 {
                continue;
            }
            let partner = match self.boundary {
                Boundary::Ring => self.window((w * 64 + shift) % n),
                Boundary::Free => self.window(w * 64 + s),
            };
            count += (word & partner & mask).count_ones() as usize;
        }
        count
    }

    /// Number of sites `i` with `omega_{i-1} = omega_i = 0` and `omega_{i+s} = 1`.
    ///
    /// On a free lattice only `1 <= i` and `i + s < len` count.
    pub fn count_gap_then_occupied(&self, s: usize) -> usize {
        let n = self.len;
        let (lo, hi) = match self.boundary {
            Boundary::Ring => (0, n),
            Boundary::Free => (1, n.saturating_sub(s)),
        };
        let mut count = 0;
        for (w, &word) in self.words.iter().enumerate() {
            let mask = Self::range_mask(w, lo, hi);
            if mask == 0 {
                continue;
            }
            let base = w * 64;
            let (left, ahead) = match self.boundary {
                Boundary::Ring => (self.window((base + n - 1) % n), self.window((base + s) % n)),
                Boundary::Free => (
                    if base == 0 { word << 1 } else { self.window(base - 1) },
                    self.window(base + s),
                ),
            };
            count += (!left & !word & ahead & mask).count_ones() as usize;
        }
        count
    }
}

impl fmt::Debug for Occupancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: String = (0..self.len.min(128))
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.debug_struct("Occupancy")
            .field("len", &self.len)
            .field("boundary", &self.boundary)
            .field("threshold", &self.threshold)
            .field("bits", &shown)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occ(bits: &[u8], boundary: Boundary) -> Occupancy {
        let b: Vec<bool> = bits.iter().map(|&x| x == 1).collect();
        Occupancy::from_bools(&b, boundary, TimePoint::ONE)
    }

    fn brute_pairs(o: &Occupancy, s: usize) -> usize {
        let n = o.len();
        match o.boundary() {
            Boundary::Ring => (0..n).filter(|&i| o.get(i) && o.get((i + s) % n)).count(),
            Boundary::Free => (0..n.saturating_sub(s)).filter(|&i| o.get(i) && o.get(i + s)).count(),
        }
    }

    fn brute_gap(o: &Occupancy, s: usize) -> usize {
        let n = o.len();
        match o.boundary() {
            Boundary::Ring => (0..n)
                .filter(|&i| !o.get((i + n - 1) % n) && !o.get(i) && o.get((i + s) % n))
                .count(),
            Boundary::Free => (1..n.saturating_sub(s))
                .filter(|&i| !o.get(i - 1) && !o.get(i) && o.get(i + s))
                .count(),
        }
    }

    #[test]
    fn get_set_roundtrip() {
        let mut o = Occupancy::empty(130, Boundary::Free, TimePoint::ONE);
        o.set(0, true);
        o.set(64, true);
        o.set(129, true);
        assert_eq!(o.count_ones(), 3);
        assert!(o.get(129) && !o.get(128));
        o.set(64, false);
        assert_eq!(o.count_ones(), 2);
    }

    #[test]
    fn adjacency_wraps_on_ring() {
        let ring = occ(&[1, 0, 1, 0, 1], Boundary::Ring);
        assert!(ring.has_adjacent_pair());
        let free = occ(&[1, 0, 1, 0, 1], Boundary::Free);
        assert!(!free.has_adjacent_pair());
    }

    #[test]
    fn jamming_check() {
        assert!(occ(&[1, 0, 0, 1], Boundary::Free).is_jammed());
        assert!(!occ(&[1, 0, 0, 0, 1], Boundary::Free).is_jammed());
        assert!(!occ(&[0, 0, 1], Boundary::Free).is_jammed());
        assert!(occ(&[0, 1, 0, 0, 1], Boundary::Ring).is_jammed());
    }

    #[test]
    fn word_counts_match_brute_force() {
        // deterministic pseudo-random bit patterns across word boundaries
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for &n in &[3usize, 5, 63, 64, 65, 127, 200, 301] {
            for boundary in [Boundary::Free, Boundary::Ring] {
                let bits: Vec<bool> = (0..n)
                    .map(|_| {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        state & 3 == 0
                    })
                    .collect();
                let o = Occupancy::from_bools(&bits, boundary, TimePoint::ONE);
                for s in 0..n.min(70) {
                    assert_eq!(o.count_pairs_at(s), brute_pairs(&o, s), "pairs n={n} s={s} {boundary:?}");
                    assert_eq!(o.count_gap_then_occupied(s), brute_gap(&o, s), "gap n={n} s={s} {boundary:?}");
                }
            }
        }
    }

    #[test]
    fn subset_relation() {
        let a = occ(&[1, 0, 0, 0, 1], Boundary::Free);
        let b = occ(&[1, 0, 1, 0, 1], Boundary::Free);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
    }
}
