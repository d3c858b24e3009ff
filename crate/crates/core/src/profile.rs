//! Degree profiles and cup-product patterns for connected rank-8
//! Poincaré-duality algebras.
//!
//! A connected rank-8 PD algebra has a one-dimensional unit degree, a
//! one-dimensional top degree `r`, and six "middle" classes whose degrees
//! pair up to `r`.  Sorting the middles by degree gives
//! `(q1, q2, q3, r-q3, r-q2, r-q1)` with `q1 <= q2 <= q3 <= r-q3`, so the
//! whole degree layout is captured by a [`StructureProfile`].
//!
//! The classification is organised by which of the six "low" products
//! `u_i u_j` (those whose degree can land strictly below the top) are
//! nonzero; that subset is a [`CupPattern`].

use std::fmt;

use crate::algebra::GradedAlgebra;

/// The tracked middle-class pairs, as 1-based positions into the
/// degree-sorted middle list `u1..u6`.  These are exactly the pairs `(i, j)`
/// with `i < j` and `i + j <= 6`, i.e. the products not forced by the
/// duality pairing.
pub const TRACKED_PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)];

/// Degree layout of a connected rank-8 Poincaré-duality algebra: the three
/// low middle degrees and the top degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StructureProfile {
    q: [u32; 3],
    r: u32,
}

impl StructureProfile {
    /// Builds a profile, returning `None` if the data cannot describe a
    /// connected rank-8 PD algebra (degrees must satisfy
    /// `1 <= q1 <= q2 <= q3 <= r - q3`).
    pub fn new(q1: u32, q2: u32, q3: u32, r: u32) -> Option<Self> {
        if q1 >= 1 && q1 <= q2 && q2 <= q3 && r >= 2 * q3 {
            Some(Self { q: [q1, q2, q3], r })
        } else {
            None
        }
    }

    /// The three low middle degrees, ascending.
    pub fn low(&self) -> [u32; 3] {
        self.q
    }

    /// Top degree.
    pub fn top(&self) -> u32 {
        self.r
    }

    /// All six middle degrees, ascending: `(q1, q2, q3, r-q3, r-q2, r-q1)`.
    pub fn middles(&self) -> [u32; 6] {
        let [q1, q2, q3] = self.q;
        [q1, q2, q3, self.r - q3, self.r - q2, self.r - q1]
    }

    /// Full degree vector of the eight basis classes, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0];
        d.extend(self.middles());
        d.push(self.r);
        d
    }
}

impl fmt::Display for StructureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}; {})", self.q[0], self.q[1], self.q[2], self.r)
    }
}

/// Reads the profile off a concrete algebra.  Returns `None` unless the
/// algebra is connected, has rank 8, and its degree multiset has the
/// palindromic middle layout (unit, six middles pairing to the top, top).
pub fn derive_profile(a: &GradedAlgebra) -> Option<StructureProfile> {
    if a.dim() != 8 || !a.is_connected() {
        return None;
    }
    let mut degs: Vec<u32> = (0..8).map(|i| a.degree(i)).collect();
    degs.sort_unstable();
    if degs[0] != 0 || degs[1] == 0 {
        return None;
    }
    let r = degs[7];
    let mid = &degs[1..7];
    if mid[5] >= r {
        return None;
    }
    for k in 0..3 {
        if mid[k] + mid[5 - k] != r {
            return None;
        }
    }
    StructureProfile::new(mid[0], mid[1], mid[2], r)
}

/// A subset of [`TRACKED_PAIRS`], stored as a bitmask indexed in the order
/// the pairs are listed there.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CupPattern(u8);

impl CupPattern {
    pub const fn empty() -> Self {
        CupPattern(0)
    }

    pub const fn full() -> Self {
        CupPattern((1 << TRACKED_PAIRS.len()) - 1)
    }

    /// Builds a pattern from 1-based middle pairs; panics on an untracked
    /// pair (use `i < j`, `i + j <= 6`).
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        let mut mask = 0u8;
        for p in pairs {
            let t = TRACKED_PAIRS
                .iter()
                .position(|q| q == p)
                .unwrap_or_else(|| panic!("untracked middle pair {p:?}"));
            mask |= 1 << t;
        }
        CupPattern(mask)
    }

    /// Number of pairs declared nonzero.
    pub fn size(&self) -> u32 {
        self.0.count_ones()
    }

    /// Whether tracked slot `t` (an index into [`TRACKED_PAIRS`]) is
    /// declared nonzero.
    pub fn contains_slot(&self, t: usize) -> bool {
        self.0 >> t & 1 == 1
    }

    /// Whether the product of (1-based) middles `i`, `j` is declared
    /// nonzero.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        TRACKED_PAIRS
            .iter()
            .position(|&q| q == (i, j) || q == (j, i))
            .is_some_and(|t| self.contains_slot(t))
    }

    /// The declared-nonzero pairs, 1-based.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..TRACKED_PAIRS.len()).filter(|&t| self.contains_slot(t)).map(|t| TRACKED_PAIRS[t]).collect()
    }

    /// All `2^6` patterns in ascending mask order.
    pub fn all() -> impl Iterator<Item = CupPattern> {
        (0u8..1 << TRACKED_PAIRS.len()).map(CupPattern)
    }

    /// All patterns with exactly `size` nonzero pairs, ascending.
    pub fn all_of_size(size: u32) -> Vec<CupPattern> {
        Self::all().filter(|p| p.size() == size).collect()
    }
}

impl fmt::Display for CupPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "-");
        }
        let mut first = true;
        for (i, j) in self.pairs() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "u{i}u{j}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{connected_sum, sphere, sum_of_projective, tensor, truncated};

    #[test]
    fn profile_of_standard_examples() {
        // Three projective planes summed: all middles in one degree.
        let a = sum_of_projective(3, 3, 2).unwrap();
        assert_eq!(derive_profile(&a), StructureProfile::new(2, 2, 2, 6));

        // Truncated polynomial on one degree-1 generator of height 8.
        let p7 = truncated(7, 1);
        assert_eq!(derive_profile(&p7), StructureProfile::new(1, 2, 3, 7));

        // Product with a sphere in the same degree.
        let p3s = tensor(&truncated(3, 2), &sphere(2));
        assert_eq!(derive_profile(&p3s), StructureProfile::new(2, 2, 4, 8));

        // Non-PD-shaped degree layouts and wrong ranks are rejected.
        assert_eq!(derive_profile(&sphere(3)), None);
        let lopsided = tensor(&sphere(1), &tensor(&sphere(1), &sphere(3)));
        assert_eq!(derive_profile(&lopsided), StructureProfile::new(1, 1, 2, 5));
        let sum = connected_sum(&tensor(&sphere(1), &sphere(4)), &truncated(5, 1)).unwrap();
        // 1, {1, 1, 2, 3, 4, 4}, 5: middles pair to 5.
        assert_eq!(derive_profile(&sum), StructureProfile::new(1, 1, 2, 5));
    }

    #[test]
    fn pattern_basics() {
        assert_eq!(CupPattern::empty().size(), 0);
        assert_eq!(CupPattern::full().size(), 6);
        let p = CupPattern::from_pairs(&[(1, 2), (2, 4)]);
        assert_eq!(p.size(), 2);
        assert!(p.contains(1, 2) && p.contains(4, 2));
        assert!(!p.contains(1, 3));
        assert_eq!(p.pairs(), vec![(1, 2), (2, 4)]);
        assert_eq!(p.to_string(), "u1u2 u2u4");
        assert_eq!(CupPattern::all_of_size(2).len(), 15);
        assert_eq!(CupPattern::all_of_size(3).len(), 20);
        assert_eq!(CupPattern::all().count(), 64);
    }
}
