use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest carrier the bitset representation supports.
pub const MAX_POINTS: usize = 12;

/// A subset of the carrier `0..n`, stored as a bitmask.
///
/// The derived ordering is the integer order on masks. It refines inclusion
/// (`a ⊆ b` implies `a <= b`), which is the fixed subset order used for all
/// tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        PointSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        PointSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(p: usize) -> Self {
        PointSet(1 << p)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        points.into_iter().fold(Self::EMPTY, |s, p| s.with(p))
    }

    pub fn contains(self, p: usize) -> bool {
        p < 32 && self.0 & (1 << p) != 0
    }

    pub fn with(self, p: usize) -> Self {
        PointSet(self.0 | (1 << p))
    }

    pub fn without(self, p: usize) -> Self {
        PointSet(self.0 & !(1 << p))
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Subsets of a finite carrier are finite. Kept as a named predicate so
    /// definitions phrased with almost-inclusion read literally.
    pub fn is_finite(self) -> bool {
        true
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `0..n` in mask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
        (0..(1u32 << n)).map(PointSet)
    }

    /// All subsets of `self` (including the empty set and `self`).
    pub fn subsets(self) -> impl Iterator<Item = PointSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(PointSet(cur))
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_points(iter)
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&p) = points.iter().find(|&&p| p >= 32) {
            return Err(serde::de::Error::custom(format!("point {p} out of range")));
        }
        Ok(Self::from_points(points))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let s = PointSet::from_points([0, 2, 3]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        let mut dedup = subs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
        assert_eq!(PointSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn inclusion_refines_mask_order() {
        for a in PointSet::all_subsets(4) {
            for b in PointSet::all_subsets(4) {
                if a.is_subset(b) {
                    assert!(a <= b);
                }
            }
        }
    }

    #[test]
    fn serializes_as_sorted_points() {
        let s = PointSet::from_points([3, 0]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,3]");
        let back: PointSet = serde_json::from_str("[3,0]").unwrap();
        assert_eq!(back, s);
        assert_eq!(s.to_string(), "{0,3}");
    }
}
