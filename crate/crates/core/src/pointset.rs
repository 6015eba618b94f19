//! Bitmask subsets of a ground set with at most 64 points.

use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set whose subsets fit in a [`PointSet`].
pub const MAX_SET_POINTS: usize = 64;

/// A subset of `{0, 1, ..., 63}` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Result<Self> {
        match n {
            0 => Ok(PointSet::EMPTY),
            n if n < MAX_SET_POINTS => Ok(PointSet((1u64 << n) - 1)),
            MAX_SET_POINTS => Ok(PointSet(u64::MAX)),
            n => Err(Error::CapExceeded {
                what: "ground set",
                size: n as u128,
                cap: MAX_SET_POINTS as u128,
            }),
        }
    }

    pub fn singleton(point: usize) -> Result<Self> {
        Self::EMPTY.try_insert(point)
    }

    pub fn from_points(points: &[usize]) -> Result<Self> {
        points.iter().try_fold(Self::EMPTY, |set, &p| set.try_insert(p))
    }

    fn try_insert(self, point: usize) -> Result<Self> {
        if point >= MAX_SET_POINTS {
            return Err(Error::PointOutOfRange {
                index: point,
                len: MAX_SET_POINTS,
            });
        }
        Ok(PointSet(self.0 | (1u64 << point)))
    }

    /// # Panics
    ///
    /// Panics if `point >= 64`.
    pub fn with(self, point: usize) -> Self {
        assert!(point < MAX_SET_POINTS, "point {point} does not fit a PointSet");
        PointSet(self.0 | (1u64 << point))
    }

    pub fn without(self, point: usize) -> Self {
        if point >= MAX_SET_POINTS {
            return self;
        }
        PointSet(self.0 & !(1u64 << point))
    }

    pub fn contains(self, point: usize) -> bool {
        point < MAX_SET_POINTS && self.0 & (1u64 << point) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
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

    /// Largest member plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        MAX_SET_POINTS - self.0.leading_zeros() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> Points {
        Points(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self` with exactly `k` members, in increasing
    /// bitmask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = PointSet> {
        let members = self.to_vec();
        Combinations::new(members.len(), k).map(move |picks| {
            picks
                .iter()
                .fold(PointSet::EMPTY, |set, &i| set.with(members[i]))
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for PointSet {
    type Item = usize;
    type IntoIter = Points;

    fn into_iter(self) -> Points {
        self.iter()
    }
}

/// Iterator over the members of a [`PointSet`].
#[derive(Clone, Debug)]
pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(low)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

/// Lexicographic `k`-combinations of `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still move
        let pos = (0..k).rev().find(|&i| next[i] < self.n - k + i);
        self.current = pos.map(|i| {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            next
        });
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s = PointSet::from_points(&[0, 3, 5]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(4));
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(s.without(3).with(4).to_vec(), vec![0, 4, 5]);
        assert_eq!(s.span(), 6);
        assert!(PointSet::from_points(&[64]).is_err());
        assert_eq!(PointSet::full(64).unwrap().len(), 64);
        assert!(PointSet::full(65).is_err());
    }

    #[test]
    fn subsets_of_size_counts() {
        let ground = PointSet::from_points(&[1, 2, 4, 6, 9]).unwrap();
        let binom = [1, 5, 10, 10, 5, 1];
        for (k, &expected) in binom.iter().enumerate() {
            let subsets: Vec<_> = ground.subsets_of_size(k).collect();
            assert_eq!(subsets.len(), expected);
            assert!(subsets.iter().all(|s| s.len() == k && s.is_subset(ground)));
        }
        assert_eq!(ground.subsets_of_size(6).count(), 0);
        assert_eq!(PointSet::EMPTY.subsets_of_size(0).count(), 1);
    }
}
