//! Ultra triples: a finite ground set with weights and an ultrametric-style
//! distance, plus perimeters, validation and projections.
//!
//! A triple `(E, w, d)` consists of points `E = {0, ..., n-1}`, a weight
//! `w(a)` per point and a symmetric distance `d(a, b)` per pair of distinct
//! points such that
//!
//! ```text
//! d(a, b) <= max(d(a, c), d(b, c))    for all distinct a, b, c.
//! ```
//!
//! Weights and distances may be negative. The distances are stored once per
//! unordered pair, so symmetry cannot be violated.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::rational::Rational;

/// A finite ultra triple with exact rational data.
///
/// Construction only checks the shape of the data; use
/// [`UltraTriple::validate`] (or [`UltraTriple::validated`]) to check the
/// ultrametric inequality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UltraTriple {
    labels: Vec<String>,
    weights: Vec<Rational>,
    // strictly lower triangular, row-major: entry (i, j) with j < i lives at
    // i * (i - 1) / 2 + j
    dist: Vec<Rational>,
}

fn tri_index(i: usize, j: usize) -> usize {
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

impl UltraTriple {
    /// Builds a triple from lower-triangular rows: row `i` holds the
    /// distances from point `i` to points `0..i`.
    pub fn new(
        labels: Vec<String>,
        weights: Vec<Rational>,
        rows: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n {
            return Err(Error::Shape(format!(
                "{} distance rows for {n} points",
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i {
                return Err(Error::Shape(format!(
                    "distance row {i} has {} entries, expected {i}",
                    row.len()
                )));
            }
        }
        let dist = rows.into_iter().flatten().collect();
        Self::from_parts(labels, weights, dist)
    }

    /// Builds a triple by evaluating `distance(i, j)` for every `i > j`.
    pub fn from_fn(
        labels: Vec<String>,
        weights: Vec<Rational>,
        mut distance: impl FnMut(usize, usize) -> Rational,
    ) -> Result<Self> {
        let n = labels.len();
        let mut dist = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in 0..i {
                dist.push(distance(i, j));
            }
        }
        Self::from_parts(labels, weights, dist)
    }

    /// Like [`UltraTriple::from_fn`] with a fallible distance function.
    pub fn try_from_fn(
        labels: Vec<String>,
        weights: Vec<Rational>,
        mut distance: impl FnMut(usize, usize) -> Result<Rational>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut dist = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in 0..i {
                dist.push(distance(i, j)?);
            }
        }
        Self::from_parts(labels, weights, dist)
    }

    fn from_parts(labels: Vec<String>, weights: Vec<Rational>, dist: Vec<Rational>) -> Result<Self> {
        let n = labels.len();
        if weights.len() != n {
            return Err(Error::Shape(format!(
                "{} weights for {n} points",
                weights.len()
            )));
        }
        let mut seen = HashSet::with_capacity(n);
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        debug_assert_eq!(dist.len(), n * n.saturating_sub(1) / 2);
        Ok(UltraTriple {
            labels,
            weights,
            dist,
        })
    }

    /// Returns `self` if it satisfies the ultrametric inequality.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::NotUltrametric(v.describe(&self.labels))),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, point: usize) -> &str {
        &self.labels[point]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, point: usize) -> &Rational {
        &self.weights[point]
    }

    /// `d(a, b)` for distinct points.
    ///
    /// # Panics
    ///
    /// Panics if `a == b` or either index is out of range.
    pub fn distance(&self, a: usize, b: usize) -> &Rational {
        assert!(a != b, "distance is only defined for distinct points");
        assert!(a < self.len() && b < self.len(), "point out of range");
        &self.dist[tri_index(a, b)]
    }

    /// The lower-triangular rows, as accepted by [`UltraTriple::new`].
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.len())
            .map(|i| (0..i).map(|j| self.distance(i, j).clone()).collect())
            .collect()
    }

    /// Smallest pairwise distance, or `None` with fewer than two points.
    pub fn min_distance(&self) -> Option<&Rational> {
        self.dist.iter().min()
    }

    /// All points as a [`PointSet`]; fails beyond 64 points.
    pub fn ground(&self) -> Result<PointSet> {
        PointSet::full(self.len())
    }

    pub(crate) fn check_point(&self, point: usize) -> Result<()> {
        if point < self.len() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                index: point,
                len: self.len(),
            })
        }
    }

    pub(crate) fn check_set(&self, set: PointSet) -> Result<()> {
        if set.span() <= self.len() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                index: set.span() - 1,
                len: self.len(),
            })
        }
    }

    /// Replaces the labels, keeping all numeric data.
    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Shape(format!(
                "{} labels for {} points",
                labels.len(),
                self.len()
            )));
        }
        Self::from_parts(labels, self.weights, self.dist)
    }

    /// Replaces the weights, keeping the distances.
    pub fn with_weights(self, weights: Vec<Rational>) -> Result<Self> {
        Self::from_parts(self.labels, weights, self.dist)
    }

    /// Checks `d(a,b) <= max(d(a,c), d(b,c))` for every triangle and lists
    /// every failure.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut violations = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    // each side against the other two
                    for [x, y, z] in [[a, b, c], [a, c, b], [b, c, a]] {
                        let side = self.distance(x, y);
                        let bound = self.distance(x, z).max(self.distance(y, z));
                        if side > bound {
                            violations.push(Violation {
                                points: [x, y, z],
                                lhs: side.clone(),
                                rhs: bound.clone(),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `PER(A)`: the weights of `A` plus the distances of all unordered pairs
    /// in `A`.
    pub fn perimeter_set(&self, set: PointSet) -> Result<Rational> {
        self.check_set(set)?;
        Ok(self.perimeter_unchecked(set))
    }

    pub(crate) fn perimeter_unchecked(&self, set: PointSet) -> Rational {
        let points = set.to_vec();
        let mut total = Rational::zero();
        for (idx, &a) in points.iter().enumerate() {
            total += &self.weights[a];
            for &b in &points[..idx] {
                total += &self.dist[tri_index(a, b)];
            }
        }
        total
    }

    /// `w(u) + sum of d(a, u) over a in set`, which equals
    /// `PER(set ∪ {u}) - PER(set)` when `u` is not in `set`.
    pub fn increment(&self, set: PointSet, u: usize) -> Rational {
        let mut total = self.weights[u].clone();
        for a in set.iter().filter(|&a| a != u) {
            total += &self.dist[tri_index(a, u)];
        }
        total
    }

    /// The projections of `v` onto the nonempty set `onto`: `{v}` if `v` is
    /// a member, otherwise all members closest to `v`.
    pub fn projections(&self, onto: PointSet, v: usize) -> Result<PointSet> {
        if onto.is_empty() {
            return Err(Error::EmptySet("projection target"));
        }
        self.check_set(onto)?;
        self.check_point(v)?;
        if onto.contains(v) {
            return PointSet::singleton(v);
        }
        let nearest = onto
            .iter()
            .map(|c| self.distance(v, c))
            .min()
            .expect("nonempty");
        Ok(onto
            .iter()
            .filter(|&c| self.distance(v, c) == nearest)
            .fold(PointSet::EMPTY, PointSet::with))
    }

    /// The lowest-index projection of `v` onto `onto`.
    pub fn projection(&self, onto: PointSet, v: usize) -> Result<usize> {
        Ok(self
            .projections(onto, v)?
            .iter()
            .next()
            .expect("projections are nonempty"))
    }
}

/// An ultra triple whose distance is also defined on the diagonal, with the
/// ultrametric inequality required for all (possibly equal) points.
///
/// In particular `d(a, a) <= d(a, c)` for all `a`, `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FullUltraTriple {
    base: UltraTriple,
    selfdist: Vec<Rational>,
}

impl FullUltraTriple {
    pub fn new(base: UltraTriple, selfdist: Vec<Rational>) -> Result<Self> {
        if selfdist.len() != base.len() {
            return Err(Error::Shape(format!(
                "{} self-distances for {} points",
                selfdist.len(),
                base.len()
            )));
        }
        Ok(FullUltraTriple { base, selfdist })
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::NotUltrametric(v.describe(self.base.labels()))),
        }
    }

    /// The ultra triple obtained by forgetting the self-distances.
    pub fn restriction(&self) -> &UltraTriple {
        &self.base
    }

    pub fn into_parts(self) -> (UltraTriple, Vec<Rational>) {
        (self.base, self.selfdist)
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        self.base.labels()
    }

    pub fn weight(&self, point: usize) -> &Rational {
        self.base.weight(point)
    }

    pub fn self_distances(&self) -> &[Rational] {
        &self.selfdist
    }

    /// `d(a, b)`, including `a == b`.
    pub fn distance(&self, a: usize, b: usize) -> &Rational {
        if a == b {
            &self.selfdist[a]
        } else {
            self.base.distance(a, b)
        }
    }

    /// Checks the ultrametric inequality for all `a, b, c`, equal points
    /// included. Beyond the distinct-point triangles this amounts to
    /// `d(a, a) <= d(a, c)`, reported as the triangle `(a, a, c)`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.base.validate();
        let n = self.len();
        for a in 0..n {
            for c in (0..n).filter(|&c| c != a) {
                let lhs = &self.selfdist[a];
                let rhs = self.base.distance(a, c);
                if lhs > rhs {
                    report.violations.push(Violation {
                        points: [a, a, c],
                        lhs: lhs.clone(),
                        rhs: rhs.clone(),
                    });
                }
            }
        }
        report
    }

    /// `PER(a_1, ..., a_m)`: the weights of all entries plus `d(a_i, a_j)`
    /// for every `i < j`. Repeated entries contribute self-distances.
    pub fn perimeter_tuple(&self, tuple: &[usize]) -> Result<Rational> {
        for &p in tuple {
            self.base.check_point(p)?;
        }
        let mut total = Rational::zero();
        for (j, &b) in tuple.iter().enumerate() {
            total += self.weight(b);
            for &a in &tuple[..j] {
                total += self.distance(a, b);
            }
        }
        Ok(total)
    }

    /// `w(u) + sum of d(c, u)` over the entries `c` of `prefix`; equals
    /// `PER(prefix, u) - PER(prefix)`.
    pub fn tuple_increment(&self, prefix: &[usize], u: usize) -> Rational {
        let mut total = self.weight(u).clone();
        for &c in prefix {
            total += self.distance(c, u);
        }
        total
    }
}

/// One failed instance of the ultrametric inequality: `d(p0, p1) = lhs`
/// exceeds `max(d(p0, p2), d(p1, p2)) = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub points: [usize; 3],
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Violation {
    pub fn describe(&self, labels: &[String]) -> String {
        let [a, b, c] = self.points;
        format!(
            "d({}, {}) = {} exceeds max(d({}, {}), d({}, {})) = {}",
            labels[a], labels[b], self.lhs, labels[a], labels[c], labels[b], labels[c], self.rhs
        )
    }
}

/// The outcome of [`UltraTriple::validate`] or [`FullUltraTriple::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}
