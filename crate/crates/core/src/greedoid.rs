//! Set systems, greedoid and matroid axioms, and the Bhargava greedoid.
//!
//! The Bhargava greedoid of an ultra triple consists of all subsets that
//! have maximum perimeter among the subsets of their cardinality. It is
//! always a strong greedoid, and each of its cardinality levels is the set
//! of bases of a matroid. The checkers here accept arbitrary set systems,
//! so they can also be pointed at systems that fail the axioms.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_SET_POINTS};
use crate::triple::UltraTriple;

/// Default ground-set bound for [`bhargava_greedoid`].
pub const DEFAULT_GREEDOID_CAP: usize = 16;

/// A collection of subsets of `{0, ..., ground - 1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground: usize,
    sets: BTreeSet<PointSet>,
}

impl SetSystem {
    pub fn new(ground: usize, sets: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        if ground > MAX_SET_POINTS {
            return Err(Error::CapExceeded {
                what: "set system ground",
                size: ground as u128,
                cap: MAX_SET_POINTS as u128,
            });
        }
        let mut collected = BTreeSet::new();
        for s in sets {
            if s.span() > ground {
                return Err(Error::PointOutOfRange {
                    index: s.span() - 1,
                    len: ground,
                });
            }
            collected.insert(s);
        }
        Ok(SetSystem {
            ground,
            sets: collected,
        })
    }

    /// Builds a system from lists of point indices.
    pub fn from_lists(ground: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| PointSet::from_points(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, sets)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.sets.contains(&set)
    }

    /// Members in increasing bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.sets.iter().copied()
    }

    /// Members grouped by cardinality, `0..=ground`.
    pub fn by_cardinality(&self) -> Vec<Vec<PointSet>> {
        let mut levels = vec![Vec::new(); self.ground + 1];
        for s in self.iter() {
            levels[s.len()].push(s);
        }
        levels
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `∅` is a member.
    I,
    /// Every nonempty member loses some element and stays a member.
    II,
    /// Augmentation between members of consecutive sizes.
    III,
    /// Simultaneous exchange: `A ∪ x` and `B ∖ x` are both members.
    IV,
    /// Basis exchange between members of equal size.
    MatroidExchange,
    /// Basis exchange with `|B1| <= |B2|`.
    UnequalExchange,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::I => "i",
            Axiom::II => "ii",
            Axiom::III => "iii",
            Axiom::IV => "iv",
            Axiom::MatroidExchange => "matroid-exchange",
            Axiom::UnequalExchange => "unequal-exchange",
        })
    }
}

/// A counterexample to one of the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The empty set is not a member.
    MissingEmptySet,
    /// No one-element deletion of `set` is a member.
    NoDeletion { set: PointSet },
    /// No `b ∈ B ∖ A` has `A ∪ b` in the system.
    NoAugmentation { a: PointSet, b: PointSet },
    /// No `x ∈ B ∖ A` has both `A ∪ x` and `B ∖ x` in the system.
    NoSimultaneousExchange { a: PointSet, b: PointSet },
    /// No `y ∈ B2 ∖ B1` has `B1 ∪ y ∖ x` in the system.
    NoBasisExchange { b1: PointSet, b2: PointSet, x: usize },
    /// A basis system must be nonempty.
    NoBases,
}

impl Witness {
    /// Re-derives the violation from scratch against `s`.
    pub fn reproduces(&self, s: &SetSystem) -> bool {
        match *self {
            Witness::MissingEmptySet => !s.contains(PointSet::EMPTY),
            Witness::NoDeletion { set } => {
                s.contains(set) && !set.is_empty() && set.iter().all(|b| !s.contains(set.without(b)))
            }
            Witness::NoAugmentation { a, b } => {
                s.contains(a)
                    && s.contains(b)
                    && b.len() == a.len() + 1
                    && b.difference(a).iter().all(|x| !s.contains(a.with(x)))
            }
            Witness::NoSimultaneousExchange { a, b } => {
                s.contains(a)
                    && s.contains(b)
                    && b.len() == a.len() + 1
                    && b
                        .difference(a)
                        .iter()
                        .all(|x| !(s.contains(a.with(x)) && s.contains(b.without(x))))
            }
            Witness::NoBasisExchange { b1, b2, x } => {
                s.contains(b1)
                    && s.contains(b2)
                    && b1.contains(x)
                    && !b2.contains(x)
                    && b2
                        .difference(b1)
                        .iter()
                        .all(|y| !s.contains(b1.with(y).without(x)))
            }
            Witness::NoBases => s.is_empty(),
        }
    }
}

/// The verdict of one axiom check; a failing verdict carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn from_witness(axiom: Axiom, witness: Option<Witness>) -> Self {
        AxiomReport {
            axiom,
            holds: witness.is_none(),
            witness,
        }
    }

    /// Whether the report is self-consistent against `s`: a failure's
    /// witness reproduces, and a success carries no witness.
    pub fn recheck(&self, s: &SetSystem) -> bool {
        match &self.witness {
            None => self.holds,
            Some(w) => !self.holds && w.reproduces(s),
        }
    }
}

/// All subsets of the ground set having maximum perimeter among subsets of
/// their size, computed by exhaustive search at every size.
pub fn bhargava_greedoid(t: &UltraTriple, cap: usize) -> Result<SetSystem> {
    let n = t.len();
    if n > cap.min(MAX_SET_POINTS) {
        return Err(Error::CapExceeded {
            what: "Bhargava greedoid ground set",
            size: n as u128,
            cap: cap.min(MAX_SET_POINTS) as u128,
        });
    }
    let ground = t.ground()?;
    let mut sets = Vec::new();
    for k in 0..=n {
        let mut best = None;
        let mut winners = Vec::new();
        for s in ground.subsets_of_size(k) {
            let per = t.perimeter_unchecked(s);
            match &best {
                Some(b) if per < *b => {}
                Some(b) if per == *b => winners.push(s),
                _ => {
                    best = Some(per);
                    winners.clear();
                    winners.push(s);
                }
            }
        }
        sets.extend(winners);
    }
    SetSystem::new(n, sets)
}

pub fn check_axiom_i(s: &SetSystem) -> AxiomReport {
    let witness = (!s.contains(PointSet::EMPTY)).then_some(Witness::MissingEmptySet);
    AxiomReport::from_witness(Axiom::I, witness)
}

pub fn check_axiom_ii(s: &SetSystem) -> AxiomReport {
    let witness = s
        .iter()
        .filter(|b| !b.is_empty())
        .find(|&b| b.iter().all(|x| !s.contains(b.without(x))))
        .map(|set| Witness::NoDeletion { set });
    AxiomReport::from_witness(Axiom::II, witness)
}

/// Every pair `A, B` of members with `|B| = |A| + 1`, in a fixed order.
fn consecutive_pairs(s: &SetSystem) -> impl Iterator<Item = (PointSet, PointSet)> + '_ {
    let levels = s.by_cardinality();
    (0..s.ground()).flat_map(move |k| {
        let lower = levels[k].clone();
        let upper = levels[k + 1].clone();
        lower
            .into_iter()
            .flat_map(move |a| upper.clone().into_iter().map(move |b| (a, b)))
    })
}

pub fn check_axiom_iii(s: &SetSystem) -> AxiomReport {
    let witness = consecutive_pairs(s)
        .find(|&(a, b)| b.difference(a).iter().all(|x| !s.contains(a.with(x))))
        .map(|(a, b)| Witness::NoAugmentation { a, b });
    AxiomReport::from_witness(Axiom::III, witness)
}

pub fn check_axiom_iv(s: &SetSystem) -> AxiomReport {
    let witness = consecutive_pairs(s)
        .find(|&(a, b)| simultaneous_exchange(s, a, b).is_none())
        .map(|(a, b)| Witness::NoSimultaneousExchange { a, b });
    AxiomReport::from_witness(Axiom::IV, witness)
}

fn simultaneous_exchange(s: &SetSystem, a: PointSet, b: PointSet) -> Option<usize> {
    b.difference(a)
        .iter()
        .find(|&x| s.contains(a.with(x)) && s.contains(b.without(x)))
}

/// Runs axioms (i) through (iv) in order.
pub fn check_greedoid_axioms(s: &SetSystem) -> [AxiomReport; 4] {
    [
        check_axiom_i(s),
        check_axiom_ii(s),
        check_axiom_iii(s),
        check_axiom_iv(s),
    ]
}

/// The members of cardinality exactly `k`.
pub fn level_sets(s: &SetSystem, k: usize) -> SetSystem {
    SetSystem {
        ground: s.ground,
        sets: s.sets.iter().copied().filter(|m| m.len() == k).collect(),
    }
}

fn basis_exchange_witness(s: &SetSystem, pairs: impl Iterator<Item = (PointSet, PointSet)>) -> Option<Witness> {
    for (b1, b2) in pairs {
        for x in b1.difference(b2) {
            let swapped = b2.difference(b1).iter().any(|y| s.contains(b1.with(y).without(x)));
            if !swapped {
                return Some(Witness::NoBasisExchange { b1, b2, x });
            }
        }
    }
    None
}

/// Checks that `s` is the set of bases of a matroid: nonempty, and for
/// members `B1`, `B2` and `x ∈ B1 ∖ B2` some `y ∈ B2 ∖ B1` has
/// `B1 ∪ y ∖ x` in `s`.
///
/// All members must have the same size.
pub fn check_matroid_bases(s: &SetSystem) -> Result<AxiomReport> {
    let mut sizes = s.iter().map(PointSet::len);
    if let Some(first) = sizes.next() {
        if let Some(other) = sizes.find(|&k| k != first) {
            return Err(Error::InvalidParameter(format!(
                "bases must share one cardinality, found {first} and {other}"
            )));
        }
    }
    if s.is_empty() {
        return Ok(AxiomReport::from_witness(Axiom::MatroidExchange, Some(Witness::NoBases)));
    }
    let members: Vec<PointSet> = s.iter().collect();
    let pairs = members
        .iter()
        .flat_map(|&b1| members.iter().map(move |&b2| (b1, b2)));
    Ok(AxiomReport::from_witness(
        Axiom::MatroidExchange,
        basis_exchange_witness(s, pairs),
    ))
}

/// The exchange property for members `B1`, `B2` with `|B1| <= |B2|`, which
/// every strong greedoid satisfies.
pub fn check_unequal_exchange(s: &SetSystem) -> AxiomReport {
    let members: Vec<PointSet> = s.iter().collect();
    let pairs = members.iter().flat_map(|&b1| {
        members
            .iter()
            .filter(move |b2| b1.len() <= b2.len())
            .map(move |&b2| (b1, b2))
    });
    AxiomReport::from_witness(Axiom::UnequalExchange, basis_exchange_witness(s, pairs))
}

/// Some `u ∈ B ∖ A` with `PER(B ∖ u) + PER(A ∪ u) >= PER(A) + PER(B)`, for
/// any `A`, `B` with `|B| = |A| + 1`.
///
/// The elements of `A` are projected in increasing order onto what remains
/// of `B`, each projection then being removed; the single leftover element
/// of `B` is `u`.
pub fn exchange_element(t: &UltraTriple, a: PointSet, b: PointSet) -> Result<usize> {
    t.check_set(a)?;
    t.check_set(b)?;
    if b.len() != a.len() + 1 {
        return Err(Error::InvalidParameter(format!(
            "expected |B| = |A| + 1, got |A| = {} and |B| = {}",
            a.len(),
            b.len()
        )));
    }
    let mut remaining = b;
    for v in a {
        let image = t.projection(remaining, v)?;
        remaining = remaining.without(image);
    }
    let u = remaining.iter().next().expect("one element of B is left");
    let lhs = t.perimeter_unchecked(b.without(u)) + t.perimeter_unchecked(a.with(u));
    let rhs = t.perimeter_unchecked(a) + t.perimeter_unchecked(b);
    if a.contains(u) || lhs < rhs {
        return Err(Error::Inconsistent(format!(
            "exchange element {u} fails for A = {a:?}, B = {b:?}; is the triple valid?"
        )));
    }
    Ok(u)
}

/// For members `A`, `B` of the Bhargava greedoid `s` of `t` with
/// `|B| = |A| + 1`: some `x ∈ B ∖ A` with `A ∪ x` and `B ∖ x` both in `s`.
///
/// The candidate from [`exchange_element`] is tried first.
pub fn strong_exchange_pair(t: &UltraTriple, s: &SetSystem, a: PointSet, b: PointSet) -> Result<usize> {
    if !s.contains(a) || !s.contains(b) {
        return Err(Error::InvalidParameter("A and B must be members of the system".into()));
    }
    let u = exchange_element(t, a, b)?;
    if s.contains(a.with(u)) && s.contains(b.without(u)) {
        return Ok(u);
    }
    simultaneous_exchange(s, a, b).ok_or(Error::NoStrongExchange)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{mod_triple, padic_triple};
    use crate::rational::int;

    fn parity5() -> UltraTriple {
        mod_triple(&[1, 2, 3, 4, 5], 2, int(1), int(2), vec![int(0); 5]).unwrap()
    }

    fn labels(ls: &[usize]) -> PointSet {
        PointSet::from_points(&ls.iter().map(|l| l - 1).collect::<Vec<_>>()).unwrap()
    }

    fn system(ground: usize, lists: &[&[usize]]) -> SetSystem {
        let lists: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        SetSystem::from_lists(ground, &lists).unwrap()
    }

    #[test]
    fn parity5_greedoid_members() {
        let f = bhargava_greedoid(&parity5(), DEFAULT_GREEDOID_CAP).unwrap();
        assert!(f.contains(labels(&[1, 2, 3])));
        assert!(f.contains(labels(&[1, 2, 3, 4, 5])));
        assert!(!f.contains(labels(&[1, 2, 3, 5])));
        assert!(f.contains(PointSet::EMPTY));
        for report in check_greedoid_axioms(&f) {
            assert!(report.holds, "{report:?}");
        }
        for k in 0..=5 {
            assert!(check_matroid_bases(&level_sets(&f, k)).unwrap().holds);
        }
        assert!(level_sets(&f, 6).is_empty());
        assert_eq!(level_sets(&f, 0).len(), 1);
    }

    #[test]
    fn non_transposition_example() {
        let e = [0, 1, 2, 3, 4, 5, 6, 12];
        let t = padic_triple(&e, 3, vec![int(0); 8]).unwrap();
        let f = bhargava_greedoid(&t, DEFAULT_GREEDOID_CAP).unwrap();
        let set = |vals: &[i64]| {
            PointSet::from_points(
                &vals.iter().map(|v| e.iter().position(|x| x == v).unwrap()).collect::<Vec<_>>(),
            )
            .unwrap()
        };
        assert!(f.contains(set(&[0, 1, 2])));
        assert!(f.contains(set(&[0, 1, 2, 3])));
        assert!(f.contains(set(&[0, 1, 2, 6])));
        assert!(f.contains(set(&[0, 1, 2, 4, 5, 6, 12])));
        assert!(!f.contains(set(&[0, 1, 2, 3, 6])));
        assert!(!f.contains(set(&[0, 1, 2, 3, 4, 5, 12])));
    }

    #[test]
    fn parity5_exchange() {
        let t = parity5();
        let f = bhargava_greedoid(&t, DEFAULT_GREEDOID_CAP).unwrap();
        let a = labels(&[1, 2, 5]);
        let b = labels(&[2, 3, 4, 5]);
        // label 4 is index 3
        assert_eq!(exchange_element(&t, a, b).unwrap(), 3);
        assert_eq!(strong_exchange_pair(&t, &f, a, b).unwrap(), 3);
        assert!(!f.contains(a.with(2)));
        let single = PointSet::singleton(2).unwrap();
        assert_eq!(exchange_element(&t, PointSet::EMPTY, single).unwrap(), 2);
        assert!(exchange_element(&t, a, a).is_err());
    }

    #[test]
    fn small_axiom_cases() {
        // a = 0, b = 1
        let good = system(2, &[&[], &[0], &[0, 1]]);
        assert!(check_axiom_ii(&good).holds);
        let gap = system(2, &[&[], &[0, 1]]);
        let report = check_axiom_ii(&gap);
        assert_eq!(report.witness, Some(Witness::NoDeletion { set: PointSet::from_points(&[0, 1]).unwrap() }));
        assert!(report.recheck(&gap));

        let none = system(3, &[]);
        let report = check_axiom_i(&none);
        assert!(!report.holds && report.recheck(&none));
        assert!(check_axiom_i(&system(3, &[&[]])).holds);

        let singletons = system(3, &[&[], &[0], &[1], &[2]]);
        assert!(check_axiom_iii(&singletons).holds);

        let all: Vec<PointSet> = (0..8u64).map(PointSet::from_bits).collect();
        let free = SetSystem::new(3, all).unwrap();
        assert!(check_greedoid_axioms(&free).iter().all(|r| r.holds));
    }

    #[test]
    fn axiom_iv_can_fail_alone() {
        // lower ideals of a < b, c < d with a, b, c, d = 0, 1, 2, 3
        let ideals = system(
            4,
            &[&[], &[0], &[2], &[0, 1], &[0, 2], &[2, 3], &[0, 1, 2], &[0, 2, 3], &[0, 1, 2, 3]],
        );
        assert!(check_axiom_i(&ideals).holds);
        assert!(check_axiom_ii(&ideals).holds);
        assert!(check_axiom_iii(&ideals).holds);
        let report = check_axiom_iv(&ideals);
        assert!(!report.holds);
        assert!(report.recheck(&ideals));
    }

    #[test]
    fn poset_bases_fail_exchange() {
        let bases = system(4, &[&[0, 1], &[2, 3]]);
        let report = check_matroid_bases(&bases).unwrap();
        assert!(!report.holds);
        assert!(matches!(report.witness, Some(Witness::NoBasisExchange { x: 0, .. })));
        assert!(report.recheck(&bases));
        assert!(check_matroid_bases(&system(4, &[&[1, 2]])).unwrap().holds);
        assert!(check_matroid_bases(&system(4, &[&[1], &[1, 2]])).is_err());
        assert!(!check_matroid_bases(&system(4, &[])).unwrap().holds);
    }

    #[test]
    fn membership_bounds() {
        assert!(SetSystem::from_lists(2, &[vec![2]]).is_err());
        assert!(bhargava_greedoid(&parity5(), 4).is_err());
    }
}
