//! p-adic valuations and (p, m)-orderings of finite sets of integers.
//!
//! A `(p, m)`-ordering of `E ⊆ ℤ` is a tuple `(a_0, ..., a_{m-1})` of
//! elements of `E` where every `a_k` minimizes
//!
//! ```text
//! v_p((a_k - a_0)(a_k - a_1)···(a_k - a_{k-1}))
//! ```
//!
//! over all candidates in `E`. With zero weights and `d'(a, b) = -v_p(a - b)`
//! these are exactly the greedy permutations of `E`, which
//! [`check_equivalence`] confirms case by case.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use crate::constructions::padic_log_triple;
use crate::error::{Error, Result};
use crate::greedy::is_greedy_permutation;
use crate::pointset::PointSet;
use crate::rational::int;

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A p-adic valuation: a nonnegative integer, or `+∞` for zero.
///
/// Addition saturates at infinity, so the valuation of a product is the sum
/// of valuations even when a factor vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl std::iter::Sum for Valuation {
    fn sum<I: Iterator<Item = Valuation>>(iter: I) -> Valuation {
        iter.fold(Valuation::Finite(0), Add::add)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

fn valuation_unchecked(p: u64, x: i128) -> Valuation {
    if x == 0 {
        return Valuation::Infinite;
    }
    let p = p as i128;
    let mut x = x;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

/// `v_p(x)`, the exponent of the largest power of `p` dividing `x`;
/// infinite for `x = 0`.
pub fn vp(p: u64, x: i64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(valuation_unchecked(p, x as i128))
}

/// `v_p(a - b)` without overflow. `p` is assumed prime.
pub(crate) fn valuation_of_difference(p: u64, a: i64, b: i64) -> Valuation {
    valuation_unchecked(p, a as i128 - b as i128)
}

fn sorted_set(elements: &[i64]) -> Vec<i64> {
    let mut set = elements.to_vec();
    set.sort_unstable();
    set.dedup();
    set
}

/// `v_p(∏ (x - c))` over the chosen prefix.
fn product_valuation(p: u64, x: i64, prefix: &[i64]) -> Valuation {
    prefix
        .iter()
        .map(|&c| valuation_of_difference(p, x, c))
        .sum()
}

/// A `(p, m)`-ordering of `elements`, breaking ties by the smallest integer.
///
/// Once `m` exceeds the number of distinct elements every candidate has
/// infinite valuation and the smallest element is repeated.
pub fn pm_ordering(elements: &[i64], p: u64, m: usize) -> Result<Vec<i64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let set = sorted_set(elements);
    if set.is_empty() && m > 0 {
        return Err(Error::EmptySet("ordered set"));
    }
    let mut ordering: Vec<i64> = Vec::with_capacity(m);
    for _ in 0..m {
        // min_by_key keeps the first minimum, which is the smallest value
        let next = *set
            .iter()
            .min_by_key(|&&x| product_valuation(p, x, &ordering))
            .expect("nonempty");
        ordering.push(next);
    }
    Ok(ordering)
}

/// Whether every entry of `seq` lies in `elements` and minimizes the product
/// valuation against its predecessors.
pub fn is_pm_ordering(elements: &[i64], p: u64, seq: &[i64]) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let set = sorted_set(elements);
    for (k, &a) in seq.iter().enumerate() {
        if set.binary_search(&a).is_err() {
            return Ok(false);
        }
        let prefix = &seq[..k];
        let own = product_valuation(p, a, prefix);
        if set.iter().any(|&x| product_valuation(p, x, prefix) < own) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates `seq` both as a `(p, m)`-ordering and as a greedy permutation
/// of the `d'(a, b) = -v_p(a - b)` triple with zero weights, and returns the
/// common verdict.
///
/// Entries must be distinct members of `elements`. A disagreement between
/// the two verdicts is reported as [`Error::Inconsistent`].
pub fn check_equivalence(elements: &[i64], p: u64, seq: &[i64]) -> Result<bool> {
    let set = sorted_set(elements);
    let indices = seq
        .iter()
        .map(|a| {
            set.binary_search(a)
                .map_err(|_| Error::InvalidParameter(format!("{a} is not in the ground set")))
        })
        .collect::<Result<Vec<usize>>>()?;
    if PointSet::from_points(&indices).map(PointSet::len).ok() != Some(indices.len()) {
        return Err(Error::InvalidParameter(
            "sequence entries must be distinct".into(),
        ));
    }
    let ordering = is_pm_ordering(&set, p, seq)?;
    let triple = padic_log_triple(&set, p, vec![int(0); set.len()])?;
    let greedy = is_greedy_permutation(&triple, triple.ground()?, &indices);
    if ordering != greedy {
        return Err(Error::Inconsistent(format!(
            "{seq:?}: (p,m)-ordering = {ordering}, greedy permutation = {greedy}"
        )));
    }
    Ok(ordering)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(2, 12).unwrap(), Valuation::Finite(2));
        assert_eq!(vp(3, 1).unwrap(), Valuation::Finite(0));
        assert_eq!(vp(5, 0).unwrap(), Valuation::Infinite);
        assert_eq!(vp(3, -54).unwrap(), Valuation::Finite(3));
        assert!(matches!(vp(6, 12), Err(Error::NotPrime(6))));
        assert_eq!(valuation_of_difference(2, i64::MIN, i64::MAX), Valuation::Finite(0));
    }

    #[test]
    fn valuation_arithmetic() {
        use Valuation::*;
        assert!(Finite(1_000) < Infinite);
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(Finite(2) + Infinite, Infinite);
        assert_eq!(Vec::<Valuation>::new().into_iter().sum::<Valuation>(), Finite(0));
    }

    #[test]
    fn orderings() {
        assert_eq!(pm_ordering(&[5, 3, 9], 2, 1).unwrap(), vec![3]);
        assert_eq!(pm_ordering(&[5, 3, 9], 2, 0).unwrap(), Vec::<i64>::new());
        assert!(pm_ordering(&[], 2, 1).is_err());
        let e: Vec<i64> = (0..8).collect();
        let ord = pm_ordering(&e, 2, 8).unwrap();
        assert_eq!(ord, vec![0, 1, 2, 3, 4, 5, 6, 7]);
        assert!(is_pm_ordering(&e, 2, &ord).unwrap());
        // more entries than elements: repeats
        let ord = pm_ordering(&[1, 2], 3, 4).unwrap();
        assert_eq!(&ord[..2], &[1, 2]);
        assert!(is_pm_ordering(&[1, 2], 3, &ord).unwrap());
    }

    #[test]
    fn membership_and_repeats() {
        let e: Vec<i64> = (1..=6).collect();
        assert!(is_pm_ordering(&e, 5, &[4]).unwrap());
        assert!(is_pm_ordering(&e, 5, &[1, 2, 3, 4]).unwrap());
        assert!(!is_pm_ordering(&e, 5, &[1, 1]).unwrap());
        assert!(!is_pm_ordering(&e, 5, &[7]).unwrap());
    }

    #[test]
    fn equivalence_small() {
        let e = [0i64, 1, 2, 3];
        for &a in &e {
            for &b in &e {
                if a != b {
                    check_equivalence(&e, 2, &[a, b]).unwrap();
                }
            }
        }
        assert!(check_equivalence(&e, 2, &[]).unwrap());
        let weird = [0, 1, 2, 9, 17, 128];
        assert!(check_equivalence(&weird, 2, &[2, 9, 0, 17, 1]).unwrap());
        assert!(!check_equivalence(&weird, 2, &[2, 9, 17, 0, 1]).unwrap());
        assert!(check_equivalence(&e, 2, &[1, 1]).is_err());
    }
}
