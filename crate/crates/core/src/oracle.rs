//! Exhaustive reference implementations.
//!
//! These deliberately avoid the incremental bookkeeping of
//! [`greedy`](crate::greedy): every comparison goes through a full
//! perimeter evaluation, so agreement between the two is meaningful.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{eqrel_triple, EquivHierarchy};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::rational::{frac, Rational};
use crate::triple::{FullUltraTriple, UltraTriple};

/// Largest candidate set [`brute_max_perimeter`] enumerates.
pub const MAX_SUBSET_ORACLE_POINTS: usize = 20;
/// Largest number of tuples or arrangements an oracle enumerates.
pub const MAX_ORACLE_SEQUENCES: u128 = 1_000_000;
/// Largest ground set [`random_ultra_triple`] produces.
pub const MAX_RANDOM_POINTS: usize = 16;

/// A maximum value together with everything attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxResult<S> {
    pub value: Rational,
    pub argmax: Vec<S>,
}

fn keep_max<S>(best: &mut Option<MaxResult<S>>, value: Rational, item: S) {
    match best {
        Some(b) if value < b.value => {}
        Some(b) if value == b.value => b.argmax.push(item),
        _ => {
            *best = Some(MaxResult {
                value,
                argmax: vec![item],
            })
        }
    }
}

/// The maximum perimeter of a `k`-subset of `c` and every subset attaining
/// it, in increasing bitmask order.
pub fn brute_max_perimeter(t: &UltraTriple, c: PointSet, k: usize) -> Result<MaxResult<PointSet>> {
    if c.len() > MAX_SUBSET_ORACLE_POINTS {
        return Err(Error::CapExceeded {
            what: "subset oracle candidates",
            size: c.len() as u128,
            cap: MAX_SUBSET_ORACLE_POINTS as u128,
        });
    }
    if k > c.len() {
        return Err(Error::InvalidParameter(format!("no {k}-subsets in a set of {}", c.len())));
    }
    let mut best = None;
    for s in c.subsets_of_size(k) {
        keep_max(&mut best, t.perimeter_set(s)?, s);
    }
    Ok(best.expect("at least one k-subset"))
}

/// The maximum perimeter of a `k`-tuple of elements of `c` (repetition
/// allowed) and every maximizing tuple up to order, each given as a sorted
/// list.
pub fn brute_max_tuple_perimeter(t: &FullUltraTriple, c: PointSet, k: usize) -> Result<MaxResult<Vec<usize>>> {
    if c.is_empty() {
        return Err(Error::EmptySet("candidate set"));
    }
    let count = (c.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > MAX_ORACLE_SEQUENCES {
        return Err(Error::CapExceeded {
            what: "tuple oracle",
            size: count,
            cap: MAX_ORACLE_SEQUENCES,
        });
    }
    let members = c.to_vec();
    let mut best: Option<MaxResult<Vec<usize>>> = None;
    let mut digits = vec![0usize; k];
    loop {
        let tuple: Vec<usize> = digits.iter().map(|&d| members[d]).collect();
        keep_max(&mut best, t.perimeter_tuple(&tuple)?, tuple);
        // odometer step
        let Some(pos) = digits.iter().rposition(|&d| d + 1 < members.len()) else {
            break;
        };
        digits[pos] += 1;
        for d in &mut digits[pos + 1..] {
            *d = 0;
        }
    }
    let mut result = best.expect("at least one tuple");
    for tuple in &mut result.argmax {
        tuple.sort_unstable();
    }
    result.argmax.sort();
    result.argmax.dedup();
    Ok(result)
}

/// Every greedy `m`-permutation of `c`, found by filtering all
/// arrangements of `m` distinct points through direct perimeter
/// comparisons. Sorted lexicographically.
pub fn brute_all_greedy(t: &UltraTriple, c: PointSet, m: usize) -> Result<Vec<Vec<usize>>> {
    if m > c.len() {
        return Err(Error::InvalidParameter(format!("no {m}-arrangements of {} points", c.len())));
    }
    let count = (0..m).try_fold(1u128, |acc, i| acc.checked_mul((c.len() - i) as u128));
    let count = count.unwrap_or(u128::MAX);
    if count > MAX_ORACLE_SEQUENCES {
        return Err(Error::CapExceeded {
            what: "arrangement oracle",
            size: count,
            cap: MAX_ORACLE_SEQUENCES,
        });
    }
    t.check_set(c)?;
    let mut out = Vec::new();
    let mut arrangement = Vec::with_capacity(m);
    arrangements(c, m, PointSet::EMPTY, &mut arrangement, &mut |seq| {
        if passes_greedy_inequalities(t, c, seq) {
            out.push(seq.to_vec());
        }
    });
    Ok(out)
}

fn arrangements(c: PointSet, m: usize, used: PointSet, stack: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if stack.len() == m {
        visit(stack);
        return;
    }
    for x in c.difference(used) {
        stack.push(x);
        arrangements(c, m, used.with(x), stack, visit);
        stack.pop();
    }
}

fn passes_greedy_inequalities(t: &UltraTriple, c: PointSet, seq: &[usize]) -> bool {
    let mut prefix = PointSet::EMPTY;
    for &p in seq {
        let own = t.perimeter_unchecked(prefix.with(p));
        let beaten = c
            .difference(prefix)
            .iter()
            .any(|x| t.perimeter_unchecked(prefix.with(x)) > own);
        if beaten {
            return false;
        }
        prefix = prefix.with(p);
    }
    true
}

/// A random ultra triple on `n` points built from a random chain of
/// `depth` partitions followed by singletons.
///
/// Level values and weights are small rationals with denominators 1 or 2,
/// so equal distances and weight ties are common. The same seed always
/// yields the same triple; `depth` 0 is treated as 1.
///
/// # Panics
///
/// Panics if `n` exceeds [`MAX_RANDOM_POINTS`].
pub fn random_ultra_triple(seed: u64, n: usize, depth: usize) -> UltraTriple {
    assert!(n <= MAX_RANDOM_POINTS, "random triples have at most {MAX_RANDOM_POINTS} points");
    let depth = depth.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| frac(rng.random_range(-4..=8), rng.random_range(1..=2));

    let mut levels = vec![vec![0usize; n]];
    for _ in 1..depth {
        let parent = levels.last().expect("level 0 exists");
        let branching = rng.random_range(1..=3usize);
        let child: Vec<usize> = parent
            .iter()
            .map(|&b| b * branching + rng.random_range(0..branching))
            .collect();
        levels.push(child);
    }
    levels.push((0..n).collect());

    let mut c: Vec<Rational> = (0..depth).map(|_| small(&mut rng)).collect();
    c.sort_unstable_by(|a, b| b.cmp(a));
    let weights = (0..n).map(|_| small(&mut rng)).collect();

    let h = EquivHierarchy::from_block_ids(levels, c).expect("refining chain by construction");
    eqrel_triple(&h, weights).expect("weights match the point count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::mod_triple;
    use crate::rational::int;

    fn parity5() -> UltraTriple {
        mod_triple(&[1, 2, 3, 4, 5], 2, int(1), int(2), vec![int(0); 5]).unwrap()
    }

    #[test]
    fn parity5_maxima() {
        let t = parity5();
        let e = t.ground().unwrap();
        let values: Vec<Rational> = (0..=5).map(|k| brute_max_perimeter(&t, e, k).unwrap().value).collect();
        assert_eq!(values, [int(0), int(0), int(2), int(5), int(10), int(16)]);
        let three = brute_max_perimeter(&t, e, 3).unwrap();
        assert!(three.argmax.contains(&PointSet::from_points(&[0, 1, 2]).unwrap()));
        assert_eq!(brute_max_perimeter(&t, e, 0).unwrap().argmax, vec![PointSet::EMPTY]);
        assert_eq!(brute_max_perimeter(&t, e, 5).unwrap().argmax, vec![e]);
    }

    #[test]
    fn parity5_greedy_pairs() {
        let t = parity5();
        let pairs = brute_all_greedy(&t, t.ground().unwrap(), 2).unwrap();
        assert_eq!(pairs.len(), 12);
        assert!(pairs.iter().all(|p| p[0] % 2 != p[1] % 2));
        assert_eq!(brute_all_greedy(&t, t.ground().unwrap(), 0).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn tuple_maxima() {
        let full = crate::constructions::extend_to_full(&parity5(), int(1)).unwrap();
        let c = PointSet::from_points(&[0, 1]).unwrap();
        assert_eq!(brute_max_tuple_perimeter(&full, c, 0).unwrap().value, int(0));
        assert_eq!(brute_max_tuple_perimeter(&full, c, 1).unwrap().value, int(0));
        // (1, 2, x): 2 + 1 + 2 = 5
        let three = brute_max_tuple_perimeter(&full, c, 3).unwrap();
        assert_eq!(three.value, int(5));
        assert_eq!(three.argmax, vec![vec![0, 0, 1], vec![0, 1, 1]]);
        assert!(brute_max_tuple_perimeter(&full, PointSet::EMPTY, 1).is_err());
    }

    #[test]
    fn random_triples() {
        for seed in 0..200 {
            let n = (seed % 9) as usize;
            let t = random_ultra_triple(seed, n, 1 + (seed % 4) as usize);
            assert_eq!(t.len(), n);
            assert!(t.validate().ok(), "seed {seed}");
        }
        assert_eq!(random_ultra_triple(7, 6, 3), random_ultra_triple(7, 6, 3));
        let flat = random_ultra_triple(3, 6, 1);
        let d = flat.distance(0, 1).clone();
        assert!((0..6).all(|a| (0..a).all(|b| flat.distance(a, b) == &d)));
    }

    #[test]
    fn caps() {
        let t = random_ultra_triple(1, 12, 3);
        assert!(matches!(
            brute_all_greedy(&t, t.ground().unwrap(), 8),
            Err(Error::CapExceeded { .. })
        ));
    }
}
