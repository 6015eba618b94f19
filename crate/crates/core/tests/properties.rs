//! Randomized invariants, each checked against an independent computation.

use proptest::prelude::*;

use ultragreedy::bhargava::{is_pm_ordering, pm_ordering};
use ultragreedy::constructions::{
    extend_to_full, mod_triple, padic_log_triple, padic_triple, rseq_triple, shift_distances, separating_shift,
    tree_triple, WeightedTree,
};
use ultragreedy::greedoid::{
    bhargava_greedoid, check_axiom_i, check_axiom_ii, check_axiom_iii, check_axiom_iv, check_greedoid_axioms,
    check_unequal_exchange, exchange_element, strong_exchange_pair, SetSystem, DEFAULT_GREEDOID_CAP,
};
use ultragreedy::greedy::{
    all_greedy_permutations, all_greedy_subsequences, clone_index, clone_set, clone_triple, extend_greedy,
    greedy_permutation, greedy_subsequence, is_greedy_permutation, is_greedy_subsequence, nu_bar,
    DEFAULT_ENUMERATION_CAP,
};
use ultragreedy::oracle::{brute_all_greedy, brute_max_perimeter, random_ultra_triple};
use ultragreedy::rational::{frac, int};
use ultragreedy::{PointSet, Rational, UltraTriple};

fn triple(max_n: usize) -> impl Strategy<Value = UltraTriple> {
    (any::<u64>(), 0..=max_n, 1..=4usize).prop_map(|(seed, n, depth)| random_ultra_triple(seed, n, depth))
}

fn nonempty_triple(max_n: usize) -> impl Strategy<Value = UltraTriple> {
    (any::<u64>(), 1..=max_n, 1..=4usize).prop_map(|(seed, n, depth)| random_ultra_triple(seed, n, depth))
}

fn subset_of(t: &UltraTriple, bits: u64) -> PointSet {
    PointSet::from_bits(bits).intersection(t.ground().unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

fn distinct_integers(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-40i64..=40, 1..=max_len).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn integer_families_validate(points in distinct_integers(8), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let n = points.len();
        prop_assert!(padic_triple(&points, p, vec![int(0); n]).unwrap().validate().ok());
        prop_assert!(padic_log_triple(&points, p, vec![int(0); n]).unwrap().validate().ok());
        let t = mod_triple(&points, p as i64, int(-1), frac(1, 2), vec![int(0); n]).unwrap();
        prop_assert!(t.validate().ok());
    }

    #[test]
    fn rseq_families_validate(points in distinct_integers(8), steps in prop::collection::vec(1i64..=3, 1..=3)) {
        let mut r = vec![1i64];
        for s in &steps {
            let last = *r.last().unwrap();
            r.push(last * (s + 1));
        }
        r.push(0);
        let c: Vec<Rational> = (0..r.len()).map(|i| int(10 - 3 * i as i64)).collect();
        let t = rseq_triple(&points, &r, &c, vec![int(0); points.len()]).unwrap();
        prop_assert!(t.validate().ok());
    }

    #[test]
    fn random_triples_validate(t in triple(8)) {
        prop_assert!(t.validate().ok());
    }

    #[test]
    fn tree_leaf_distances(parents in prop::collection::vec((any::<prop::sample::Index>(), 0i64..=5), 1..8)) {
        let n = parents.len() + 1;
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize, Rational)> = parents
            .iter()
            .enumerate()
            .map(|(i, (parent, w))| (i + 1, parent.index(i + 1), int(*w)))
            .collect();
        let tree = WeightedTree::new(vertices, edges, 0).unwrap();
        let t = tree_triple(&tree).unwrap();
        prop_assert!(t.validate().ok());
        let leaves = tree.leafset();
        for i in 0..leaves.len() {
            let from = tree.path_lengths_from(leaves[i]);
            for j in 0..i {
                let per = t.perimeter_set(PointSet::from_points(&[i, j]).unwrap()).unwrap();
                prop_assert_eq!(per, from[leaves[j]].clone());
            }
        }
    }

    #[test]
    fn full_extension_restricts_back(t in triple(7)) {
        let n_self = t.min_distance().cloned().unwrap_or_default();
        let full = extend_to_full(&t, n_self).unwrap();
        prop_assert!(full.validate().ok());
        prop_assert_eq!(full.restriction(), &t);
    }

    #[test]
    fn increments_telescope(t in nonempty_triple(8), bits in any::<u64>(), u in any::<prop::sample::Index>()) {
        let a = subset_of(&t, bits);
        let u = u.index(t.len());
        prop_assume!(!a.contains(u));
        let grown = t.perimeter_set(a.with(u)).unwrap();
        prop_assert_eq!(grown, t.perimeter_set(a).unwrap() + t.increment(a, u));
    }

    #[test]
    fn tuple_perimeter_ignores_order(t in nonempty_triple(5), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..6), seed in any::<u64>()) {
        let full = extend_to_full(&t, t.min_distance().cloned().unwrap_or_default()).unwrap();
        let tuple: Vec<usize> = picks.iter().map(|i| i.index(t.len())).collect();
        let mut shuffled = tuple.clone();
        // a deterministic rotation and reversal
        if !shuffled.is_empty() {
            let k = (seed as usize) % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
        }
        prop_assert_eq!(full.perimeter_tuple(&tuple).unwrap(), full.perimeter_tuple(&shuffled).unwrap());
    }

    #[test]
    fn projections_move_closer(t in nonempty_triple(8), bits in any::<u64>(), v in any::<prop::sample::Index>()) {
        let c = subset_of(&t, bits);
        prop_assume!(!c.is_empty());
        let v = v.index(t.len());
        let u = t.projection(c, v).unwrap();
        prop_assert!(c.contains(u));
        if c.contains(v) {
            prop_assert_eq!(u, v);
        }
        for x in c.iter().filter(|&x| x != u) {
            prop_assert!(x != v);
            prop_assert!(t.distance(u, x) <= t.distance(v, x));
        }
    }

    #[test]
    fn enumeration_matches_filter(t in triple(5), bits in any::<u64>(), m in 0..=5usize) {
        let c = subset_of(&t, bits);
        prop_assume!(m <= c.len());
        let fast = all_greedy_permutations(&t, c, m, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(&fast, &brute_all_greedy(&t, c, m).unwrap());
        for seq in &fast {
            prop_assert!(is_greedy_permutation(&t, c, seq));
        }
    }

    #[test]
    fn extension_and_truncation(t in triple(7), split in any::<prop::sample::Index>()) {
        let c = t.ground().unwrap();
        let m = c.len();
        let full = greedy_permutation(&t, c, m).unwrap();
        let n = split.index(m + 1);
        let prefix = &full.points()[..n];
        prop_assert!(is_greedy_permutation(&t, c, prefix));
        let extended = extend_greedy(&t, c, prefix, m).unwrap();
        prop_assert_eq!(&extended.points()[..n], prefix);
        prop_assert!(is_greedy_permutation(&t, c, extended.points()));
    }

    #[test]
    fn nu_bar_is_a_difference_of_maxima(t in nonempty_triple(7), k in any::<prop::sample::Index>()) {
        let c = t.ground().unwrap();
        let k = k.index(c.len()) + 1;
        let high = brute_max_perimeter(&t, c, k).unwrap().value;
        let low = brute_max_perimeter(&t, c, k - 1).unwrap().value;
        prop_assert_eq!(nu_bar(&t, c, k).unwrap(), high - low);
    }

    #[test]
    fn exchange_inequality(t in nonempty_triple(8), a_bits in any::<u64>(), b_bits in any::<u64>()) {
        let a = subset_of(&t, a_bits);
        let mut b = subset_of(&t, b_bits);
        // trim or grow b to |a| + 1
        let ground = t.ground().unwrap();
        while b.len() > a.len() + 1 {
            b = b.without(b.iter().next().unwrap());
        }
        while b.len() < a.len() + 1 {
            match ground.difference(b).iter().next() {
                Some(x) => b = b.with(x),
                None => break,
            }
        }
        prop_assume!(b.len() == a.len() + 1);
        let u = exchange_element(&t, a, b).unwrap();
        prop_assert!(b.contains(u) && !a.contains(u));
        let lhs = t.perimeter_set(b.without(u)).unwrap() + t.perimeter_set(a.with(u)).unwrap();
        let rhs = t.perimeter_set(a).unwrap() + t.perimeter_set(b).unwrap();
        prop_assert!(lhs >= rhs);
    }

    #[test]
    fn greedoid_exchanges(t in triple(6)) {
        let f = bhargava_greedoid(&t, DEFAULT_GREEDOID_CAP).unwrap();
        prop_assert!(check_unequal_exchange(&f).holds);
        let levels = f.by_cardinality();
        for k in 0..t.len() {
            for &a in &levels[k] {
                for &b in &levels[k + 1] {
                    let x = strong_exchange_pair(&t, &f, a, b).unwrap();
                    prop_assert!(f.contains(a.with(x)) && f.contains(b.without(x)));
                }
            }
        }
    }

    #[test]
    fn greedoid_levels_are_greedy_prefixes(t in triple(6)) {
        // the hereditary language is exactly the set of greedy permutations
        let f = bhargava_greedoid(&t, DEFAULT_GREEDOID_CAP).unwrap();
        let c = t.ground().unwrap();
        for m in 0..=t.len() {
            let mut prefixes: Vec<PointSet> = all_greedy_permutations(&t, c, m, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .iter()
                .map(|seq| PointSet::from_points(seq).unwrap())
                .collect();
            prefixes.sort();
            prefixes.dedup();
            let level: Vec<PointSet> = f.iter().filter(|s| s.len() == m).collect();
            prop_assert_eq!(prefixes, level);
        }
    }

    #[test]
    fn shifted_subsequences_are_permutations(t in triple(4), bits in any::<u64>(), m in 0..=4usize) {
        let c = subset_of(&t, bits);
        prop_assume!(!c.is_empty() && m <= c.len());
        let full = extend_to_full(&t, t.min_distance().cloned().unwrap_or_default()).unwrap();
        prop_assert_eq!(shift_distances(&full, &int(0)), full.clone());
        let shift = separating_shift(&full, c, m);
        let shifted = shift_distances(&full, &shift);
        prop_assert!(shifted.validate().ok());
        let subsequences = all_greedy_subsequences(&shifted, c, m, DEFAULT_ENUMERATION_CAP).unwrap();
        let permutations = all_greedy_permutations(&t, c, m, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(subsequences, permutations);
    }

    #[test]
    fn clone_correspondence(t in nonempty_triple(3), bits in any::<u64>(), m in 0..=3usize, n_self in small_rational()) {
        let c = subset_of(&t, bits);
        prop_assume!(!c.is_empty());
        let floor = t.min_distance().cloned().unwrap_or_else(|| n_self.clone());
        let full = extend_to_full(&t, n_self.min(floor)).unwrap();
        let copies = 3;
        let clones = clone_triple(&full, copies).unwrap();
        let lifted_c = clone_set(c, copies).unwrap();
        let lifts: Vec<Vec<usize>> = all_greedy_permutations(clones.restriction(), lifted_c, m, DEFAULT_ENUMERATION_CAP).unwrap();
        for seq in all_greedy_subsequences(&full, c, m, DEFAULT_ENUMERATION_CAP).unwrap() {
            let lift: Vec<usize> = seq.iter().zip(1..).map(|(&e, r)| clone_index(e, r, copies)).collect();
            prop_assert!(lifts.contains(&lift));
        }
        for lift in &lifts {
            let base: Vec<usize> = lift.iter().map(|&x| x / copies).collect();
            prop_assert!(is_greedy_subsequence(&full, c, &base));
        }
    }

    #[test]
    fn subsequence_round_trip(t in nonempty_triple(5), m in 0..7usize) {
        let full = extend_to_full(&t, t.min_distance().cloned().unwrap_or_default()).unwrap();
        let c = t.ground().unwrap();
        let trace = greedy_subsequence(&full, c, m).unwrap();
        prop_assert!(is_greedy_subsequence(&full, c, trace.points()));
    }

    #[test]
    fn orderings_do_not_repeat(points in distinct_integers(7), p in prop::sample::select(vec![2u64, 3, 5]), m in 0..=7usize) {
        prop_assume!(m <= points.len());
        let ordering = pm_ordering(&points, p, m).unwrap();
        let mut sorted = ordering.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), m);
        for k in 0..=m {
            prop_assert!(is_pm_ordering(&points, p, &ordering[..k]).unwrap());
        }
    }

    #[test]
    fn witnesses_reproduce(ground in 1..=4usize, masks in prop::collection::vec(any::<u64>(), 0..10)) {
        let s = SetSystem::new(ground, masks.iter().map(|&m| PointSet::from_bits(m & ((1 << ground) - 1)))).unwrap();
        for report in check_greedoid_axioms(&s) {
            prop_assert!(report.recheck(&s));
        }
        prop_assert!(check_unequal_exchange(&s).recheck(&s));
    }

    #[test]
    fn strong_systems_exchange_unequally(ground in 1..=4usize, masks in prop::collection::vec(any::<u64>(), 0..12)) {
        let s = SetSystem::new(
            ground,
            masks.iter().map(|&m| PointSet::from_bits(m & ((1 << ground) - 1))).chain([PointSet::EMPTY]),
        )
        .unwrap();
        let strong = check_axiom_i(&s).holds && check_axiom_ii(&s).holds && check_axiom_iv(&s).holds;
        if strong {
            prop_assert!(check_unequal_exchange(&s).holds);
        }
    }
}

#[test]
fn a_greedoid_that_is_not_strong_turns_up() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let found = (0..20_000).find_map(|_| {
        let sets = (0..rng.random_range(2..9)).map(|_| PointSet::from_bits(rng.random_range(0..16u64)));
        let s = SetSystem::new(4, sets.chain([PointSet::EMPTY])).unwrap();
        let report = check_axiom_iv(&s);
        (check_axiom_ii(&s).holds && check_axiom_iii(&s).holds && !report.holds).then_some((s, report))
    });
    let (s, report) = found.expect("a system satisfying (i)-(iii) but not (iv)");
    assert!(report.recheck(&s));
}

#[test]
fn random_triples_have_ties() {
    let with_ties = (0..200u64)
        .filter(|&seed| {
            let t = random_ultra_triple(seed, 6, 3);
            let mut rows: Vec<Rational> = t.rows().into_iter().flatten().collect();
            let total = rows.len();
            rows.sort();
            rows.dedup();
            rows.len() < total
        })
        .count();
    // pairs of equal distances are forced at n = 6 by the ultrametric inequality
    assert!(with_ties * 2 > 200, "{with_ties} of 200 instances have equal distances");
}
