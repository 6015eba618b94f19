//! Greedy permutations and greedy subsequences.
//!
//! A greedy `m`-permutation of `C` picks `m` distinct points one at a time,
//! each time taking a point that maximizes the perimeter of the points
//! picked so far. Every prefix of such a permutation has maximum perimeter
//! among all subsets of its size, and every maximum-perimeter subset arises
//! as a prefix of some greedy permutation.
//!
//! Greedy subsequences are the same process on a [`FullUltraTriple`] with
//! repetition allowed: at every step all of `C` competes, and picking a
//! point twice contributes its self-distance.
//!
//! The `k`-th perimeter increment is the same for all greedy permutations
//! (respectively subsequences); [`nu_bar`] and [`nu`] compute it.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::rational::Rational;
use crate::triple::{FullUltraTriple, UltraTriple};

/// Default bound on the number of sequences an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// How to resolve ties between equally good candidates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Take the candidate with the smallest point index.
    #[default]
    LowestIndex,
    /// Follow every candidate; yields all greedy sequences.
    EnumerateAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceMode {
    Permutation,
    Subsequence,
}

/// A greedy selection together with its perimeter increments.
///
/// `increments[j]` is the weight of `points[j]` plus its distances to all
/// earlier entries, so the running sums are the prefix perimeters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyTrace {
    points: Vec<usize>,
    increments: Vec<Rational>,
    mode: TraceMode,
}

impl GreedyTrace {
    fn empty(mode: TraceMode) -> Self {
        GreedyTrace {
            points: Vec::new(),
            increments: Vec::new(),
            mode,
        }
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn increments(&self) -> &[Rational] {
        &self.increments
    }

    pub fn mode(&self) -> TraceMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Perimeters of the prefixes of length `0..=len`.
    pub fn prefix_perimeters(&self) -> Vec<Rational> {
        let mut sums = Vec::with_capacity(self.len() + 1);
        let mut total = Rational::default();
        sums.push(total.clone());
        for inc in &self.increments {
            total += inc;
            sums.push(total.clone());
        }
        sums
    }

    /// The first `n` entries.
    pub fn truncated(&self, n: usize) -> GreedyTrace {
        let n = n.min(self.len());
        GreedyTrace {
            points: self.points[..n].to_vec(),
            increments: self.increments[..n].to_vec(),
            mode: self.mode,
        }
    }

    /// The set of the first `k` points (permutation traces).
    pub fn prefix_set(&self, k: usize) -> PointSet {
        self.points[..k]
            .iter()
            .fold(PointSet::EMPTY, |s, &p| s.with(p))
    }

    fn push(&mut self, point: usize, increment: Rational) {
        self.points.push(point);
        self.increments.push(increment);
    }
}

fn check_candidates(t: &UltraTriple, c: PointSet) -> Result<()> {
    t.check_set(c)
}

/// Candidates of maximum increment among `c ∖ chosen`, in increasing order,
/// with that increment.
fn best_extensions(t: &UltraTriple, c: PointSet, chosen: PointSet) -> Option<(Rational, Vec<usize>)> {
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for x in c.difference(chosen) {
        let inc = t.increment(chosen, x);
        match &mut best {
            Some((value, points)) if *value == inc => points.push(x),
            Some((value, _)) if *value > inc => {}
            _ => best = Some((inc, vec![x])),
        }
    }
    best
}

/// The greedy `m`-permutation of `c` that breaks ties by lowest index.
pub fn greedy_permutation(t: &UltraTriple, c: PointSet, m: usize) -> Result<GreedyTrace> {
    extend_greedy(t, c, &[], m)
}

/// Extends a greedy prefix to a greedy `m`-permutation, breaking ties by
/// lowest index.
pub fn extend_greedy(t: &UltraTriple, c: PointSet, prefix: &[usize], m: usize) -> Result<GreedyTrace> {
    check_candidates(t, c)?;
    if m > c.len() {
        return Err(Error::InvalidParameter(format!(
            "a greedy {m}-permutation needs at least {m} candidates, found {}",
            c.len()
        )));
    }
    if prefix.len() > m {
        return Err(Error::InvalidParameter(format!(
            "prefix of length {} is longer than {m}",
            prefix.len()
        )));
    }
    if !is_greedy_permutation(t, c, prefix) {
        return Err(Error::NotGreedy(format!("{prefix:?}")));
    }
    let mut trace = GreedyTrace::empty(TraceMode::Permutation);
    let mut chosen = PointSet::EMPTY;
    for &p in prefix {
        trace.push(p, t.increment(chosen, p));
        chosen = chosen.with(p);
    }
    while trace.len() < m {
        let (inc, points) = best_extensions(t, c, chosen).expect("enough candidates remain");
        trace.push(points[0], inc);
        chosen = chosen.with(points[0]);
    }
    Ok(trace)
}

/// Whether `seq` is a greedy permutation of `c`: distinct members of `c`,
/// each maximizing the perimeter of the growing prefix among the points of
/// `c` not yet taken.
pub fn is_greedy_permutation(t: &UltraTriple, c: PointSet, seq: &[usize]) -> bool {
    if check_candidates(t, c).is_err() {
        return false;
    }
    let mut chosen = PointSet::EMPTY;
    for &p in seq {
        if !c.contains(p) || chosen.contains(p) {
            return false;
        }
        let own = t.increment(chosen, p);
        if c.difference(chosen).iter().any(|x| t.increment(chosen, x) > own) {
            return false;
        }
        chosen = chosen.with(p);
    }
    true
}

/// Every greedy `m`-permutation of `c`, sorted lexicographically.
///
/// Fails once more than `cap` sequences have been produced.
pub fn all_greedy_permutations(t: &UltraTriple, c: PointSet, m: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    check_candidates(t, c)?;
    if m > c.len() {
        return Err(Error::InvalidParameter(format!(
            "a greedy {m}-permutation needs at least {m} candidates, found {}",
            c.len()
        )));
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(m);
    enumerate_permutations(t, c, m, PointSet::EMPTY, &mut stack, &mut out, cap)?;
    Ok(out)
}

fn enumerate_permutations(
    t: &UltraTriple,
    c: PointSet,
    m: usize,
    chosen: PointSet,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if stack.len() == m {
        if out.len() == cap {
            return Err(Error::CapExceeded {
                what: "greedy permutation enumeration",
                size: cap as u128 + 1,
                cap: cap as u128,
            });
        }
        out.push(stack.clone());
        return Ok(());
    }
    let (_, branches) = best_extensions(t, c, chosen).expect("enough candidates remain");
    for x in branches {
        stack.push(x);
        enumerate_permutations(t, c, m, chosen.with(x), stack, out, cap)?;
        stack.pop();
    }
    Ok(())
}

/// Greedy permutations under a tie-breaking rule: one trace for
/// [`TieBreak::LowestIndex`], all of them for [`TieBreak::EnumerateAll`].
pub fn greedy_traces(t: &UltraTriple, c: PointSet, m: usize, ties: TieBreak, cap: usize) -> Result<Vec<GreedyTrace>> {
    match ties {
        TieBreak::LowestIndex => Ok(vec![greedy_permutation(t, c, m)?]),
        TieBreak::EnumerateAll => all_greedy_permutations(t, c, m, cap)?
            .into_iter()
            .map(|seq| permutation_trace(t, &seq))
            .collect(),
    }
}

/// Builds the permutation trace (with increments) of a list of distinct points.
pub fn permutation_trace(t: &UltraTriple, seq: &[usize]) -> Result<GreedyTrace> {
    let mut trace = GreedyTrace::empty(TraceMode::Permutation);
    let mut chosen = PointSet::EMPTY;
    for &p in seq {
        t.check_point(p)?;
        if chosen.contains(p) {
            return Err(Error::InvalidParameter(format!("point {p} repeats")));
        }
        trace.push(p, t.increment(chosen, p));
        chosen = chosen.with(p);
    }
    Ok(trace)
}

/// `ν̄_k(C)`: the `k`-th increment shared by all greedy permutations of `c`,
/// i.e. the maximum perimeter of a `k`-subset minus that of a
/// `(k-1)`-subset.
pub fn nu_bar(t: &UltraTriple, c: PointSet, k: usize) -> Result<Rational> {
    if k == 0 || k > c.len() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must lie in 1..={}",
            c.len()
        )));
    }
    let trace = greedy_permutation(t, c, k)?;
    Ok(trace.increments[k - 1].clone())
}

/// Checks `ν̄_k(C) <= w(c_j) + Σ_{i ≤ k, i ≠ j} d(c_i, c_j)` for a greedy
/// permutation trace (positions `j`, `k` are 1-based).
pub fn nu_bar_inequality_check(
    t: &UltraTriple,
    c: PointSet,
    trace: &GreedyTrace,
    k: usize,
    j: usize,
) -> Result<bool> {
    check_positions(trace, TraceMode::Permutation, k, j)?;
    let nu = nu_bar(t, c, k)?;
    let points = &trace.points[..k];
    let target = points[j - 1];
    let mut rhs = t.weight(target).clone();
    for (i, &p) in points.iter().enumerate() {
        if i != j - 1 {
            rhs += t.distance(p, target);
        }
    }
    Ok(nu <= rhs)
}

fn check_positions(trace: &GreedyTrace, mode: TraceMode, k: usize, j: usize) -> Result<()> {
    if trace.mode != mode {
        return Err(Error::InvalidParameter(format!(
            "expected a {mode:?} trace, got a {:?} trace",
            trace.mode
        )));
    }
    if !(1 <= j && j <= k && k <= trace.len()) {
        return Err(Error::InvalidParameter(format!(
            "positions must satisfy 1 <= j <= k <= {}, got j = {j}, k = {k}",
            trace.len()
        )));
    }
    Ok(())
}

fn check_subsequence_candidates(t: &FullUltraTriple, c: PointSet) -> Result<()> {
    if c.is_empty() {
        return Err(Error::EmptySet("candidate set"));
    }
    t.restriction().check_set(c)
}

/// The greedy `m`-subsequence of `c` that breaks ties by lowest index.
pub fn greedy_subsequence(t: &FullUltraTriple, c: PointSet, m: usize) -> Result<GreedyTrace> {
    check_subsequence_candidates(t, c)?;
    let mut trace = GreedyTrace::empty(TraceMode::Subsequence);
    for _ in 0..m {
        let (inc, points) = best_subsequence_extensions(t, c, &trace.points);
        trace.push(points[0], inc);
    }
    Ok(trace)
}

fn best_subsequence_extensions(t: &FullUltraTriple, c: PointSet, prefix: &[usize]) -> (Rational, Vec<usize>) {
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for x in c {
        let inc = t.tuple_increment(prefix, x);
        match &mut best {
            Some((value, points)) if *value == inc => points.push(x),
            Some((value, _)) if *value > inc => {}
            _ => best = Some((inc, vec![x])),
        }
    }
    best.expect("candidate set is nonempty")
}

/// Whether `seq` is a greedy subsequence of `c`: every entry lies in `c` and
/// maximizes the tuple perimeter of the growing prefix over all of `c`.
pub fn is_greedy_subsequence(t: &FullUltraTriple, c: PointSet, seq: &[usize]) -> bool {
    if t.restriction().check_set(c).is_err() {
        return false;
    }
    for (i, &p) in seq.iter().enumerate() {
        if !c.contains(p) {
            return false;
        }
        let prefix = &seq[..i];
        let own = t.tuple_increment(prefix, p);
        if c.iter().any(|x| t.tuple_increment(prefix, x) > own) {
            return false;
        }
    }
    true
}

/// Every greedy `m`-subsequence of `c`, sorted lexicographically.
pub fn all_greedy_subsequences(t: &FullUltraTriple, c: PointSet, m: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    check_subsequence_candidates(t, c)?;
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(m);
    enumerate_subsequences(t, c, m, &mut stack, &mut out, cap)?;
    Ok(out)
}

fn enumerate_subsequences(
    t: &FullUltraTriple,
    c: PointSet,
    m: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if stack.len() == m {
        if out.len() == cap {
            return Err(Error::CapExceeded {
                what: "greedy subsequence enumeration",
                size: cap as u128 + 1,
                cap: cap as u128,
            });
        }
        out.push(stack.clone());
        return Ok(());
    }
    let (_, branches) = best_subsequence_extensions(t, c, stack);
    for x in branches {
        stack.push(x);
        enumerate_subsequences(t, c, m, stack, out, cap)?;
        stack.pop();
    }
    Ok(())
}

/// Builds the subsequence trace (with increments) of an arbitrary tuple.
pub fn subsequence_trace(t: &FullUltraTriple, seq: &[usize]) -> Result<GreedyTrace> {
    let mut trace = GreedyTrace::empty(TraceMode::Subsequence);
    for (i, &p) in seq.iter().enumerate() {
        t.restriction().check_point(p)?;
        trace.push(p, t.tuple_increment(&seq[..i], p));
    }
    Ok(trace)
}

/// `ν_k(C)`: the `k`-th increment shared by all greedy subsequences of `c`.
pub fn nu(t: &FullUltraTriple, c: PointSet, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let trace = greedy_subsequence(t, c, k)?;
    Ok(trace.increments[k - 1].clone())
}

/// Checks `ν_k(C) <= w(c_j) + Σ_{i ≤ k, i ≠ j} d(c_i, c_j)` for a greedy
/// subsequence trace.
pub fn nu_inequality_check(
    t: &FullUltraTriple,
    c: PointSet,
    trace: &GreedyTrace,
    k: usize,
    j: usize,
) -> Result<bool> {
    check_positions(trace, TraceMode::Subsequence, k, j)?;
    let value = nu(t, c, k)?;
    let points = &trace.points[..k];
    let target = points[j - 1];
    let mut rhs = t.weight(target).clone();
    for (i, &p) in points.iter().enumerate() {
        if i != j - 1 {
            rhs += t.distance(p, target);
        }
    }
    Ok(value <= rhs)
}

/// Index of copy `copy` (1-based) of `point` in a [`clone_triple`] with
/// `copies` copies per point.
pub fn clone_index(point: usize, copy: usize, copies: usize) -> usize {
    debug_assert!((1..=copies).contains(&copy));
    point * copies + (copy - 1)
}

/// Replaces every point `e` by `copies` clones `(e, 1), ..., (e, copies)`
/// carrying the weight of `e` and the distances of their originals, self
/// distances included. Clone `(e, i)` is labelled `"{label}#{i}"`.
pub fn clone_triple(t: &FullUltraTriple, copies: usize) -> Result<FullUltraTriple> {
    if copies == 0 {
        return Err(Error::InvalidParameter("at least one copy is required".into()));
    }
    let n = t.len();
    let origin = |idx: usize| idx / copies;
    let mut labels = Vec::with_capacity(n * copies);
    let mut weights = Vec::with_capacity(n * copies);
    for e in 0..n {
        for i in 1..=copies {
            labels.push(format!("{}#{i}", t.labels()[e]));
            weights.push(t.weight(e).clone());
        }
    }
    let base = UltraTriple::from_fn(labels, weights, |a, b| t.distance(origin(a), origin(b)).clone())?;
    let selfdist = (0..n * copies).map(|a| t.distance(origin(a), origin(a)).clone()).collect();
    FullUltraTriple::new(base, selfdist)
}

/// `C × {1, ..., copies}` inside a [`clone_triple`].
pub fn clone_set(c: PointSet, copies: usize) -> Result<PointSet> {
    let points: Vec<usize> = c
        .iter()
        .flat_map(|e| (1..=copies).map(move |i| clone_index(e, i, copies)))
        .collect();
    PointSet::from_points(&points)
}
