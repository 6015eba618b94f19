//! Builders for standard families of ultra triples.
//!
//! Every builder takes the weights separately; the distance families are
//! the interesting part. Integer-based families label each point with its
//! decimal value.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bhargava::{is_prime, valuation_of_difference, Valuation};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::rational::{int, Rational};
use crate::triple::{FullUltraTriple, UltraTriple};

fn check_weights(n: usize, weights: &[Rational]) -> Result<()> {
    if weights.len() == n {
        Ok(())
    } else {
        Err(Error::Shape(format!("{} weights for {n} points", weights.len())))
    }
}

fn integer_labels(points: &[i64]) -> Vec<String> {
    points.iter().map(i64::to_string).collect()
}

fn diff(a: i64, b: i64) -> i128 {
    a as i128 - b as i128
}

fn check_decreasing(c: &[Rational]) -> Result<()> {
    match c.windows(2).position(|w| w[0] < w[1]) {
        None => Ok(()),
        Some(i) => Err(Error::InvalidParameter(format!(
            "level values must be weakly decreasing, but c({i}) = {} < c({}) = {}",
            c[i],
            i + 1,
            c[i + 1]
        ))),
    }
}

/// All pairwise distances equal to 1. Points are labelled `0..n`.
pub fn constant_triple(n: usize, weights: Vec<Rational>) -> Result<UltraTriple> {
    check_weights(n, &weights)?;
    let labels = (0..n).map(|i| i.to_string()).collect();
    UltraTriple::from_fn(labels, weights, |_, _| int(1))
}

/// `d(a, b) = eps` if `a ≡ b (mod m)` and `alpha` otherwise, for
/// `eps <= alpha`. Modulus 0 means plain equality.
pub fn mod_triple(
    points: &[i64],
    modulus: i64,
    eps: Rational,
    alpha: Rational,
    weights: Vec<Rational>,
) -> Result<UltraTriple> {
    if eps > alpha {
        return Err(Error::InvalidParameter(format!(
            "eps = {eps} exceeds alpha = {alpha}"
        )));
    }
    check_weights(points.len(), &weights)?;
    let m = modulus.unsigned_abs() as i128;
    UltraTriple::from_fn(integer_labels(points), weights, |i, j| {
        let d = diff(points[i], points[j]);
        let congruent = if m == 0 { d == 0 } else { d % m == 0 };
        if congruent {
            eps.clone()
        } else {
            alpha.clone()
        }
    })
}

/// The p-adic metric `d(a, b) = p^(-v_p(a - b))`.
pub fn padic_triple(points: &[i64], p: u64, weights: Vec<Rational>) -> Result<UltraTriple> {
    valuation_triple(points, p, weights, |v| {
        Rational::new(BigInt::one(), BigInt::from(p).pow(v))
    })
}

/// The logarithmic variant `d'(a, b) = -v_p(a - b)`.
pub fn padic_log_triple(points: &[i64], p: u64, weights: Vec<Rational>) -> Result<UltraTriple> {
    valuation_triple(points, p, weights, |v| -int(v as i64))
}

fn valuation_triple(
    points: &[i64],
    p: u64,
    weights: Vec<Rational>,
    from_valuation: impl Fn(u32) -> Rational,
) -> Result<UltraTriple> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_weights(points.len(), &weights)?;
    UltraTriple::try_from_fn(integer_labels(points), weights, |i, j| {
        match valuation_of_difference(p, points[i], points[j]) {
            Valuation::Finite(v) => Ok(from_valuation(v)),
            Valuation::Infinite => Err(Error::DuplicateLabel(points[i].to_string())),
        }
    })
}

fn divides(a: i128, b: i128) -> bool {
    if a == 0 {
        b == 0
    } else {
        b % a == 0
    }
}

/// `v_r(x)`: the largest `i` with `r_i | x`. The sequence is implicitly
/// continued by zeros, which divide only 0, so the result is finite for
/// every nonzero `x` divisible by `r_0`.
pub fn rseq_valuation(r: &[i64], x: i128) -> Option<usize> {
    r.iter().rposition(|&ri| divides(ri as i128, x))
}

/// `d(a, b) = c(v_r(a - b))` for a divisibility chain `r_0 | r_1 | ...`
/// (continued by zeros) and weakly decreasing level values `c`.
pub fn rseq_triple(
    points: &[i64],
    r: &[i64],
    c: &[Rational],
    weights: Vec<Rational>,
) -> Result<UltraTriple> {
    if r.is_empty() {
        return Err(Error::InvalidParameter("empty r-sequence".into()));
    }
    if let Some(i) = r.windows(2).position(|w| !divides(w[0] as i128, w[1] as i128)) {
        return Err(Error::InvalidParameter(format!(
            "r({i}) = {} does not divide r({}) = {}",
            r[i],
            i + 1,
            r[i + 1]
        )));
    }
    check_decreasing(c)?;
    check_weights(points.len(), &weights)?;
    UltraTriple::try_from_fn(integer_labels(points), weights, |i, j| {
        let x = diff(points[i], points[j]);
        if x == 0 {
            return Err(Error::DuplicateLabel(points[i].to_string()));
        }
        let level = rseq_valuation(r, x).ok_or_else(|| {
            Error::InvalidParameter(format!("v_r({x}) is undefined: r(0) = {} does not divide it", r[0]))
        })?;
        c.get(level).cloned().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "v_r({x}) = {level} but only {} level values were given",
                c.len()
            ))
        })
    })
}

/// A chain of partitions of `{0, ..., n-1}`, coarsest first, together with
/// one distance value per level.
///
/// Level 0 is a single block, each level refines the previous one, and the
/// last level consists of singletons. The distance between two points is
/// `c(i)` for the deepest level `i` at which they share a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivHierarchy {
    n: usize,
    // block id of every point, per level
    levels: Vec<Vec<usize>>,
    c: Vec<Rational>,
}

impl EquivHierarchy {
    /// Builds a hierarchy from per-level block ids: `levels[i][e]` is the
    /// block containing `e` at level `i`.
    pub fn from_block_ids(levels: Vec<Vec<usize>>, c: Vec<Rational>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidHierarchy(msg));
        let Some(first) = levels.first() else {
            return bad("no levels".into());
        };
        let n = first.len();
        if let Some(i) = levels.iter().position(|l| l.len() != n) {
            return bad(format!("level {i} does not cover all {n} points"));
        }
        if first.iter().any(|&b| b != first[0]) {
            return bad("level 0 must be a single block".into());
        }
        for (i, pair) in levels.windows(2).enumerate() {
            let (coarse, fine) = (&pair[0], &pair[1]);
            for e in 0..n {
                for f in e + 1..n {
                    if fine[e] == fine[f] && coarse[e] != coarse[f] {
                        return bad(format!(
                            "level {} does not refine level {i}: points {e} and {f}",
                            i + 1
                        ));
                    }
                }
            }
        }
        let last = levels.last().expect("nonempty");
        for e in 0..n {
            for f in e + 1..n {
                if last[e] == last[f] {
                    return bad(format!("no level separates points {e} and {f}"));
                }
            }
        }
        check_decreasing(&c).map_err(|e| Error::InvalidHierarchy(e.to_string()))?;
        let deepest_shared = if n >= 2 { levels.len() - 1 } else { 0 };
        if c.len() < deepest_shared {
            return bad(format!(
                "{} level values for {} shared levels",
                c.len(),
                deepest_shared
            ));
        }
        Ok(EquivHierarchy { n, levels, c })
    }

    /// Builds a hierarchy from explicit blocks per level.
    pub fn from_blocks(n: usize, levels: &[Vec<Vec<usize>>], c: Vec<Rational>) -> Result<Self> {
        let mut ids = Vec::with_capacity(levels.len());
        for (i, blocks) in levels.iter().enumerate() {
            let mut level = vec![usize::MAX; n];
            for (b, block) in blocks.iter().enumerate() {
                for &e in block {
                    if e >= n || level[e] != usize::MAX {
                        return Err(Error::InvalidHierarchy(format!(
                            "level {i} is not a partition of {n} points"
                        )));
                    }
                    level[e] = b;
                }
            }
            if level.contains(&usize::MAX) {
                return Err(Error::InvalidHierarchy(format!(
                    "level {i} is not a partition of {n} points"
                )));
            }
            ids.push(level);
        }
        Self::from_block_ids(ids, c)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level_values(&self) -> &[Rational] {
        &self.c
    }

    /// The deepest level at which distinct points `e` and `f` share a block.
    pub fn common_level(&self, e: usize, f: usize) -> usize {
        self.levels
            .iter()
            .rposition(|level| level[e] == level[f])
            .expect("level 0 is a single block")
    }
}

/// `d(e, f) = c(deepest common level of e and f)`. Points are labelled
/// `0..n`.
pub fn eqrel_triple(h: &EquivHierarchy, weights: Vec<Rational>) -> Result<UltraTriple> {
    check_weights(h.n, &weights)?;
    let labels = (0..h.n).map(|i| i.to_string()).collect();
    UltraTriple::from_fn(labels, weights, |e, f| h.c[h.common_level(e, f)].clone())
}

/// A finite tree with nonnegative edge weights, a root, and a designated set
/// of vertices that become the points of the derived triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTree {
    vertices: Vec<String>,
    adjacency: Vec<Vec<(usize, Rational)>>,
    edge_count: usize,
    root: usize,
    leaves: Option<Vec<usize>>,
}

impl WeightedTree {
    /// Checks that the edges form a spanning tree on `vertices` with
    /// nonnegative weights.
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize, Rational)>, root: usize) -> Result<Self> {
        let n = vertices.len();
        let bad = |msg: String| Err(Error::InvalidTree(msg));
        if n == 0 {
            return bad("no vertices".into());
        }
        if root >= n {
            return bad(format!("root index {root} out of range"));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = vertices.iter().find(|v| !seen.insert(v.as_str())) {
            return bad(format!("duplicate vertex {dup:?}"));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v, weight) in &edges {
            if *u >= n || *v >= n {
                return bad(format!("edge ({u}, {v}) refers to a missing vertex"));
            }
            if u == v {
                return bad(format!("self-loop at {:?}", vertices[*u]));
            }
            if weight.is_negative() {
                return bad(format!(
                    "edge {:?} - {:?} has negative weight {weight}",
                    vertices[*u], vertices[*v]
                ));
            }
            adjacency[*u].push((*v, weight.clone()));
            adjacency[*v].push((*u, weight.clone()));
        }
        if edges.len() != n - 1 {
            return bad(format!(
                "{} edges on {n} vertices: a tree needs exactly {}",
                edges.len(),
                n - 1
            ));
        }
        let tree = WeightedTree {
            vertices,
            adjacency,
            edge_count: edges.len(),
            root,
            leaves: None,
        };
        // n - 1 edges plus connectivity rules out cycles
        if let Some(unreached) = tree.reachable_lengths(root).iter().position(Option::is_none) {
            return bad(format!("vertex {:?} is disconnected", tree.vertices[unreached]));
        }
        Ok(tree)
    }

    /// Builds a tree from labelled edges; vertices are collected in order
    /// of first appearance.
    pub fn from_labeled_edges(edges: &[(String, String, Rational)], root: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let index = |label: &str, vertices: &mut Vec<String>| -> usize {
            match vertices.iter().position(|v| v == label) {
                Some(i) => i,
                None => {
                    vertices.push(label.to_string());
                    vertices.len() - 1
                }
            }
        };
        let mut indexed = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            let u = index(u, &mut vertices);
            let v = index(v, &mut vertices);
            indexed.push((u, v, w.clone()));
        }
        if vertices.is_empty() {
            vertices.push(root.to_string());
        }
        let root = vertices
            .iter()
            .position(|v| v == root)
            .ok_or_else(|| Error::InvalidTree(format!("root {root:?} is not a vertex")))?;
        Self::new(vertices, indexed, root)
    }

    /// Overrides the default point set (the vertices of degree at most 1).
    pub fn with_leaves(mut self, leaves: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = leaves.iter().find(|&&l| l >= self.vertices.len()) {
            return Err(Error::InvalidTree(format!("leaf index {bad} out of range")));
        }
        let mut sorted = leaves.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != leaves.len() {
            return Err(Error::InvalidTree("repeated leaf".into()));
        }
        self.leaves = Some(leaves);
        Ok(self)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// The designated points, in the order they will appear in the triple.
    pub fn leafset(&self) -> Vec<usize> {
        match &self.leaves {
            Some(leaves) => leaves.clone(),
            None => (0..self.vertices.len())
                .filter(|&v| self.adjacency[v].len() <= 1)
                .collect(),
        }
    }

    fn reachable_lengths(&self, source: usize) -> Vec<Option<Rational>> {
        let mut lengths = vec![None; self.vertices.len()];
        lengths[source] = Some(Rational::zero());
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            let here = lengths[u].clone().expect("visited");
            for (v, w) in &self.adjacency[u] {
                if lengths[*v].is_none() {
                    lengths[*v] = Some(&here + w);
                    stack.push(*v);
                }
            }
        }
        lengths
    }

    /// Path lengths `λ(source, v)` for every vertex `v`.
    pub fn path_lengths_from(&self, source: usize) -> Vec<Rational> {
        self.reachable_lengths(source)
            .into_iter()
            .map(|l| l.expect("tree is connected"))
            .collect()
    }
}

/// The triple on the tree's point set with `w(x) = λ(x, r)` and
/// `d(x, y) = λ(x, y) - λ(x, r) - λ(y, r)`, so that `PER{x, y} = λ(x, y)`.
pub fn tree_triple(tree: &WeightedTree) -> Result<UltraTriple> {
    let points = tree.leafset();
    let from_root = tree.path_lengths_from(tree.root);
    let labels = points.iter().map(|&v| tree.vertices[v].clone()).collect();
    let weights = points.iter().map(|&v| from_root[v].clone()).collect();
    let rows: Vec<Vec<Rational>> = points.iter().map(|&x| tree.path_lengths_from(x)).collect();
    UltraTriple::from_fn(labels, weights, |i, j| {
        let (x, y) = (points[i], points[j]);
        &rows[i][y] - &from_root[x] - &from_root[y]
    })
}

/// Extends `t` to a full triple with every self-distance equal to `n_self`,
/// which must not exceed any pairwise distance.
pub fn extend_to_full(t: &UltraTriple, n_self: Rational) -> Result<FullUltraTriple> {
    if let Some(min) = t.min_distance() {
        if &n_self > min {
            return Err(Error::InvalidParameter(format!(
                "self-distance {n_self} exceeds the minimum pairwise distance {min}"
            )));
        }
    }
    FullUltraTriple::new(t.clone(), vec![n_self; t.len()])
}

/// Adds `shift` to every off-diagonal distance and keeps the self-distances.
/// The result is a full triple whenever `shift >= 0`; check it with
/// [`FullUltraTriple::validate`] otherwise.
pub fn shift_distances(t: &FullUltraTriple, shift: &Rational) -> FullUltraTriple {
    let base = t.restriction();
    let shifted = UltraTriple::from_fn(base.labels().to_vec(), base.weights().to_vec(), |i, j| {
        base.distance(i, j) + shift
    })
    .expect("same shape as the input");
    FullUltraTriple::new(shifted, t.self_distances().to_vec()).expect("same shape as the input")
}

/// A shift large enough that, after [`shift_distances`], the greedy
/// `m`-subsequences of `c` are exactly the greedy `m`-permutations of `c`
/// in the original triple (when `|c| >= m`).
///
/// With `M` the largest absolute weight or distance inside `c`, every step
/// increment is bounded by `m * M` in absolute value, and a repeated entry
/// forgoes one copy of the shift; `2 m M + 1` therefore separates the two.
pub fn separating_shift(t: &FullUltraTriple, c: PointSet, m: usize) -> Rational {
    let mut bound = Rational::zero();
    for a in c.iter() {
        bound = bound.max(t.weight(a).abs());
        for b in c.iter() {
            bound = bound.max(t.distance(a, b).abs());
        }
    }
    int(2) * int(m as i64) * bound + int(1)
}
