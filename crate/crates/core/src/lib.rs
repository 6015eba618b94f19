//! Ultra triples and the greedy maximum-perimeter algorithm.
//!
//! An *ultra triple* is a finite set of points with a weight on every point
//! and a symmetric distance on every pair of distinct points satisfying the
//! ultrametric inequality `d(a, b) <= max(d(a, c), d(b, c))`. The perimeter
//! of a subset is the sum of its weights plus all its pairwise distances.
//!
//! On ultra triples, picking points one at a time so that each pick
//! maximizes the perimeter so far produces a maximum-perimeter subset of
//! every size. This crate implements that algorithm and the structure
//! around it:
//!
//! * [`triple`]: the triple types, validation, perimeters and projections;
//! * [`constructions`]: standard families (p-adic, modular, equivalence
//!   hierarchies, trees, ...);
//! * [`greedy`]: greedy permutations and subsequences, and the increments
//!   `ν̄_k`, `ν_k`;
//! * [`greedoid`]: the Bhargava greedoid and checkers for greedoid and
//!   matroid axioms;
//! * [`bhargava`]: p-adic valuations and `(p, m)`-orderings of integers;
//! * [`oracle`]: exhaustive reference implementations and a random triple
//!   generator;
//! * [`io`]: the JSON and text file formats used by the command-line tool.
//!
//! All arithmetic is exact, over [`Rational`].
//!
//! ```
//! use ultragreedy::constructions::mod_triple;
//! use ultragreedy::greedy::greedy_permutation;
//! use ultragreedy::rational::int;
//!
//! // points 1..=5, distance 1 for equal parity and 2 otherwise
//! let t = mod_triple(&[1, 2, 3, 4, 5], 2, int(1), int(2), vec![int(0); 5])?;
//! let trace = greedy_permutation(&t, t.ground()?, 3)?;
//! assert_eq!(trace.points(), [0, 1, 2]);
//! assert_eq!(trace.prefix_perimeters().last(), Some(&int(5)));
//! # Ok::<(), ultragreedy::Error>(())
//! ```

pub mod bhargava;
pub mod constructions;
pub mod error;
pub mod greedoid;
pub mod greedy;
pub mod io;
pub mod oracle;
pub mod pointset;
pub mod rational;
pub mod triple;

pub use error::{Error, Result};
pub use pointset::PointSet;
pub use rational::Rational;
pub use triple::{FullUltraTriple, UltraTriple, ValidationReport, Violation};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ultra-triples.md")]
    mod ultra_triples {}
    #[doc = include_str!("../../../book/src/perimeters.md")]
    mod perimeters {}
    #[doc = include_str!("../../../book/src/greedy.md")]
    mod greedy {}
    #[doc = include_str!("../../../book/src/greedoid.md")]
    mod greedoid {}
    #[doc = include_str!("../../../book/src/subsequences.md")]
    mod subsequences {}
    #[doc = include_str!("../../../book/src/p-orderings.md")]
    mod p_orderings {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
