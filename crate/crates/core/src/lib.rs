//! Exact influences, query elimination and distributional query complexity
//! for functions on small finite product spaces.
//!
//! A deterministic query algorithm with distributional error `ε` under a
//! product distribution `μ` needs at least
//! `(1 − max_z Pr[f(X)=z] − ε) / inf_max(f, μ)` queries. This crate
//! computes both sides exactly: the bound ([`bounds`]) and the true
//! complexity by exhaustive memoized search ([`optimal`]). It also runs the
//! argument behind the bound as a program ([`elimination`]): the first query
//! of a decision tree is replaced by a fresh sample, the resulting mixture
//! is derandomized, and the process repeats until no query is left.
//!
//! All arithmetic is generic over [`Scalar`]; the exact instance [`Rat`] is
//! the one used by the command-line tool and for every equality check.

pub mod bounds;
pub mod distribution;
pub mod elimination;
pub mod error;
pub mod format;
pub mod function;
pub mod generators;
pub mod limits;
pub mod measures;
pub mod optimal;
pub mod restriction;
pub mod scalar;
pub mod tree;
pub mod verify;

pub use bounds::{best_bound, corollary_bound, theorem1_bound, BoundReport};
pub use distribution::ProductDistribution;
pub use elimination::{
    derandomize, eliminate_root, eliminate_step, full_eliminate, EliminationStep, EliminationTranscript,
};
pub use error::{Error, Result};
pub use function::FiniteFunction;
pub use limits::Limits;
pub use measures::{
    closeness, influence, influences, max_influence, output_distribution, plurality_error,
    resampled_output_distribution, variance_ratio, RatioValue,
};
pub use optimal::{distributional_complexity, optimal_error, optimal_tree, Oracle};
pub use restriction::Restriction;
pub use scalar::{format_rat, rat, Scalar};
pub use tree::{distributional_error, expected_queries, randomized_error, DecisionTree, RandomizedTree, Violation};

/// Exact rational probability.
pub type Rat = num_rational::BigRational;

/// Product distribution with exact rational marginals.
pub type ExactDistribution = ProductDistribution<Rat>;
/// Product distribution with `f64` marginals, for approximate work.
pub type FloatDistribution = ProductDistribution<f64>;

pub type ExactMixture = RandomizedTree<Rat>;
pub type ExactTranscript = EliminationTranscript<Rat>;
pub type ExactBoundReport = BoundReport<Rat>;
