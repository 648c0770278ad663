//! Deterministic query algorithms as read-once decision trees, and finite
//! mixtures of them.

use std::fmt;

use crate::distribution::ProductDistribution;
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::restriction::Restriction;
use crate::scalar::{is_positive, Scalar};

/// A decision tree over `{0,…,k−1}ⁿ`. Coordinates are 0-based in memory and
/// 1-based in every text format.
///
/// A valid tree has exactly `k` children at every query node and never
/// queries a coordinate twice on one root-to-leaf path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DecisionTree {
    Leaf(i64),
    Query {
        coordinate: usize,
        children: Vec<DecisionTree>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    RepeatedCoordinate,
    CoordinateOutOfRange { arity: usize },
    ChildCount { expected: usize, found: usize },
}

/// First structural defect found by [`DecisionTree::validate`]. `path` lists
/// the coordinates queried from the root down to and including the
/// offending node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: Vec<usize>,
    pub kind: ViolationKind,
}

impl Violation {
    /// The path in 1-based coordinates joined by `→`, e.g. `1→1`.
    pub fn path_string(&self) -> String {
        self.path
            .iter()
            .map(|c| (c + 1).to_string())
            .collect::<Vec<_>>()
            .join("→")
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.path.last().map_or(0, |c| c + 1);
        match &self.kind {
            ViolationKind::RepeatedCoordinate => {
                write!(f, "coordinate {last} queried twice on path {}", self.path_string())
            }
            ViolationKind::CoordinateOutOfRange { arity } => write!(
                f,
                "coordinate {last} out of range 1..={arity} on path {}",
                self.path_string()
            ),
            ViolationKind::ChildCount { expected, found } => write!(
                f,
                "query node has {found} children, expected {expected}, on path {}",
                self.path_string()
            ),
        }
    }
}

impl DecisionTree {
    pub fn query(coordinate: usize, children: Vec<DecisionTree>) -> Self {
        DecisionTree::Query { coordinate, children }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, DecisionTree::Leaf(_))
    }

    /// Checks read-once paths, child counts and coordinate ranges for
    /// inputs in `{0,…,k−1}ⁿ`. Returns the first violation in pre-order.
    pub fn validate(&self, arity: usize, alphabet: usize) -> std::result::Result<(), Violation> {
        let mut used = vec![false; arity];
        let mut path = Vec::new();
        self.validate_at(arity, alphabet, &mut used, &mut path)
    }

    fn validate_at(
        &self,
        arity: usize,
        alphabet: usize,
        used: &mut [bool],
        path: &mut Vec<usize>,
    ) -> std::result::Result<(), Violation> {
        let DecisionTree::Query { coordinate, children } = self else {
            return Ok(());
        };
        let c = *coordinate;
        path.push(c);
        if c >= arity {
            return Err(Violation {
                path: path.clone(),
                kind: ViolationKind::CoordinateOutOfRange { arity },
            });
        }
        if used[c] {
            return Err(Violation {
                path: path.clone(),
                kind: ViolationKind::RepeatedCoordinate,
            });
        }
        if children.len() != alphabet {
            return Err(Violation {
                path: path.clone(),
                kind: ViolationKind::ChildCount {
                    expected: alphabet,
                    found: children.len(),
                },
            });
        }
        used[c] = true;
        for child in children {
            child.validate_at(arity, alphabet, used, path)?;
        }
        used[c] = false;
        path.pop();
        Ok(())
    }

    /// Validation against the shape of `f`, as an [`Error`].
    pub fn check_for(&self, f: &FiniteFunction) -> Result<()> {
        self.validate(f.arity(), f.alphabet()).map_err(Error::InvalidTree)
    }

    /// Runs the algorithm on `x`: returns the output label and the
    /// coordinates queried, in order.
    pub fn run(&self, x: &[usize]) -> Result<(i64, Vec<usize>)> {
        let mut node = self;
        let mut queries = Vec::new();
        loop {
            match node {
                DecisionTree::Leaf(z) => return Ok((*z, queries)),
                DecisionTree::Query { coordinate, children } => {
                    let s = *x.get(*coordinate).ok_or_else(|| {
                        Error::Shape(format!(
                            "tree queries coordinate {} but input has length {}",
                            coordinate + 1,
                            x.len()
                        ))
                    })?;
                    node = children.get(s).ok_or_else(|| {
                        Error::Shape(format!("symbol {s} has no branch at coordinate {}", coordinate + 1))
                    })?;
                    queries.push(*coordinate);
                }
            }
        }
    }

    /// Worst-case number of queries.
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { children, .. } => 1 + children.iter().map(DecisionTree::depth).max().unwrap_or(0),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Query { children, .. } => 1 + children.iter().map(DecisionTree::node_count).sum::<usize>(),
        }
    }

    /// Error of this subtree conditioned on reaching it with `rho`.
    fn conditional_error<T: Scalar>(
        &self,
        f: &FiniteFunction,
        mu: &ProductDistribution<T>,
        rho: &mut Restriction,
    ) -> T {
        match self {
            DecisionTree::Leaf(z) => match f.label_index(*z) {
                Some(zi) => T::one() - rho.conditional_output_distribution(f, mu)[zi].clone(),
                None => T::one(),
            },
            DecisionTree::Query { coordinate, children } => {
                let i = *coordinate;
                let mut total = T::zero();
                for (a, (child, pa)) in children.iter().zip(mu.marginal(i)).enumerate() {
                    rho.set(i, a);
                    total = total + pa.clone() * child.conditional_error(f, mu, rho);
                }
                rho.clear(i);
                total
            }
        }
    }
}

/// `Pr_X[t(X) ≠ f(X)]` under `μ`, exact.
///
/// Computed top-down: a query node averages its children by the queried
/// marginal, a leaf contributes the conditional probability that `f`
/// disagrees with its label given the path so far.
pub fn distributional_error<T: Scalar>(t: &DecisionTree, f: &FiniteFunction, mu: &ProductDistribution<T>) -> Result<T> {
    mu.check_compatible(f)?;
    t.check_for(f)?;
    let mut rho = Restriction::free(f.arity());
    Ok(t.conditional_error(f, mu, &mut rho))
}

/// Expected number of queries made on `X ~ μ`.
pub fn expected_queries<T: Scalar>(t: &DecisionTree, mu: &ProductDistribution<T>) -> Result<T> {
    t.validate(mu.arity(), mu.alphabet()).map_err(Error::InvalidTree)?;
    fn go<T: Scalar>(t: &DecisionTree, mu: &ProductDistribution<T>) -> T {
        match t {
            DecisionTree::Leaf(_) => T::zero(),
            DecisionTree::Query { coordinate, children } => children
                .iter()
                .zip(mu.marginal(*coordinate))
                .fold(T::one(), |acc, (c, p)| acc + p.clone() * go(c, mu)),
        }
    }
    Ok(go(t, mu))
}

/// A finite mixture of decision trees with positive weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomizedTree<T> {
    components: Vec<(T, DecisionTree)>,
}

impl<T: Scalar> RandomizedTree<T> {
    pub fn new(components: Vec<(T, DecisionTree)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Shape("randomized tree has no components".into()));
        }
        if !components.iter().all(|(w, _)| is_positive(w)) {
            return Err(Error::Domain("mixture weights must be positive".into()));
        }
        let total = components.iter().fold(T::zero(), |acc, (w, _)| acc + w.clone());
        if !total.near(&T::one()) {
            return Err(Error::Domain(format!("mixture weights sum to {total:?}, not 1")));
        }
        Ok(RandomizedTree { components })
    }

    pub fn components(&self) -> &[(T, DecisionTree)] {
        &self.components
    }

    pub fn into_components(self) -> Vec<(T, DecisionTree)> {
        self.components
    }

    pub fn depth(&self) -> usize {
        self.components.iter().map(|(_, t)| t.depth()).max().unwrap_or(0)
    }
}

/// Weighted average of the components' distributional errors.
pub fn randomized_error<T: Scalar>(
    rt: &RandomizedTree<T>,
    f: &FiniteFunction,
    mu: &ProductDistribution<T>,
) -> Result<T> {
    rt.components().iter().try_fold(T::zero(), |acc, (w, t)| {
        Ok(acc + w.clone() * distributional_error(t, f, mu)?)
    })
}

/// Every valid tree of depth at most `max_depth` over `{0,…,k−1}ⁿ` with the
/// given leaf labels, in a fixed order: leaves first, then query nodes by
/// coordinate, children varying fastest in the last branch.
///
/// The count grows doubly exponentially; keep `arity` and `max_depth` small.
pub fn enumerate_trees(arity: usize, alphabet: usize, labels: &[i64], max_depth: usize) -> Vec<DecisionTree> {
    fn go(used: &mut Vec<bool>, alphabet: usize, labels: &[i64], depth: usize) -> Vec<DecisionTree> {
        let mut out: Vec<DecisionTree> = labels.iter().map(|&z| DecisionTree::Leaf(z)).collect();
        if depth == 0 {
            return out;
        }
        for c in 0..used.len() {
            if used[c] {
                continue;
            }
            used[c] = true;
            let subtrees = go(used, alphabet, labels, depth - 1);
            used[c] = false;
            let mut combos: Vec<Vec<DecisionTree>> = vec![Vec::new()];
            for _ in 0..alphabet {
                combos = combos
                    .into_iter()
                    .flat_map(|prefix| {
                        subtrees.iter().map(move |s| {
                            let mut p = prefix.clone();
                            p.push(s.clone());
                            p
                        })
                    })
                    .collect();
            }
            out.extend(combos.into_iter().map(|children| DecisionTree::query(c, children)));
        }
        out
    }
    go(&mut vec![false; arity], alphabet, labels, max_depth)
}
