//! Query elimination on decision trees.
//!
//! The first query of a tree is replaced by an independent fresh sample of
//! the queried coordinate, giving a mixture of the root's subtrees weighted
//! by that coordinate's marginal. Its error exceeds the original error by at
//! most the coordinate's influence: the mixture errs on `X` exactly when
//! the original tree errs against `f(X)` on `Xⁱ`, and `Xⁱ` has the same law
//! as `X`. Picking the best component removes the randomness without
//! increasing the error. Repeating until no query is left yields a constant
//! algorithm, whose error is at least the plurality error.

use crate::bounds::lower_bound_value;
use crate::distribution::ProductDistribution;
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::measures::{influence, max_influence, plurality_error};
use crate::scalar::{argmin, Scalar};
use crate::tree::{distributional_error, randomized_error, DecisionTree, RandomizedTree};

/// Record of one elimination step. Coordinates are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationStep<T> {
    pub eliminated_coordinate: usize,
    pub influence_of_coordinate: T,
    pub error_before: T,
    pub error_randomized: T,
    pub chosen_symbol: usize,
    pub error_after: T,
    pub depth_before: usize,
    pub depth_after: usize,
}

/// The full chain from the input tree down to a zero-query tree.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationTranscript<T> {
    pub epsilon: T,
    pub initial_depth: usize,
    pub initial_error: T,
    pub steps: Vec<EliminationStep<T>>,
    pub final_tree: DecisionTree,
    pub final_error: T,
    pub plurality_error: T,
    pub inf_max: T,
    /// `max(0, (plurality_error − ε) / inf_max)`, or 0 when `inf_max = 0`.
    pub implied_lower_bound: T,
}

impl<T: Scalar> EliminationTranscript<T> {
    pub fn influence_sum(&self) -> T {
        self.steps
            .iter()
            .fold(T::zero(), |acc, s| acc + s.influence_of_coordinate.clone())
    }
}

/// Replaces the root query by a fresh sample: the mixture
/// `{(μᵢ(a), children[a])}`.
pub fn eliminate_root<T: Scalar>(t: &DecisionTree, mu: &ProductDistribution<T>) -> Result<RandomizedTree<T>> {
    t.validate(mu.arity(), mu.alphabet()).map_err(Error::InvalidTree)?;
    match t {
        DecisionTree::Leaf(_) => Err(Error::Precondition("tree makes no query; nothing to eliminate".into())),
        DecisionTree::Query { coordinate, children } => RandomizedTree::new(
            mu.marginal(*coordinate)
                .iter()
                .cloned()
                .zip(children.iter().cloned())
                .collect(),
        ),
    }
}

/// Fixes the coins of a mixture: returns the component with the least
/// error (first on ties) and its index.
pub fn derandomize<T: Scalar>(
    rt: &RandomizedTree<T>,
    f: &FiniteFunction,
    mu: &ProductDistribution<T>,
) -> Result<(DecisionTree, T, usize)> {
    let errors = rt
        .components()
        .iter()
        .map(|(_, t)| distributional_error(t, f, mu))
        .collect::<Result<Vec<_>>>()?;
    let best = argmin(&errors).ok_or_else(|| Error::Shape("randomized tree has no components".into()))?;
    Ok((rt.components()[best].1.clone(), errors[best].clone(), best))
}

/// One elimination: [`eliminate_root`] followed by [`derandomize`]. The
/// inequalities `error_randomized ≤ error_before + infᵢ` and
/// `error_after ≤ error_randomized` are checked exactly; a failure is
/// reported as [`Error::Invariant`].
pub fn eliminate_step<T: Scalar>(
    t: &DecisionTree,
    f: &FiniteFunction,
    mu: &ProductDistribution<T>,
) -> Result<(DecisionTree, EliminationStep<T>)> {
    mu.check_compatible(f)?;
    t.check_for(f)?;
    let DecisionTree::Query { coordinate, .. } = t else {
        return Err(Error::Precondition("tree has depth 0; nothing to eliminate".into()));
    };
    let i = *coordinate;
    let error_before = distributional_error(t, f, mu)?;
    let inf_i = influence(f, mu, i)?;
    let mixture = eliminate_root(t, mu)?;
    let error_randomized = randomized_error(&mixture, f, mu)?;
    if error_randomized > error_before.clone() + inf_i.clone() {
        return Err(Error::Invariant(format!(
            "eliminating coordinate {} raised the error from {error_before:?} to {error_randomized:?}, \
             more than its influence {inf_i:?}",
            i + 1
        )));
    }
    let (next, error_after, chosen) = derandomize(&mixture, f, mu)?;
    if error_after > error_randomized {
        return Err(Error::Invariant(format!(
            "best component error {error_after:?} exceeds the mixture error {error_randomized:?}"
        )));
    }
    let depth_before = t.depth();
    let depth_after = next.depth();
    if depth_after >= depth_before {
        return Err(Error::Invariant(format!(
            "elimination did not reduce depth ({depth_before} to {depth_after})"
        )));
    }
    let step = EliminationStep {
        eliminated_coordinate: i,
        influence_of_coordinate: inf_i,
        error_before,
        error_randomized,
        chosen_symbol: chosen,
        error_after,
        depth_before,
        depth_after,
    };
    Ok((next, step))
}

/// Eliminates queries until none remain.
///
/// `epsilon` is the declared error of `t`; it must be at least the true
/// error. The number of steps can be smaller than `depth(t)` when the
/// chosen subtree is shallower than its siblings, so the chain certifies
/// `final_error ≤ initial_error + steps·inf_max ≤ ε + depth(t)·inf_max`.
pub fn full_eliminate<T: Scalar>(
    t: &DecisionTree,
    f: &FiniteFunction,
    mu: &ProductDistribution<T>,
    epsilon: T,
) -> Result<EliminationTranscript<T>> {
    mu.check_compatible(f)?;
    t.check_for(f)?;
    if epsilon < T::zero() {
        return Err(Error::Domain(format!("epsilon {epsilon:?} is negative")));
    }
    let initial_error = distributional_error(t, f, mu)?;
    if initial_error > epsilon {
        return Err(Error::Precondition(format!(
            "declared error {epsilon:?} is below the tree's true error {initial_error:?}"
        )));
    }
    let mut current = t.clone();
    let mut steps = Vec::new();
    while !current.is_leaf() {
        let (next, step) = eliminate_step(&current, f, mu)?;
        steps.push(step);
        current = next;
    }
    let final_error = match steps.last() {
        Some(s) => s.error_after.clone(),
        None => initial_error.clone(),
    };
    let plurality = plurality_error(f, mu)?;
    if final_error < plurality {
        return Err(Error::Invariant(format!(
            "zero-query tree error {final_error:?} is below the plurality error {plurality:?}"
        )));
    }
    let (inf_max, _) = max_influence(f, mu)?;
    let implied_lower_bound = lower_bound_value(&plurality, &epsilon, &inf_max);
    Ok(EliminationTranscript {
        epsilon,
        initial_depth: t.depth(),
        initial_error,
        steps,
        final_tree: current,
        final_error,
        plurality_error: plurality,
        inf_max,
        implied_lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{standard, tribes, Standard};
    use crate::scalar::rat;
    use crate::Rat;

    fn leaf(z: i64) -> DecisionTree {
        DecisionTree::Leaf(z)
    }
    fn q(c: usize, children: Vec<DecisionTree>) -> DecisionTree {
        DecisionTree::query(c, children)
    }
    fn uniform(n: usize) -> ProductDistribution<Rat> {
        ProductDistribution::uniform(n, 2).unwrap()
    }
    fn parity_tree(n: usize, from: usize, acc: usize) -> DecisionTree {
        if from == n {
            return leaf(acc as i64);
        }
        q(from, (0..2).map(|b| parity_tree(n, from + 1, acc ^ b)).collect())
    }

    #[test]
    fn eliminate_root_examples() {
        let dict = q(0, vec![leaf(0), leaf(1)]);
        let rt = eliminate_root(&dict, &uniform(1)).unwrap();
        assert_eq!(rt.components(), &[(rat(1, 2), leaf(0)), (rat(1, 2), leaf(1))]);

        let biased = ProductDistribution::bernoulli(2, rat(3, 4)).unwrap();
        let t = q(1, vec![leaf(0), q(0, vec![leaf(0), leaf(1)])]);
        let rt = eliminate_root(&t, &biased).unwrap();
        let weights: Vec<Rat> = rt.components().iter().map(|(w, _)| w.clone()).collect();
        assert_eq!(weights, vec![rat(1, 4), rat(3, 4)]);

        let parity2 = standard(Standard::Parity, 2).unwrap();
        let rt = eliminate_root(&parity_tree(2, 0, 0), &uniform(2)).unwrap();
        assert!(rt.components().iter().all(|(_, c)| c.depth() == 1));
        assert_eq!(randomized_error(&rt, &parity2, &uniform(2)).unwrap(), rat(1, 2));

        assert!(matches!(
            eliminate_root(&leaf(0), &uniform(2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn derandomize_examples() {
        let and2 = standard(Standard::And, 2).unwrap();
        let mu = uniform(2);
        let coin = RandomizedTree::new(vec![(rat(1, 2), leaf(0)), (rat(1, 2), leaf(1))]).unwrap();
        assert_eq!(derandomize(&coin, &and2, &mu).unwrap(), (leaf(0), rat(1, 4), 0));
        let single = RandomizedTree::new(vec![(rat(1, 1), leaf(1))]).unwrap();
        assert_eq!(derandomize(&single, &and2, &mu).unwrap().0, leaf(1));
        let parity2 = standard(Standard::Parity, 2).unwrap();
        let tie = RandomizedTree::new(vec![(rat(1, 2), leaf(1)), (rat(1, 2), leaf(0))]).unwrap();
        assert_eq!(derandomize(&tie, &parity2, &mu).unwrap(), (leaf(1), rat(1, 2), 0));
    }

    #[test]
    fn step_on_dictator_is_tight() {
        let f = standard(Standard::Dictator(0), 2).unwrap();
        let t = q(0, vec![leaf(0), leaf(1)]);
        let (next, step) = eliminate_step(&t, &f, &uniform(2)).unwrap();
        assert!(next.is_leaf());
        assert_eq!(step.error_before, rat(0, 1));
        assert_eq!(step.eliminated_coordinate, 0);
        assert_eq!(step.influence_of_coordinate, rat(1, 2));
        assert_eq!(step.error_randomized, rat(1, 2));
        assert_eq!(step.error_after, rat(1, 2));
    }

    #[test]
    fn step_on_and() {
        let f = standard(Standard::And, 2).unwrap();
        let t = q(0, vec![leaf(0), q(1, vec![leaf(0), leaf(1)])]);
        let (next, step) = eliminate_step(&t, &f, &uniform(2)).unwrap();
        assert_eq!(step.influence_of_coordinate, rat(1, 4));
        // Leaf(0) errs 1/4, the x₂ subtree errs 1/4; the tie keeps Leaf(0).
        assert_eq!(step.error_randomized, rat(1, 4));
        assert_eq!(step.error_after, rat(1, 4));
        assert_eq!(next, leaf(0));
        assert_eq!(step.chosen_symbol, 0);
    }

    #[test]
    fn steps_on_constant_change_nothing() {
        let f = standard(Standard::Constant(0), 3).unwrap();
        let t = q(2, vec![q(0, vec![leaf(0), leaf(0)]), leaf(0)]);
        let (_, step) = eliminate_step(&t, &f, &uniform(3)).unwrap();
        assert_eq!(step.influence_of_coordinate, rat(0, 1));
        assert_eq!(step.error_before, step.error_after);
        assert!(matches!(
            eliminate_step(&leaf(0), &f, &uniform(3)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn full_elimination_examples() {
        let f = standard(Standard::Parity, 3).unwrap();
        let mu = uniform(3);
        let tr = full_eliminate(&leaf(0), &f, &mu, rat(1, 2)).unwrap();
        assert!(tr.steps.is_empty());
        assert_eq!(tr.final_error, tr.initial_error);

        let tr = full_eliminate(&parity_tree(3, 0, 0), &f, &mu, rat(0, 1)).unwrap();
        assert_eq!(tr.steps.len(), 3);
        assert!(tr.steps.iter().all(|s| s.influence_of_coordinate == rat(1, 2)));
        assert_eq!(tr.plurality_error, rat(1, 2));
        assert!(tr.final_error >= rat(1, 2));
        assert_eq!(tr.implied_lower_bound, rat(1, 1));

        assert!(matches!(
            full_eliminate(&leaf(0), &f, &mu, rat(1, 4)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn full_elimination_of_tribes() {
        let g = tribes(2, 2).unwrap();
        let mu = uniform(4);
        // read block 1, and block 2 only when block 1 is not all ones
        let block2 = q(2, vec![leaf(0), q(3, vec![leaf(0), leaf(1)])]);
        let t = q(0, vec![block2.clone(), q(1, vec![block2, leaf(1)])]);
        assert_eq!(t.depth(), 4);
        assert_eq!(distributional_error(&t, &g, &mu).unwrap(), rat(0, 1));
        let tr = full_eliminate(&t, &g, &mu, rat(0, 1)).unwrap();
        assert!(tr.steps.len() <= 4);
        assert_eq!(tr.plurality_error, rat(7, 16));
        assert!(tr.final_error >= rat(7, 16));
        assert!(tr.influence_sum() >= rat(7, 16));
        assert!(tr.final_error <= tr.initial_error.clone() + tr.influence_sum());

        // the full-depth tree reads every coordinate on every path
        let full = crate::optimal::optimal_tree(&g, &mu, 4).unwrap();
        let full = pad_to_full_depth(&full, &mut [false; 4]);
        assert_eq!(distributional_error(&full, &g, &mu).unwrap(), rat(0, 1));
        let tr = full_eliminate(&full, &g, &mu, rat(0, 1)).unwrap();
        assert_eq!(tr.steps.len(), 4);
        assert!(tr.final_error >= rat(7, 16));
        assert!(tr.influence_sum() >= rat(7, 16));
    }

    /// Replaces each leaf by a query of the next unused coordinate with
    /// identical leaves until every path reads every coordinate.
    fn pad_to_full_depth(t: &DecisionTree, used: &mut [bool]) -> DecisionTree {
        match t {
            DecisionTree::Leaf(z) => match used.iter().position(|u| !u) {
                None => leaf(*z),
                Some(c) => {
                    used[c] = true;
                    let child = pad_to_full_depth(t, used);
                    used[c] = false;
                    q(c, vec![child.clone(), child])
                }
            },
            DecisionTree::Query { coordinate, children } => {
                used[*coordinate] = true;
                let kids = children.iter().map(|c| pad_to_full_depth(c, used)).collect();
                used[*coordinate] = false;
                q(*coordinate, kids)
            }
        }
    }
}
