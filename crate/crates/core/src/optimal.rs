//! Exact optimal depth-limited decision trees and the distributional query
//! complexity `D^μ_ε(f)`, by memoized search over restrictions.
//!
//! For a restriction `ρ` and budget `d`:
//!
//! ```text
//! E(ρ, 0) = min_z Pr[f ≠ z | ρ]
//! E(ρ, d) = min(E(ρ, 0), min over free i of Σ_a μᵢ(a)·E(ρ ∪ {i ← a}, d − 1))
//! ```
//!
//! States are the `(k+1)ⁿ` restrictions, so the search is limited by
//! [`Limits::max_oracle_states`] (n ≤ 12 for binary inputs by default).

use std::collections::HashMap;

use crate::distribution::ProductDistribution;
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::limits::Limits;
use crate::restriction::Restriction;
use crate::scalar::Scalar;
use crate::tree::DecisionTree;

/// Memoized search state for one `(f, μ)` pair.
pub struct Oracle<'a, T> {
    f: &'a FiniteFunction,
    mu: &'a ProductDistribution<T>,
    /// Label indices sorted by label value, for tie-breaking.
    label_order: Vec<usize>,
    conditional: Vec<Option<Vec<T>>>,
    errors: HashMap<(usize, usize), T>,
}

impl<'a, T: Scalar> Oracle<'a, T> {
    pub fn new(f: &'a FiniteFunction, mu: &'a ProductDistribution<T>, limits: &Limits) -> Result<Self> {
        mu.check_compatible(f)?;
        let states = limits.oracle_states(f.arity(), f.alphabet())?;
        let mut label_order: Vec<usize> = (0..f.labels().len()).collect();
        label_order.sort_by_key(|&z| f.labels()[z]);
        Ok(Oracle {
            f,
            mu,
            label_order,
            conditional: vec![None; states],
            errors: HashMap::new(),
        })
    }

    /// `Pr[f(X) = z | ρ]` for every label index, memoized: fixing the first
    /// free coordinate splits the conditional law by its marginal.
    fn conditional(&mut self, rho: &mut Restriction) -> Vec<T> {
        let code = rho.code(self.f.alphabet());
        if let Some(d) = &self.conditional[code] {
            return d.clone();
        }
        let first_free = rho.free_coordinates().next();
        let dist = match first_free {
            None => {
                let idx = (0..self.f.arity())
                    .map(|i| rho.get(i).expect("fully fixed") * self.f.stride(i))
                    .sum::<usize>();
                let mut d = vec![T::zero(); self.f.labels().len()];
                d[self.f.value_at(idx)] = T::one();
                d
            }
            Some(i) => {
                let mut d = vec![T::zero(); self.f.labels().len()];
                for a in 0..self.f.alphabet() {
                    rho.set(i, a);
                    let sub = self.conditional(rho);
                    let pa = self.mu.marginal(i)[a].clone();
                    for (acc, s) in d.iter_mut().zip(sub) {
                        *acc = acc.clone() + pa.clone() * s;
                    }
                }
                rho.clear(i);
                d
            }
        };
        self.conditional[code] = Some(dist.clone());
        dist
    }

    /// Best constant answer under `ρ`: `(error, label index)`, smallest
    /// label value on ties.
    fn best_leaf(&mut self, rho: &mut Restriction) -> (T, usize) {
        let dist = self.conditional(rho);
        let mut best = self.label_order[0];
        for &z in &self.label_order[1..] {
            if dist[z] > dist[best] {
                best = z;
            }
        }
        (T::one() - dist[best].clone(), best)
    }

    fn query_value(&mut self, rho: &mut Restriction, i: usize, budget: usize) -> T {
        let mut total = T::zero();
        for a in 0..self.f.alphabet() {
            rho.set(i, a);
            let e = self.error(rho, budget - 1);
            total = total + self.mu.marginal(i)[a].clone() * e;
        }
        rho.clear(i);
        total
    }

    fn error(&mut self, rho: &mut Restriction, budget: usize) -> T {
        let budget = budget.min(rho.free_count());
        if budget == 0 {
            return self.best_leaf(rho).0;
        }
        let key = (rho.code(self.f.alphabet()), budget);
        if let Some(e) = self.errors.get(&key) {
            return e.clone();
        }
        let mut best = self.best_leaf(rho).0;
        let free: Vec<usize> = rho.free_coordinates().collect();
        for i in free {
            let v = self.query_value(rho, i, budget);
            if v < best {
                best = v;
            }
        }
        self.errors.insert(key, best.clone());
        best
    }

    fn check_budget(&self, budget: usize) -> Result<()> {
        if budget > self.f.arity() {
            return Err(Error::Precondition(format!(
                "depth budget {budget} exceeds arity {}",
                self.f.arity()
            )));
        }
        Ok(())
    }

    /// Least error of any valid tree of depth at most `budget`.
    pub fn optimal_error(&mut self, budget: usize) -> Result<T> {
        self.check_budget(budget)?;
        let mut rho = Restriction::free(self.f.arity());
        Ok(self.error(&mut rho, budget))
    }

    /// A tree attaining [`Self::optimal_error`]. Ties prefer answering over
    /// querying, then the smallest coordinate, then the smallest label.
    pub fn optimal_tree(&mut self, budget: usize) -> Result<DecisionTree> {
        self.check_budget(budget)?;
        let mut rho = Restriction::free(self.f.arity());
        Ok(self.extract(&mut rho, budget))
    }

    fn extract(&mut self, rho: &mut Restriction, budget: usize) -> DecisionTree {
        let budget = budget.min(rho.free_count());
        let (leaf_err, leaf_label) = self.best_leaf(rho);
        let leaf = DecisionTree::Leaf(self.f.labels()[leaf_label]);
        if budget == 0 {
            return leaf;
        }
        let mut best: Option<(T, usize)> = None;
        let free: Vec<usize> = rho.free_coordinates().collect();
        for i in free {
            let v = self.query_value(rho, i, budget);
            let threshold = best.as_ref().map_or(&leaf_err, |(b, _)| b);
            if v < *threshold {
                best = Some((v, i));
            }
        }
        match best {
            None => leaf,
            Some((_, i)) => {
                let mut children = Vec::with_capacity(self.f.alphabet());
                for a in 0..self.f.alphabet() {
                    rho.set(i, a);
                    children.push(self.extract(rho, budget - 1));
                }
                rho.clear(i);
                DecisionTree::query(i, children)
            }
        }
    }

    /// Least `q` with `optimal_error(q) ≤ ε`.
    pub fn distributional_complexity(&mut self, epsilon: &T) -> Result<usize> {
        if *epsilon < T::zero() {
            return Err(Error::Domain(format!("epsilon {epsilon:?} is negative")));
        }
        for q in 0..=self.f.arity() {
            if self.optimal_error(q)? <= *epsilon {
                return Ok(q);
            }
        }
        Err(Error::Invariant("full-depth tree does not reach zero error".into()))
    }
}

/// See [`Oracle::optimal_error`].
pub fn optimal_error<T: Scalar>(f: &FiniteFunction, mu: &ProductDistribution<T>, budget: usize) -> Result<T> {
    Oracle::new(f, mu, &Limits::default())?.optimal_error(budget)
}

/// See [`Oracle::optimal_tree`].
pub fn optimal_tree<T: Scalar>(f: &FiniteFunction, mu: &ProductDistribution<T>, budget: usize) -> Result<DecisionTree> {
    Oracle::new(f, mu, &Limits::default())?.optimal_tree(budget)
}

/// `D^μ_ε(f)`: the least worst-case query count of a deterministic
/// algorithm whose error under `μ` is at most `ε`. Any `ε ≥ 0` is accepted.
pub fn distributional_complexity<T: Scalar>(
    f: &FiniteFunction,
    mu: &ProductDistribution<T>,
    epsilon: &T,
) -> Result<usize> {
    Oracle::new(f, mu, &Limits::default())?.distributional_complexity(epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{standard, Standard};
    use crate::scalar::rat;
    use crate::tree::distributional_error;
    use crate::Rat;

    fn uniform(n: usize) -> ProductDistribution<Rat> {
        ProductDistribution::uniform(n, 2).unwrap()
    }

    #[test]
    fn optimal_error_examples() {
        let parity = standard(Standard::Parity, 3).unwrap();
        let mu = uniform(3);
        for q in 0..3 {
            assert_eq!(optimal_error(&parity, &mu, q).unwrap(), rat(1, 2));
        }
        assert_eq!(optimal_error(&parity, &mu, 3).unwrap(), rat(0, 1));
        let and = standard(Standard::And, 2).unwrap();
        assert_eq!(optimal_error(&and, &uniform(2), 0).unwrap(), rat(1, 4));
        // Q(x₁,[0, x₂-guess]) and Leaf(0) both err 1/4; no depth-1 tree does better
        assert_eq!(optimal_error(&and, &uniform(2), 1).unwrap(), rat(1, 4));
        assert_eq!(optimal_error(&and, &uniform(2), 2).unwrap(), rat(0, 1));
        assert!(matches!(
            optimal_error(&and, &uniform(2), 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn complexity_examples() {
        let parity = standard(Standard::Parity, 3).unwrap();
        let mu = uniform(3);
        assert_eq!(distributional_complexity(&parity, &mu, &rat(0, 1)).unwrap(), 3);
        assert_eq!(distributional_complexity(&parity, &mu, &rat(1, 4)).unwrap(), 3);
        assert_eq!(distributional_complexity(&parity, &mu, &rat(1, 2)).unwrap(), 0);
        let and = standard(Standard::And, 2).unwrap();
        assert_eq!(distributional_complexity(&and, &uniform(2), &rat(1, 4)).unwrap(), 0);
        let c = standard(Standard::Constant(0), 3).unwrap();
        assert_eq!(
            distributional_complexity(&c, &ProductDistribution::bernoulli(3, rat(1, 3)).unwrap(), &rat(0, 1)).unwrap(),
            0
        );
    }

    #[test]
    fn witness_trees() {
        let and = standard(Standard::And, 2).unwrap();
        let mu = uniform(2);
        assert_eq!(optimal_tree(&and, &mu, 0).unwrap(), DecisionTree::Leaf(0));
        let t = optimal_tree(&and, &mu, 2).unwrap();
        assert_eq!(distributional_error(&t, &and, &mu).unwrap(), rat(0, 1));
        let parity = standard(Standard::Parity, 3).unwrap();
        let t = optimal_tree(&parity, &uniform(3), 2).unwrap();
        assert_eq!(distributional_error(&t, &parity, &uniform(3)).unwrap(), rat(1, 2));
        // answering is preferred when querying does not help
        assert!(t.is_leaf());
        // tie between labels goes to the smaller one
        let p2 = standard(Standard::Parity, 2).unwrap();
        assert_eq!(optimal_tree(&p2, &uniform(2), 0).unwrap(), DecisionTree::Leaf(0));
    }

    #[test]
    fn capacity_error() {
        let f = standard(Standard::Parity, 4).unwrap();
        let mu = uniform(4);
        let limits = Limits {
            max_oracle_states: 80,
            ..Limits::default()
        };
        assert!(matches!(Oracle::new(&f, &mu, &limits), Err(Error::Capacity { .. })));
    }
}
