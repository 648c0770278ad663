//! Product distributions with independent, possibly different, marginals.

use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::scalar::{is_positive, Scalar};

/// `μ₁ ⊗ … ⊗ μₙ` over `{0,…,k−1}ⁿ`.
///
/// Every marginal sums to one and gives strictly positive mass to every
/// symbol. Zero-probability symbols are rejected: with them an influential
/// coordinate can have influence zero and the lower bound degenerates.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductDistribution<T> {
    marginals: Vec<Vec<T>>,
}

impl<T: Scalar> ProductDistribution<T> {
    pub fn new(marginals: Vec<Vec<T>>) -> Result<Self> {
        let width = match marginals.first() {
            Some(m) => m.len(),
            None => return Err(Error::Shape("distribution needs at least one coordinate".into())),
        };
        if width < 2 {
            return Err(Error::Shape(format!("alphabet size must be at least 2, got {width}")));
        }
        for (j, m) in marginals.iter().enumerate() {
            if m.len() != width {
                return Err(Error::Shape(format!(
                    "marginal {} has {} entries, expected {width}",
                    j + 1,
                    m.len()
                )));
            }
            if !m.iter().all(is_positive) {
                return Err(Error::Domain(format!(
                    "marginal {} has a non-positive probability; full support is required",
                    j + 1
                )));
            }
            let total = m.iter().fold(T::zero(), |acc, p| acc + p.clone());
            if !total.near(&T::one()) {
                return Err(Error::Domain(format!("marginal {} sums to {total:?}, not 1", j + 1)));
            }
        }
        Ok(ProductDistribution { marginals })
    }

    pub fn uniform(arity: usize, alphabet: usize) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::Shape("alphabet size must be at least 2, got 0".into()));
        }
        let p = T::one() / T::from_usize_exact(alphabet);
        Self::new(vec![vec![p; alphabet]; arity])
    }

    /// Binary product distribution with `Pr[symbol 1] = p` on every coordinate.
    ///
    /// Under the ±1 convention (symbol 1 ↔ −1) this is the distribution on
    /// `{−1,+1}ⁿ` that picks −1 with probability `p` at each coordinate.
    pub fn bernoulli(arity: usize, p: T) -> Result<Self> {
        let q = T::one() - p.clone();
        Self::new(vec![vec![q, p]; arity])
    }

    pub fn arity(&self) -> usize {
        self.marginals.len()
    }

    pub fn alphabet(&self) -> usize {
        self.marginals[0].len()
    }

    pub fn marginals(&self) -> &[Vec<T>] {
        &self.marginals
    }

    /// Marginal of coordinate `i` (0-based).
    pub fn marginal(&self, i: usize) -> &[T] {
        &self.marginals[i]
    }

    /// `μ(x)` for a full input.
    pub fn mass(&self, x: &[usize]) -> T {
        x.iter()
            .zip(&self.marginals)
            .fold(T::one(), |acc, (&s, m)| acc * m[s].clone())
    }

    /// `μ(x)` for every input, in table-index order.
    pub fn point_masses(&self) -> Vec<T> {
        let mut masses = vec![T::one()];
        for m in &self.marginals {
            let mut next = Vec::with_capacity(masses.len() * m.len());
            for w in &masses {
                for p in m {
                    next.push(w.clone() * p.clone());
                }
            }
            masses = next;
        }
        masses
    }

    pub fn check_compatible(&self, f: &FiniteFunction) -> Result<()> {
        if self.arity() != f.arity() || self.alphabet() != f.alphabet() {
            return Err(Error::Shape(format!(
                "distribution has shape (n={}, k={}), function has (n={}, k={})",
                self.arity(),
                self.alphabet(),
                f.arity(),
                f.alphabet()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rat;
    use num_traits::One;

    #[test]
    fn point_masses_follow_index_order() {
        let mu = ProductDistribution::new(vec![vec![rat(1, 4), rat(3, 4)], vec![rat(1, 2), rat(1, 2)]]).unwrap();
        let m = mu.point_masses();
        assert_eq!(m, vec![rat(1, 8), rat(1, 8), rat(3, 8), rat(3, 8)]);
        assert_eq!(mu.mass(&[1, 0]), rat(3, 8));
        assert_eq!(m.iter().fold(Rat::from_integer(0.into()), |a, b| a + b), Rat::one());
    }

    #[test]
    fn rejects_bad_marginals() {
        let zero = ProductDistribution::new(vec![vec![rat(0, 1), rat(1, 1)]]);
        assert!(matches!(zero, Err(Error::Domain(_))));
        let short = ProductDistribution::new(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 1)]]);
        assert!(matches!(short, Err(Error::Shape(_))));
        let sum = ProductDistribution::new(vec![vec![rat(1, 2), rat(1, 3)]]);
        assert!(matches!(sum, Err(Error::Domain(_))));
        assert!(ProductDistribution::<Rat>::new(vec![]).is_err());
        assert!(ProductDistribution::bernoulli(2, rat(1, 1)).is_err());
    }

    #[test]
    fn float_instance_accepts_rounded_sums() {
        let mu = ProductDistribution::<f64>::uniform(3, 3).unwrap();
        assert_eq!(mu.point_masses().len(), 27);
    }
}
