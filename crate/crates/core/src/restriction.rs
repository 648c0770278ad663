//! Partial assignments of input coordinates.

use crate::distribution::ProductDistribution;
use crate::function::FiniteFunction;
use crate::scalar::Scalar;

/// Each coordinate is either free or fixed to a symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Restriction {
    fixed: Vec<Option<usize>>,
}

impl Restriction {
    /// All coordinates free.
    pub fn free(arity: usize) -> Self {
        Restriction {
            fixed: vec![None; arity],
        }
    }

    pub fn arity(&self) -> usize {
        self.fixed.len()
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.fixed[i]
    }

    pub fn is_free(&self, i: usize) -> bool {
        self.fixed[i].is_none()
    }

    pub fn free_coordinates(&self) -> impl Iterator<Item = usize> + '_ {
        self.fixed
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(i, _)| i)
    }

    pub fn free_count(&self) -> usize {
        self.fixed.iter().filter(|v| v.is_none()).count()
    }

    pub fn set(&mut self, i: usize, a: usize) {
        self.fixed[i] = Some(a);
    }

    pub fn clear(&mut self, i: usize) {
        self.fixed[i] = None;
    }

    pub fn with(&self, i: usize, a: usize) -> Self {
        let mut r = self.clone();
        r.set(i, a);
        r
    }

    /// Dense key in `0..(k+1)ⁿ`: digit 0 for free, `a + 1` for fixed to `a`.
    pub fn code(&self, alphabet: usize) -> usize {
        self.fixed
            .iter()
            .fold(0, |acc, v| acc * (alphabet + 1) + v.map_or(0, |a| a + 1))
    }

    /// `Pr[f(X) = z | X agrees with this restriction]` for every label,
    /// by enumerating the completions of the free coordinates. Free
    /// coordinates keep their marginals.
    pub fn conditional_output_distribution<T: Scalar>(
        &self,
        f: &FiniteFunction,
        mu: &ProductDistribution<T>,
    ) -> Vec<T> {
        let k = f.alphabet();
        let base = self
            .fixed
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|a| a * f.stride(i)))
            .sum::<usize>();
        let free: Vec<usize> = self.free_coordinates().collect();
        let mut dist = vec![T::zero(); f.labels().len()];
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut idx = base;
            let mut w = T::one();
            for (&i, &a) in free.iter().zip(&digits) {
                idx += a * f.stride(i);
                w = w * mu.marginal(i)[a].clone();
            }
            let z = f.value_at(idx);
            dist[z] = dist[z].clone() + w;

            // odometer over the free coordinates
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    return dist;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < k {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}
