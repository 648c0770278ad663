//! Exact probabilistic quantities of a function under a product distribution:
//! output distribution, plurality error, influences, variance and closeness.

use crate::distribution::ProductDistribution;
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::scalar::{argmax, Scalar};

/// `Pr[f(X) = z]` for every output label, indexed like `f.labels()`.
pub fn output_distribution<T: Scalar>(f: &FiniteFunction, mu: &ProductDistribution<T>) -> Result<Vec<T>> {
    mu.check_compatible(f)?;
    let mut dist = vec![T::zero(); f.labels().len()];
    for (idx, w) in mu.point_masses().into_iter().enumerate() {
        let z = f.value_at(idx);
        dist[z] = dist[z].clone() + w;
    }
    Ok(dist)
}

/// `1 − max_z Pr[f(X) = z]`, the least error of any zero-query algorithm.
pub fn plurality_error<T: Scalar>(f: &FiniteFunction, mu: &ProductDistribution<T>) -> Result<T> {
    let dist = output_distribution(f, mu)?;
    let top = argmax(&dist).expect("label set is non-empty");
    Ok(T::one() - dist[top].clone())
}

fn check_coordinate(f: &FiniteFunction, i: usize) -> Result<()> {
    if i >= f.arity() {
        return Err(Error::Shape(format!(
            "coordinate {} out of range 1..={}",
            i + 1,
            f.arity()
        )));
    }
    Ok(())
}

/// `infᵢ(f, μ) = Pr[f(X) ≠ f(Xⁱ)]`, where `Xⁱ` re-samples coordinate `i`
/// (0-based) independently from its marginal.
pub fn influence<T: Scalar>(f: &FiniteFunction, mu: &ProductDistribution<T>, i: usize) -> Result<T> {
    mu.check_compatible(f)?;
    check_coordinate(f, i)?;
    let marginal = mu.marginal(i);
    let mut total = T::zero();
    for (idx, w) in mu.point_masses().into_iter().enumerate() {
        let here = f.value_at(idx);
        let mut flip = T::zero();
        for (a, pa) in marginal.iter().enumerate() {
            if f.value_at(f.with_symbol(idx, i, a)) != here {
                flip = flip + pa.clone();
            }
        }
        total = total + w * flip;
    }
    Ok(total)
}

/// All influences, coordinate order.
pub fn influences<T: Scalar>(f: &FiniteFunction, mu: &ProductDistribution<T>) -> Result<Vec<T>> {
    (0..f.arity()).map(|i| influence(f, mu, i)).collect()
}

/// `(inf_max, i)` with `i` the smallest 0-based coordinate attaining the maximum.
pub fn max_influence<T: Scalar>(f: &FiniteFunction, mu: &ProductDistribution<T>) -> Result<(T, usize)> {
    let infs = influences(f, mu)?;
    let i = argmax(&infs).expect("arity is positive");
    Ok((infs[i].clone(), i))
}

/// Distribution of `f(Xⁱ)`, computed by averaging over the fresh sample for
/// coordinate `i`. It always equals [`output_distribution`]: `Xⁱ` has the
/// same law as `X`.
pub fn resampled_output_distribution<T: Scalar>(
    f: &FiniteFunction,
    mu: &ProductDistribution<T>,
    i: usize,
) -> Result<Vec<T>> {
    mu.check_compatible(f)?;
    check_coordinate(f, i)?;
    let marginal = mu.marginal(i);
    let mut dist = vec![T::zero(); f.labels().len()];
    for (idx, w) in mu.point_masses().into_iter().enumerate() {
        for (a, pa) in marginal.iter().enumerate() {
            let z = f.value_at(f.with_symbol(idx, i, a));
            dist[z] = dist[z].clone() + w.clone() * pa.clone();
        }
    }
    Ok(dist)
}

/// `var / inf_max`, or infinite when `inf_max = 0 < var`.
#[derive(Debug, Clone, PartialEq)]
pub enum RatioValue<T> {
    Finite(T),
    Infinite,
}

/// Variance of the ±1 image of a two-valued `f`, i.e. `4·p₀·p₁`, and its
/// ratio to `inf_max`. The ratio is informational only; `0/0` is reported as 0.
pub fn variance_ratio<T: Scalar>(f: &FiniteFunction, mu: &ProductDistribution<T>) -> Result<(T, RatioValue<T>)> {
    if f.labels().len() != 2 {
        return Err(Error::Domain(format!(
            "variance ratio needs exactly two output labels, function has {}",
            f.labels().len()
        )));
    }
    let dist = output_distribution(f, mu)?;
    let four = T::from_usize_exact(4);
    let var = four * dist[0].clone() * dist[1].clone();
    let (inf_max, _) = max_influence(f, mu)?;
    let ratio = if inf_max > T::zero() {
        RatioValue::Finite(var.clone() / inf_max)
    } else if var > T::zero() {
        RatioValue::Infinite
    } else {
        RatioValue::Finite(T::zero())
    };
    Ok((var, ratio))
}

/// `Pr[f(X) ≠ g(X)]`. Outputs are compared by label value, so `f` and `g`
/// may list their labels in different orders.
pub fn closeness<T: Scalar>(f: &FiniteFunction, g: &FiniteFunction, mu: &ProductDistribution<T>) -> Result<T> {
    f.same_shape(g)?;
    mu.check_compatible(f)?;
    let mut total = T::zero();
    for (idx, w) in mu.point_masses().into_iter().enumerate() {
        if f.labels()[f.value_at(idx)] != g.labels()[g.value_at(idx)] {
            total = total + w;
        }
    }
    Ok(total)
}
