//! The influence lower bound on distributional query complexity and its
//! smoothed form via a nearby function.

use crate::distribution::ProductDistribution;
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::measures::{closeness, max_influence, plurality_error, variance_ratio, RatioValue};
use crate::scalar::{is_positive, Scalar};

/// Lower bound on `D^μ_ε(f)`, with the quantities it is built from.
/// `inf_argmax` is 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub plurality_error: T,
    pub inf_max: T,
    pub inf_argmax: usize,
    pub epsilon: T,
    pub bound: T,
    /// `(Var[f], Var[f]/inf_max)` for two-valued functions. Informational.
    pub variance_ratio: Option<(T, RatioValue<T>)>,
}

/// `max(0, (plurality − ε) / inf_max)`, and 0 when `inf_max = 0`. Under
/// full support `inf_max = 0` forces `f` to be constant.
pub fn lower_bound_value<T: Scalar>(plurality: &T, epsilon: &T, inf_max: &T) -> T {
    if !is_positive(inf_max) {
        return T::zero();
    }
    let num = plurality.clone() - epsilon.clone();
    if num > T::zero() {
        num / inf_max.clone()
    } else {
        T::zero()
    }
}

fn check_epsilon<T: Scalar>(epsilon: &T) -> Result<()> {
    if *epsilon < T::zero() {
        return Err(Error::Domain(format!("epsilon {epsilon:?} is negative")));
    }
    Ok(())
}

/// `D^μ_ε(f) ≥ (1 − max_z Pr[f(X)=z] − ε) / inf_max(f, μ)`.
///
/// `ε` may exceed 1, in which case the bound is 0; this lets the smoothed
/// bound pass `ε + δ` through unchanged.
pub fn theorem1_bound<T: Scalar>(
    f: &FiniteFunction,
    mu: &ProductDistribution<T>,
    epsilon: T,
) -> Result<BoundReport<T>> {
    check_epsilon(&epsilon)?;
    let plurality = plurality_error(f, mu)?;
    let (inf_max, inf_argmax) = max_influence(f, mu)?;
    let bound = lower_bound_value(&plurality, &epsilon, &inf_max);
    let variance_ratio = if f.labels().len() == 2 {
        Some(variance_ratio(f, mu)?)
    } else {
        None
    };
    Ok(BoundReport {
        plurality_error: plurality,
        inf_max,
        inf_argmax,
        epsilon,
        bound,
        variance_ratio,
    })
}

/// Smoothed bound: with `δ = Pr[f(X) ≠ g(X)]`,
/// `D^μ_ε(f) ≥ D^μ_{ε+δ}(g) ≥ (1 − max_z Pr[g(X)=z] − ε − δ) / inf_max(g, μ)`.
/// Returns `δ` and the report for `g` at error `ε + δ`.
pub fn corollary_bound<T: Scalar>(
    f: &FiniteFunction,
    g: &FiniteFunction,
    mu: &ProductDistribution<T>,
    epsilon: T,
) -> Result<(T, BoundReport<T>)> {
    check_epsilon(&epsilon)?;
    let delta = closeness(f, g, mu)?;
    let report = theorem1_bound(g, mu, epsilon + delta.clone())?;
    Ok((delta, report))
}

/// Evaluates the smoothed bound for each candidate `g` and keeps the
/// largest (first on ties). Callers normally include `f` itself, which
/// reproduces the unsmoothed bound.
pub fn best_bound<T: Scalar>(
    f: &FiniteFunction,
    candidates: &[FiniteFunction],
    mu: &ProductDistribution<T>,
    epsilon: T,
) -> Result<(usize, T, BoundReport<T>)> {
    let mut best: Option<(usize, T, BoundReport<T>)> = None;
    for (idx, g) in candidates.iter().enumerate() {
        let (delta, report) = corollary_bound(f, g, mu, epsilon.clone())?;
        let better = match &best {
            None => true,
            Some((_, _, b)) => report.bound > b.bound,
        };
        if better {
            best = Some((idx, delta, report));
        }
    }
    best.ok_or_else(|| Error::Precondition("no candidate functions given".into()))
}
