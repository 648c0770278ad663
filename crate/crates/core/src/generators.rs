//! Standard functions: tribes and its perturbation, dictators, AND, OR,
//! parity, majority and constants. All are binary with labels `[0, 1]`.

use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::limits::Limits;
use crate::scalar::Scalar;
use crate::Rat;

const BINARY: [i64; 2] = [0, 1];

/// OR of `s` AND-blocks of width `t` on `n = s·t` inputs. Block `j` covers
/// the consecutive coordinates `j·t+1 ..= (j+1)·t` (1-based).
pub fn tribes(s: usize, t: usize) -> Result<FiniteFunction> {
    tribes_with_limits(s, t, &Limits::default())
}

pub fn tribes_with_limits(s: usize, t: usize, limits: &Limits) -> Result<FiniteFunction> {
    if s == 0 || t == 0 {
        return Err(Error::Domain(format!("tribes needs s, t ≥ 1, got ({s}, {t})")));
    }
    let n = s.checked_mul(t).ok_or_else(|| Error::Capacity {
        what: "truth table",
        needed: format!("2^({s}·{t}) entries"),
        limit: limits.max_table_len,
    })?;
    FiniteFunction::from_rule(n, 2, BINARY.to_vec(), limits, |x| {
        x.chunks(t).any(|block| block.iter().all(|&b| b == 1)) as usize
    })
}

/// Influence of every coordinate of `tribes(s, t)` under the uniform
/// distribution: `2^{−t}·(1 − 2^{−t})^{s−1}`.
///
/// Re-sampling `xᵢ` changes the value only if the rest of its block is all
/// ones, no other block is all ones, and the fresh bit differs
/// (`2^{−(t−1)} · (1 − 2^{−t})^{s−1} · 1/2`).
pub fn tribes_influence_closed_form<T: Scalar>(s: usize, t: usize) -> T {
    let two = T::from_usize_exact(2);
    let block_ones = (0..t).fold(T::one(), |acc, _| acc / two.clone());
    let block_not_ones = T::one() - block_ones.clone();
    (1..s).fold(block_ones, |acc, _| acc * block_not_ones.clone())
}

/// `Pr[tribes(s, t) = 1] = 1 − (1 − 2^{−t})^s` under the uniform distribution.
pub fn tribes_one_probability<T: Scalar>(s: usize, t: usize) -> T {
    let two = T::from_usize_exact(2);
    let block_ones = (0..t).fold(T::one(), |acc, _| acc / two.clone());
    let block_not_ones = T::one() - block_ones;
    T::one() - (0..s).fold(T::one(), |acc, _| acc * block_not_ones.clone())
}

/// Tribes on `n` inputs with the factorization `n = s·t` whose uniform
/// `Pr[f = 1]` is closest to 1/2 (larger `t` on ties). Exact balance is
/// generally not attainable at a fixed `n`.
pub fn tribes_auto(n: usize) -> Result<(usize, usize, FiniteFunction, Rat)> {
    if n < 2 {
        return Err(Error::Domain(format!("tribes_auto needs n ≥ 2, got {n}")));
    }
    let half = Rat::new(1.into(), 2.into());
    let mut best: Option<(usize, usize, Rat, Rat)> = None;
    for t in 1..=n {
        if !n.is_multiple_of(t) {
            continue;
        }
        let s = n / t;
        let p: Rat = tribes_one_probability(s, t);
        let dist = (p.clone() - half.clone()).abs();
        let better = match &best {
            None => true,
            Some((_, _, _, d)) => dist <= *d,
        };
        if better {
            best = Some((s, t, p, dist));
        }
    }
    let (s, t, p, _) = best.expect("t = n always divides n");
    Ok((s, t, tribes(s, t)?, p))
}

/// Replaces `f(x)` by `x₁` on the first `⌊δ·2ⁿ⌋` inputs in table order and
/// keeps `g` elsewhere. Symbol `a` of `x₁` maps to label index `a` of `g`.
///
/// Because `x₁` is the most significant coordinate, every replaced input
/// has `x₁ = 0` as long as `δ ≤ 1/2`.
pub fn perturb_tribes(g: &FiniteFunction, delta: &Rat) -> Result<FiniteFunction> {
    if g.alphabet() != 2 || g.labels().len() != 2 {
        return Err(Error::Domain(
            "perturbation needs a two-valued function on binary inputs".into(),
        ));
    }
    if delta.is_negative() || *delta > Rat::one() {
        return Err(Error::Domain(format!("delta {delta} is outside [0, 1]")));
    }
    let count = (delta * Rat::from_integer(g.len().into()))
        .floor()
        .to_integer()
        .to_usize()
        .expect("count is at most the table length");
    let mut table = g.table().to_vec();
    for (idx, entry) in table.iter_mut().enumerate().take(count) {
        *entry = g.symbol_at(idx, 0);
    }
    FiniteFunction::new(g.arity(), 2, g.labels().to_vec(), table)
}

/// Named members of the standard test family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standard {
    /// `f(x) = x_j` for the 0-based coordinate `j`.
    Dictator(usize),
    And,
    Or,
    Parity,
    /// Requires odd `n`.
    Majority,
    Constant(usize),
}

impl FromStr for Standard {
    type Err = Error;

    /// `and`, `or`, `parity`, `majority`, `dictator` (coordinate 1),
    /// `dictator:J` (1-based), `constant` (label 0), `constant:L` (L ∈ {0,1}).
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let number = |a: &str| {
            a.parse::<usize>()
                .map_err(|_| Error::Domain(format!("bad parameter '{a}' in '{s}'")))
        };
        match (name, arg) {
            ("and", None) => Ok(Standard::And),
            ("or", None) => Ok(Standard::Or),
            ("parity", None) => Ok(Standard::Parity),
            ("majority", None) => Ok(Standard::Majority),
            ("dictator", None) => Ok(Standard::Dictator(0)),
            ("dictator", Some(a)) => match number(a)? {
                0 => Err(Error::Domain("dictator coordinates are 1-based".into())),
                j => Ok(Standard::Dictator(j - 1)),
            },
            ("constant", None) => Ok(Standard::Constant(0)),
            ("constant", Some(a)) => Ok(Standard::Constant(number(a)?)),
            _ => Err(Error::Domain(format!("unknown function name '{s}'"))),
        }
    }
}

pub fn standard(kind: Standard, n: usize) -> Result<FiniteFunction> {
    standard_with_limits(kind, n, &Limits::default())
}

pub fn standard_with_limits(kind: Standard, n: usize, limits: &Limits) -> Result<FiniteFunction> {
    if n == 0 {
        return Err(Error::Domain("arity must be positive".into()));
    }
    let labels = BINARY.to_vec();
    match kind {
        Standard::Dictator(j) if j >= n => Err(Error::Domain(format!(
            "dictator coordinate {} out of range 1..={n}",
            j + 1
        ))),
        Standard::Dictator(j) => FiniteFunction::from_rule(n, 2, labels, limits, |x| x[j]),
        Standard::And => FiniteFunction::from_rule(n, 2, labels, limits, |x| x.iter().all(|&b| b == 1) as usize),
        Standard::Or => FiniteFunction::from_rule(n, 2, labels, limits, |x| x.contains(&1) as usize),
        Standard::Parity => FiniteFunction::from_rule(n, 2, labels, limits, |x| x.iter().sum::<usize>() % 2),
        Standard::Majority if n.is_multiple_of(2) => Err(Error::Domain(format!("majority needs odd n, got {n}"))),
        Standard::Majority => {
            FiniteFunction::from_rule(n, 2, labels, limits, |x| (2 * x.iter().sum::<usize>() > n) as usize)
        }
        Standard::Constant(z) if z > 1 => Err(Error::Domain(format!("constant label {z} is not 0 or 1"))),
        Standard::Constant(z) => FiniteFunction::from_rule(n, 2, labels, limits, |_| z),
    }
}

/// Number of table entries on which `a` and `b` differ.
pub fn disagreements(a: &FiniteFunction, b: &FiniteFunction) -> usize {
    a.table().iter().zip(b.table()).filter(|(x, y)| x != y).count()
}
