//! Scalar abstraction for probability arithmetic.
//!
//! Every probability computation in this crate is generic over [`Scalar`].
//! The command-line tool and all reported values use the exact rational
//! instance [`Rat`](crate::Rat); `f64`/`f32` are available for quick
//! approximate work and compare sums with a small tolerance.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};

pub trait Scalar: Num + Clone + Debug + PartialOrd + FromPrimitive + Send + Sync + 'static {
    /// Equality used when checking that a marginal sums to one.
    /// Exact for rationals.
    fn near(&self, other: &Self) -> bool {
        self == other
    }

    /// `num / den` in this scalar type. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self {
        let n = Self::from_i64(num).expect("integer fits scalar");
        let d = Self::from_i64(den).expect("integer fits scalar");
        n / d
    }

    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("integer fits scalar")
    }
}

impl Scalar for BigRational {}

impl Scalar for f64 {
    fn near(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-9 * self.abs().max(other.abs()).max(1.0)
    }
}

impl Scalar for f32 {
    fn near(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-5 * self.abs().max(other.abs()).max(1.0)
    }
}

/// `v > 0`; false for NaN.
pub(crate) fn is_positive<T: Scalar>(v: &T) -> bool {
    *v > T::zero()
}

/// Maximum of a non-empty sequence of partially ordered values; the first
/// maximal element wins ties.
pub(crate) fn argmax<T: PartialOrd>(values: &[T]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, v) in values.iter().enumerate() {
        match best {
            Some(b) if v.partial_cmp(&values[b]) != Some(Ordering::Greater) => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Minimum with the same tie rule as [`argmax`].
pub(crate) fn argmin<T: PartialOrd>(values: &[T]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, v) in values.iter().enumerate() {
        match best {
            Some(b) if v.partial_cmp(&values[b]) != Some(Ordering::Less) => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `num/den`, always with an explicit denominator.
pub fn format_rat(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_is_reduced() {
        let r = rat(6, -8);
        assert_eq!(format_rat(&r), "-3/4");
        assert_eq!(format_rat(&rat(0, 5)), "0/1");
        assert_eq!(format_rat(&rat(4, 4)), "1/1");
    }

    #[test]
    fn arg_extrema_tie_to_first() {
        assert_eq!(argmax(&[1, 3, 3, 2]), Some(1));
        assert_eq!(argmin(&[2, 1, 5, 1]), Some(1));
        assert_eq!(argmax::<i32>(&[]), None);
    }

    #[test]
    fn float_near_tolerates_rounding() {
        let s: f64 = (0..10).map(|_| 0.1).sum();
        assert!(s.near(&1.0));
        assert!(!0.9f64.near(&1.0));
        assert!(!BigRational::from_ratio(1, 3).near(&rat(333, 1000)));
    }
}
