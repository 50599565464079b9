//! Scalar abstraction shared by every geometric routine.
//!
//! The construction only guarantees its invariants under exact arithmetic,
//! so the crate root fixes [`crate::Rat`] as the default scalar. The generic
//! bound exists so the predicates can also be exercised with `f64` or
//! `Ratio<i64>` when exactness is not a concern (plots, quick experiments).

use std::cmp::Ordering;
use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Ordered field used for coordinates.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / Self::two()
    }

    /// Lossy conversion for rendering and reporting.
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Total comparison; panics on incomparable values (NaN).
    fn cmp_total(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("scalar values must be comparable")
    }

    /// Largest integer not above `self`.
    fn floor_int(&self) -> Self;
}

impl Scalar for f64 {
    fn floor_int(&self) -> Self {
        self.floor()
    }
}

impl Scalar for f32 {
    fn floor_int(&self) -> Self {
        self.floor()
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Debug + Integer + Signed + FromPrimitive + ToPrimitive,
    Ratio<T>: FromPrimitive + ToPrimitive,
{
    fn floor_int(&self) -> Self {
        self.floor()
    }
}

pub fn max_of<S: Scalar>(a: &S, b: &S) -> S {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min_of<S: Scalar>(a: &S, b: &S) -> S {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Largest integer not above `a`.
pub fn floor<S: Scalar>(a: &S) -> S {
    a.floor_int()
}

/// Rational with the smallest denominator (then numerator) strictly between
/// `a` and `b`, found through continued fractions. Falls back to the midpoint
/// when the scalar cannot represent the expansion exactly (floats).
pub fn simplest_between<S: Scalar>(a: &S, b: &S) -> S {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let found = if lo.is_negative() && hi.is_positive() {
        Some(S::zero())
    } else if !hi.is_positive() {
        simplest_nonneg(&-hi.clone(), &Some(-lo.clone()), 0).map(|x| -x)
    } else {
        simplest_nonneg(lo, &Some(hi.clone()), 0)
    };
    match found {
        Some(x) if &x > lo && &x < hi => x,
        _ => S::midpoint(lo, hi),
    }
}

/// Smallest integer strictly above `a`.
pub fn next_integer<S: Scalar>(a: &S) -> S {
    floor(a) + S::one()
}

// `a >= 0`, `b = None` stands for infinity.
fn simplest_nonneg<S: Scalar>(a: &S, b: &Option<S>, depth: usize) -> Option<S> {
    if depth > 200 {
        return None;
    }
    let fl = floor(a);
    let n = fl.clone() + S::one();
    match b {
        None => return Some(n),
        Some(b) if &n < b => return Some(n),
        _ => {}
    }
    let b = b.as_ref().expect("finite here");
    let inv_b = S::one() / (b.clone() - fl.clone());
    let frac = a.clone() - fl.clone();
    let inv_a = if frac.is_zero() { None } else { Some(S::one() / frac) };
    let inner = simplest_nonneg(&inv_b, &inv_a, depth + 1)?;
    Some(fl + S::one() / inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn midpoint_is_exact_for_rationals() {
        let a = Rat::from_int(1);
        let b = Rat::from_int(2);
        assert_eq!(Rat::midpoint(&a, &b), Rat::new(3.into(), 2.into()));
    }

    #[test]
    fn works_for_floats() {
        assert_eq!(<f64 as Scalar>::midpoint(&1.0, &2.0), 1.5);
        assert_eq!(max_of(&1.0, &-3.0), 1.0);
        assert_eq!(min_of(&1.0, &-3.0), -3.0);
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn floors() {
        assert_eq!(floor(&q(7, 2)), q(3, 1));
        assert_eq!(floor(&q(-7, 2)), q(-4, 1));
        assert_eq!(floor(&q(4, 1)), q(4, 1));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&q(1, 3), &q(1, 2)), q(2, 5));
        assert_eq!(simplest_between(&q(3, 1), &q(5, 1)), q(4, 1));
        assert_eq!(simplest_between(&q(3, 1), &q(4, 1)), q(7, 2));
        assert_eq!(simplest_between(&q(-1, 2), &q(1, 3)), q(0, 1));
        assert_eq!(simplest_between(&q(-1, 2), &q(-1, 3)), q(-2, 5));
        assert_eq!(simplest_between(&q(314, 100), &q(315, 100)), q(22, 7));
        assert_eq!(next_integer(&q(5, 2)), q(3, 1));
        assert_eq!(next_integer(&q(3, 1)), q(4, 1));
    }

    #[test]
    fn floats_fall_back_or_stay_inside() {
        let x = simplest_between(&0.1f64, &0.2f64);
        assert!(x > 0.1 && x < 0.2);
    }
}
