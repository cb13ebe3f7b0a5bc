//! Exact and floating-point scalars for fractional evaluation.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Zero};

/// Exact rational scalar.
pub type Rational = Ratio<i64>;

/// Ordered field elements used to evaluate constraints at fractional points.
pub trait Scalar: Num + Copy + PartialOrd + Debug + Display + FromPrimitive + Send + Sync {
    /// `self ≤ other` up to the scalar's rounding tolerance.
    fn le_tol(self, other: Self) -> bool;

    /// `self = other` up to the scalar's rounding tolerance.
    fn eq_tol(self, other: Self) -> bool;

    fn from_usize(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("integer fits the scalar type")
    }
}

impl Scalar for f64 {
    fn le_tol(self, other: Self) -> bool {
        self <= other + 1e-9
    }

    fn eq_tol(self, other: Self) -> bool {
        (self - other).abs() <= 1e-9
    }
}

impl Scalar for Ratio<i64> {
    fn le_tol(self, other: Self) -> bool {
        self <= other
    }

    fn eq_tol(self, other: Self) -> bool {
        (self - other).is_zero()
    }
}

impl Scalar for i64 {
    fn le_tol(self, other: Self) -> bool {
        self <= other
    }

    fn eq_tol(self, other: Self) -> bool {
        self == other
    }
}
