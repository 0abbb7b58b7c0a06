//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type the solvers are generic over (`f32` or `f64`).
///
/// The tolerance hooks let each precision pick thresholds that sit well
/// above its rounding noise.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + ndarray::ScalarOperand
    + 'static
{
    /// Mass at or below this is not counted as part of a support.
    fn support_tol() -> Self;
    /// Allowed deviation of a probability vector's sum from one.
    fn simplex_tol() -> Self;
    /// Slack granted to linear feasibility constraints.
    fn feasibility_tol() -> Self;
    /// Slack granted to zero-sum value certificates.
    fn value_tol() -> Self;
    /// Smallest magnitude accepted as a simplex pivot.
    fn pivot_tol() -> Self;

    /// Lossless-enough conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal fits scalar type")
    }

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize fits scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f64 {
    fn support_tol() -> Self {
        1e-9
    }
    fn simplex_tol() -> Self {
        1e-9
    }
    fn feasibility_tol() -> Self {
        1e-9
    }
    fn value_tol() -> Self {
        1e-6
    }
    fn pivot_tol() -> Self {
        1e-11
    }
}

impl Scalar for f32 {
    fn support_tol() -> Self {
        1e-6
    }
    fn simplex_tol() -> Self {
        1e-5
    }
    fn feasibility_tol() -> Self {
        1e-5
    }
    fn value_tol() -> Self {
        1e-4
    }
    fn pivot_tol() -> Self {
        1e-6
    }
}
