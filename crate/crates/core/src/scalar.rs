//! Scalar abstraction for the one-dimensional kernels.

use num_traits::{Float, FromPrimitive};
use std::fmt::Debug;

/// Floating point type usable by the generic kernels (f32 or f64).
pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` literal into `Self`.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in target float type")
    }
}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Send + Sync + 'static {}
