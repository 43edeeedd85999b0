//! C1 macro-element interpolation on tensor-product rectangular meshes.
//!
//! The crate provides quadratic C1 macro-spline kernels, full, reduced and
//! quasi-interpolating biquadratic C1 macro-element operators, an anisotropic
//! two-element variant, the bicubic Hermite element, a Shishkin mesh with a
//! composite layer-adapted interpolant, and quadrature-based error, trace and
//! jump norms.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fields;
pub mod interpolation;
pub mod mesh;
pub mod norms;
pub mod oracles;
pub mod poly;
pub mod scalar;
pub mod spline_core;
pub mod study;

pub use error::{Error, Result};
pub use scalar::Real;

pub type HermiteData = spline_core::HermiteData1D<f64>;
pub type MacroSpline = spline_core::MacroSpline1D<f64>;
pub type DualWeightF64 = spline_core::DualWeight<f64>;
pub type KnotSequenceF64 = spline_core::KnotSequence<f64>;
pub type MacroSplineF32 = spline_core::MacroSpline1D<f32>;
