//! One-dimensional C1 quadratic macro-spline machinery.
//!
//! The reference macro interval is `[-1, 1]` with its interior knot at `0`.
//! Everything here is generic over [`Real`](crate::scalar::Real).

mod basis;
mod divided;
mod dual;
mod hermite;
mod world;

pub use basis::{eval_ref_basis, local_pieces, ref_pieces, RefKind, Side};
pub use divided::{divided_difference, KnotSequence};
pub use dual::{eval_dual_weight, integrate_dual_weight, pair_sum, theta, DualWeight, EndpointSide};
pub use hermite::{
    hermite_interpolate_1d, hermite_interpolate_1d_newton, newton_coefficients, newton_pieces,
    HermiteData1D, MacroSpline1D,
};
pub use world::{eval_world_basis, WorldKind};
