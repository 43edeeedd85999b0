//! Interpolation operators on rectangular macro-element meshes.

mod composite;
mod macro_ops;
mod mesh_ops;
mod poly2d;
mod quasi;

pub use composite::{build_composite, CompositeInterpolant, NodeModification};
pub use macro_ops::{
    aniso_data, divided_diff_2d, interp_aniso, interp_aniso_data, interp_bfs, interp_full_macro, interp_full_macro_data,
    interp_full_macro_newton, interp_full_macro_newton_data, interp_reduced_macro, nodal_q2, AnisoData, DividedDiff2DTable,
    MacroFunctionals16,
};
pub use mesh_ops::{assemble_node_data, interp_aniso_mesh, interp_bfs_mesh, interp_full, interp_reduced, nodal_q2_mesh, NodeData};
pub use poly2d::{ElemPoly, PiecewisePoly2D};
pub use quasi::{dual_mean, quasi_coefficients, quasi_interp};
