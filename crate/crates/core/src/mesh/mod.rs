//! Tensor-product element and macro-element meshes, the Shishkin mesh with
//! region labels and edge types, and edge selection for the quasi-interpolant.

mod edges;
mod grid;
mod macro_mesh;
mod shishkin;
mod sigma;

pub use edges::{classify_edges, EdgeInfo, EdgeOrientation, EdgeType};
pub use grid::Grid1D;
pub use macro_mesh::{build_macro_mesh, MacroMesh, MacroRect, SplitAxis, TwoElementMacro};
pub use shishkin::{build_shishkin, transition_point, MacroCell, Region, ShishkinMesh};
pub use sigma::{
    custom_sigma, patch_range, select_sigma, select_sigma_shishkin, verify_sigma, Corner, CornerSigma, SigmaDir, SigmaReport,
    SigmaSelection, SigmaStrategy,
};
