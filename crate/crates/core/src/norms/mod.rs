//! Quadrature-based norms, seminorms, edge norms and jump sums.

mod quadrature;
mod report;
mod sobolev;

pub use quadrature::QuadratureRule;
pub use report::{norm_report, NormReport, RegionNorms};
pub use sobolev::{
    all_elements, edge_jump_sq, edge_l2, element_sq, jump_norm_sum, linf_sampled, max_value_jump, normal_alpha, pairwise_sum, seminorm,
    seminorm_sq, Difference, Seminorm,
};
