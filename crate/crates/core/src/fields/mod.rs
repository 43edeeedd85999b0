//! Analytic scalar fields with exact partial derivatives, and manufactured
//! layer decompositions on the unit square.

mod field;
mod fn1d;
mod layers;

pub use field::{make_polynomial_field, make_smooth_field, ExpXY, PolyField, ScalarField, SeparableSum, SMOOTH_FIELDS};
pub use fn1d::Fn1D;
pub use layers::{make_layer_decomposition, make_layer_decomposition_with, LayerConfig, LayerDecomposition, SmoothKind};

use crate::error::{Error, Result};
use std::sync::Arc;

/// Looks up a field by name. `epsilon` and `c_star` parametrise the layer field.
pub fn field_by_name(name: &str, epsilon: f64, c_star: f64) -> Result<Arc<dyn ScalarField>> {
    match name {
        "layer" => Ok(Arc::new(make_layer_decomposition(epsilon, c_star)?)),
        "layer_trig" => Ok(Arc::new(make_layer_decomposition_with(
            epsilon,
            c_star,
            LayerConfig { smooth: SmoothKind::Trig, ..LayerConfig::default() },
        )?)),
        other => make_smooth_field(other).map(|f| f as Arc<dyn ScalarField>).map_err(|_| Error::UnknownName(name.into())),
    }
}
