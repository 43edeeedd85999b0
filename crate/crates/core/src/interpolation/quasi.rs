use super::mesh_ops::{assemble_node_data, NodeData};
use super::poly2d::PiecewisePoly2D;
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::mesh::{MacroMesh, SigmaDir, SigmaSelection};
use crate::norms::QuadratureRule;
use crate::spline_core::{eval_dual_weight, DualWeight, EndpointSide};

/// Weighted mean `∫_σ u_xy w` of the mixed derivative along the edge selected
/// at node `(i, j)`, with `w` the dual weight of that node. Five-point Gauss
/// on each half of the edge.
pub fn dual_mean<F: ScalarField + ?Sized>(field: &F, mesh: &MacroMesh, sel: &SigmaSelection, i: usize, j: usize, rule: &QuadratureRule<f64>) -> Result<f64> {
    let ((ax, ay), (bx, by)) = sel.edge(mesh, i, j);
    let side = match sel.dir(i, j) {
        SigmaDir::Left | SigmaDir::Down => EndpointSide::Right,
        SigmaDir::Right | SigmaDir::Up => EndpointSide::Left,
    };
    let horizontal = sel.dir(i, j).is_horizontal();
    let (lo, hi) = if horizontal { (ax, bx) } else { (ay, by) };
    let w = DualWeight::new(lo, hi, side)?;
    let mid = w.midpoint();
    let mut acc = 0.0;
    for (a, b) in [(lo, mid), (mid, hi)] {
        for (s, ws) in rule.mapped(a, b) {
            let uxy = if horizontal { field.d(1, 1, s, ay) } else { field.d(1, 1, ax, s) };
            acc += ws * uxy * eval_dual_weight(&w, s)?;
        }
    }
    Ok(acc)
}

/// Nodal data of the quasi-interpolant: point values and first derivatives,
/// and weighted edge means in place of the mixed derivative.
pub fn quasi_coefficients<F: ScalarField + ?Sized>(field: &F, mesh: &MacroMesh, sel: &SigmaSelection) -> Result<NodeData> {
    if sel.nodes_x != mesh.macro_x.len() || sel.nodes_y != mesh.macro_y.len() {
        return Err(Error::Sigma { i: sel.nodes_x, j: sel.nodes_y, reason: "selection does not match the macro grid".into() });
    }
    let rule = QuadratureRule::gauss_legendre(5);
    let mut d = NodeData::sample(field, &mesh.macro_x, &mesh.macro_y);
    for j in 0..d.ny {
        for i in 0..d.nx {
            let k = d.idx(i, j);
            d.uxy[k] = dual_mean(field, mesh, sel, i, j, &rule)?;
        }
    }
    Ok(d)
}

/// Quasi-interpolant: the reduced interpolant plus the weighted edge means
/// as coefficients of the mixed basis functions.
pub fn quasi_interp<F: ScalarField + ?Sized>(field: &F, mesh: &MacroMesh, sel: &SigmaSelection) -> Result<PiecewisePoly2D> {
    assemble_node_data(mesh, &quasi_coefficients(field, mesh, sel)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_polynomial_field;
    use crate::mesh::{build_macro_mesh, select_sigma, Corner, Grid1D, SigmaStrategy};

    #[test]
    fn xy_has_unit_coefficients() {
        let u = make_polynomial_field(&[vec![0.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let g = Grid1D::uniform(0.0, 1.0, 4).unwrap();
        let m = build_macro_mesh(&g, &g);
        let s = select_sigma(&m, SigmaStrategy::TowardCorner, Corner::LowerLeft);
        let d = quasi_coefficients(&u, &m, &s).unwrap();
        assert!(d.uxy.iter().all(|a| (a - 1.0).abs() < 1e-13));
        let p = quasi_interp(&u, &m, &s).unwrap();
        assert!((p.value(0.37, 0.81) - 0.37 * 0.81).abs() < 1e-13);
    }
}
