use super::macro_ops::{aniso_data, aniso_elems, full_elems, q2_elem};
use super::poly2d::{ElemPoly, PiecewisePoly2D};
use super::quasi::quasi_coefficients;
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::mesh::{CornerSigma, MacroRect, Region, ShishkinMesh, SplitAxis, TwoElementMacro};
use serde::{Deserialize, Serialize};

/// Derivative datum replaced to glue an interpolant to the coarse-region
/// nodal interpolant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeModification {
    pub x: f64,
    pub y: f64,
    /// `true` for `∂/∂x`, `false` for `∂/∂y`.
    pub wrt_x: bool,
    pub exact: f64,
    pub replaced: f64,
}

impl NodeModification {
    /// `∂(u^I - u)/∂n` at the node.
    pub fn delta(&self) -> f64 {
        self.replaced - self.exact
    }
}

/// Layer-adapted interpolant on a Shishkin mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeInterpolant {
    pub poly: PiecewisePoly2D,
    pub modifications: Vec<NodeModification>,
}

impl ScalarField for CompositeInterpolant {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        self.poly.d(a, b, x, y)
    }
}

/// Derivative at a point of the line `x = λ` / `x = 1-λ` (or the `y`
/// analogue) of the quadratic through the coarse-region nodal values on the
/// adjacent coarse element.
struct Glue<'a, F: ?Sized> {
    field: &'a F,
    mesh: &'a ShishkinMesh,
}

impl<F: ScalarField + ?Sized> Glue<'_, F> {
    /// `wrt_x` selects the derivative direction, `low_interface` whether the
    /// interface is at `λ` (coarse region on the positive side) or at `1-λ`.
    fn derivative(&self, wrt_x: bool, low_interface: bool, other: f64) -> f64 {
        let q = self.mesh.quarter();
        let c = if wrt_x { self.mesh.xs.coords() } else { self.mesh.ys.coords() };
        let (s, a, b) = if low_interface { (1.0, c[q], c[q + 1]) } else { (-1.0, c[3 * q], c[3 * q - 1]) };
        let m = 0.5 * (a.min(b) + a.max(b));
        let v = |t: f64| if wrt_x { self.field.value(t, other) } else { self.field.value(other, t) };
        let big_h = (b - a).abs();
        s * (-3.0 * v(a) + 4.0 * v(m) - v(b)) / big_h
    }

    fn record(&self, out: &mut Vec<NodeModification>, wrt_x: bool, low_interface: bool, x: f64, y: f64) -> f64 {
        let replaced = self.derivative(wrt_x, low_interface, if wrt_x { y } else { x });
        let exact = if wrt_x { self.field.d(1, 0, x, y) } else { self.field.d(0, 1, x, y) };
        out.push(NodeModification { x, y, wrt_x, exact, replaced });
        replaced
    }
}

/// Assembles the composite interpolant: nodal biquadratic interpolation on the
/// coarse region, two-element macro interpolation on the edge strips and
/// quasi-interpolation on the corner regions.
///
/// On strip macros adjacent to the coarse region the normal derivative data at
/// the interface is replaced by the normal derivative of the coarse nodal
/// interpolant. At the four interface corners `(λ, λ)`, ... the corner
/// quasi-interpolant takes the same replaced derivatives in both directions,
/// which keeps the result continuous across the short edges meeting there.
pub fn build_composite<F: ScalarField + ?Sized>(field: &F, mesh: &ShishkinMesh, corners: &[CornerSigma]) -> Result<CompositeInterpolant> {
    if mesh.regions.len() != mesh.n_elements() || corners.len() != 4 {
        return Err(Error::Shishkin("mesh without region labels or corner selections".into()));
    }
    let n = mesh.n;
    let q = mesh.quarter();
    let xs = mesh.xs.coords();
    let ys = mesh.ys.coords();
    let glue = Glue { field, mesh };
    let mut elems: Vec<Option<ElemPoly>> = vec![None; n * n];
    let mut mods = Vec::new();

    for iy in 0..n {
        for ix in 0..n {
            if mesh.region(ix, iy) == Region::Omega0 {
                let r = MacroRect { x0: xs[ix], x1: xs[ix + 1], y0: ys[iy], y1: ys[iy + 1] };
                elems[iy * n + ix] = Some(q2_elem(field, &r));
            }
        }
    }

    for cell in mesh.macros.iter().filter(|c| c.region.is_strip()) {
        let rect = MacroRect::new(xs[cell.ix0], xs[cell.ix0 + cell.nx], ys[cell.iy0], ys[cell.iy0 + cell.ny])?;
        let split = if cell.ny == 2 { SplitAxis::Y } else { SplitAxis::X };
        let tm = TwoElementMacro { rect, split };
        let mut data = aniso_data(field, &tm);
        // (spline end at the interface, interface at λ)
        let glued = match cell.region {
            Region::Omega1 if cell.iy0 + 2 == q => Some((1, true)),
            Region::Omega3 if cell.iy0 == 3 * q => Some((0, false)),
            Region::Omega2 if cell.ix0 + 2 == q => Some((1, true)),
            Region::Omega4 if cell.ix0 == 3 * q => Some((0, false)),
            _ => None,
        };
        if let Some((end, low)) = glued {
            let (cx, cy) = rect.centre();
            for a in 0..3 {
                let (x, y, wrt_x) = match split {
                    SplitAxis::Y => ([rect.x0, cx, rect.x1][a], rect.corners_y()[end], false),
                    SplitAxis::X => (rect.corners_x()[end], [rect.y0, cy, rect.y1][a], true),
                };
                data.derivs[a][end] = glue.record(&mut mods, wrt_x, low, x, y);
            }
        }
        let pair = aniso_elems(&tm, &data);
        for (k, e) in pair.into_iter().enumerate() {
            let (ex, ey) = match split {
                SplitAxis::Y => (cell.ix0, cell.iy0 + k),
                SplitAxis::X => (cell.ix0 + k, cell.iy0),
            };
            elems[ey * n + ex] = Some(e);
        }
    }

    for cs in corners {
        let mut data = quasi_coefficients(field, &cs.mesh, &cs.selection)?;
        let (last_i, last_j) = (data.nx - 1, data.ny - 1);
        // node touching the coarse region, and whether it sits at λ in x / y
        let (i, j, low_x, low_y) = match cs.region {
            Region::Omega12 => (last_i, last_j, true, true),
            Region::Omega23 => (last_i, 0, true, false),
            Region::Omega34 => (0, 0, false, false),
            Region::Omega41 => (0, last_j, false, true),
            other => return Err(Error::Shishkin(format!("{} is not a corner region", other.name()))),
        };
        let (x, y) = (cs.mesh.macro_x.coords()[i], cs.mesh.macro_y.coords()[j]);
        let k = data.idx(i, j);
        data.ux[k] = glue.record(&mut mods, true, low_x, x, y);
        data.uy[k] = glue.record(&mut mods, false, low_y, x, y);
        let mx = cs.mesh.macro_x.n_intervals();
        for m in 0..cs.mesh.n_macros() {
            let (mi, mj) = (m % mx, m / mx);
            let block = full_elems(&data.macro_functionals(&cs.mesh, mi, mj).reference());
            for (b, e) in block.into_iter().enumerate() {
                let (lx, ly) = (2 * mi + b % 2, 2 * mj + b / 2);
                elems[(cs.iy0 + ly) * n + cs.ix0 + lx] = Some(e);
            }
        }
    }

    let elems = elems.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Shishkin("element left uncovered".into()))?;
    let poly = PiecewisePoly2D::new(mesh.xs.clone(), mesh.ys.clone(), 2, elems)?;
    Ok(CompositeInterpolant { poly, modifications: mods })
}
