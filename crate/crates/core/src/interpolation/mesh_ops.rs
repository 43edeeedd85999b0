use super::macro_ops::{aniso_data, aniso_elems, bfs_elem, full_elems, q2_elem, MacroFunctionals16};
use super::poly2d::{ElemPoly, PiecewisePoly2D};
use crate::error::Result;
use crate::fields::ScalarField;
use crate::mesh::{Grid1D, MacroMesh, MacroRect, SplitAxis, TwoElementMacro};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Nodal data `u, u_x, u_y` and the mixed coefficient at every macro node,
/// numbered `j * nx + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeData {
    pub nx: usize,
    pub ny: usize,
    pub u: Vec<f64>,
    pub ux: Vec<f64>,
    pub uy: Vec<f64>,
    pub uxy: Vec<f64>,
}

impl NodeData {
    /// Point values of the field and its derivatives at the grid nodes.
    pub fn sample<F: ScalarField + ?Sized>(field: &F, gx: &Grid1D, gy: &Grid1D) -> Self {
        let (nx, ny) = (gx.len(), gy.len());
        let mut d = Self { nx, ny, u: vec![0.0; nx * ny], ux: vec![0.0; nx * ny], uy: vec![0.0; nx * ny], uxy: vec![0.0; nx * ny] };
        for (j, &y) in gy.coords().iter().enumerate() {
            for (i, &x) in gx.coords().iter().enumerate() {
                let k = j * nx + i;
                d.u[k] = field.d(0, 0, x, y);
                d.ux[k] = field.d(1, 0, x, y);
                d.uy[k] = field.d(0, 1, x, y);
                d.uxy[k] = field.d(1, 1, x, y);
            }
        }
        d
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Functionals of macro `(i, j)`.
    pub fn macro_functionals(&self, mesh: &MacroMesh, i: usize, j: usize) -> MacroFunctionals16 {
        let mut d = MacroFunctionals16 {
            rect: mesh.macro_rect(i, j),
            v: [[0.0; 2]; 2],
            vx: [[0.0; 2]; 2],
            vy: [[0.0; 2]; 2],
            vxy: [[0.0; 2]; 2],
        };
        for a in 0..2 {
            for b in 0..2 {
                let k = self.idx(i + a, j + b);
                d.v[a][b] = self.u[k];
                d.vx[a][b] = self.ux[k];
                d.vy[a][b] = self.uy[k];
                d.vxy[a][b] = self.uxy[k];
            }
        }
        d
    }
}

/// Scatters per-macro blocks of `bx × by` elements into the element grid.
fn scatter(gx: Grid1D, gy: Grid1D, degree: usize, bx: usize, by: usize, mx: usize, blocks: Vec<Vec<ElemPoly>>) -> Result<PiecewisePoly2D> {
    let nx = gx.n_intervals();
    let mut elems = vec![ElemPoly::default(); nx * gy.n_intervals()];
    for (m, block) in blocks.into_iter().enumerate() {
        let (i, j) = (m % mx, m / mx);
        for (k, e) in block.into_iter().enumerate() {
            let (px, py) = (k % bx, k / bx);
            elems[(by * j + py) * nx + bx * i + px] = e;
        }
    }
    PiecewisePoly2D::new(gx, gy, degree, elems)
}

/// Full-type assembly on every macro from nodal data.
pub fn assemble_node_data(mesh: &MacroMesh, data: &NodeData) -> Result<PiecewisePoly2D> {
    let mx = mesh.macro_x.n_intervals();
    let blocks: Vec<Vec<ElemPoly>> = (0..mesh.n_macros())
        .into_par_iter()
        .map(|m| full_elems(&data.macro_functionals(mesh, m % mx, m / mx).reference()))
        .collect();
    scatter(mesh.elem_x.clone(), mesh.elem_y.clone(), 2, 2, 2, mx, blocks)
}

/// Full macro interpolant on every macro of the mesh.
pub fn interp_full<F: ScalarField + ?Sized>(field: &F, mesh: &MacroMesh) -> Result<PiecewisePoly2D> {
    assemble_node_data(mesh, &NodeData::sample(field, &mesh.macro_x, &mesh.macro_y))
}

/// Reduced macro interpolant on every macro of the mesh.
pub fn interp_reduced<F: ScalarField + ?Sized>(field: &F, mesh: &MacroMesh) -> Result<PiecewisePoly2D> {
    let mut d = NodeData::sample(field, &mesh.macro_x, &mesh.macro_y);
    d.uxy.iter_mut().for_each(|v| *v = 0.0);
    assemble_node_data(mesh, &d)
}

fn rects(gx: &Grid1D, gy: &Grid1D) -> Vec<MacroRect> {
    let mut out = Vec::with_capacity(gx.n_intervals() * gy.n_intervals());
    for j in 0..gy.n_intervals() {
        for i in 0..gx.n_intervals() {
            let (x0, x1) = gx.interval(i);
            let (y0, y1) = gy.interval(j);
            out.push(MacroRect { x0, x1, y0, y1 });
        }
    }
    out
}

/// Bicubic Hermite interpolant on every element of the grid.
pub fn interp_bfs_mesh<F: ScalarField + ?Sized>(field: &F, gx: &Grid1D, gy: &Grid1D) -> Result<PiecewisePoly2D> {
    let blocks = rects(gx, gy)
        .par_iter()
        .map(|r| bfs_elem(&MacroFunctionals16::from_field(field, *r)).map(|e| vec![e]))
        .collect::<Result<Vec<_>>>()?;
    scatter(gx.clone(), gy.clone(), 3, 1, 1, gx.n_intervals(), blocks)
}

/// Nodal biquadratic interpolant on every element of the grid.
pub fn nodal_q2_mesh<F: ScalarField + ?Sized>(field: &F, gx: &Grid1D, gy: &Grid1D) -> Result<PiecewisePoly2D> {
    let blocks = rects(gx, gy).par_iter().map(|r| vec![q2_elem(field, r)]).collect();
    scatter(gx.clone(), gy.clone(), 2, 1, 1, gx.n_intervals(), blocks)
}

/// Two-element macro interpolant on every cell of the macro grid `gx × gy`;
/// the cells are bisected along `split`.
pub fn interp_aniso_mesh<F: ScalarField + ?Sized>(field: &F, gx: &Grid1D, gy: &Grid1D, split: SplitAxis) -> Result<PiecewisePoly2D> {
    let blocks = rects(gx, gy)
        .par_iter()
        .map(|r| {
            let tm = TwoElementMacro { rect: *r, split };
            aniso_elems(&tm, &aniso_data(field, &tm))
        })
        .collect();
    match split {
        SplitAxis::Y => scatter(gx.clone(), gy.bisect(), 2, 1, 2, gx.n_intervals(), blocks),
        SplitAxis::X => scatter(gx.bisect(), gy.clone(), 2, 2, 1, gx.n_intervals(), blocks),
    }
}
