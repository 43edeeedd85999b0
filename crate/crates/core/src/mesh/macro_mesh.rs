use super::grid::Grid1D;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacroRect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl MacroRect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0 < x1) || !(x1 - x0).is_finite() {
            return Err(Error::Degenerate(x0, x1));
        }
        if !(y0 < y1) || !(y1 - y0).is_finite() {
            return Err(Error::Degenerate(y0, y1));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    /// Half widths `(h1, h2)`.
    pub fn half(&self) -> (f64, f64) {
        (0.5 * (self.x1 - self.x0), 0.5 * (self.y1 - self.y0))
    }

    pub fn centre(&self) -> (f64, f64) {
        (0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    pub fn corners_x(&self) -> [f64; 2] {
        [self.x0, self.x1]
    }

    pub fn corners_y(&self) -> [f64; 2] {
        [self.y0, self.y1]
    }
}

/// Macro grids together with the element grids obtained by bisecting every
/// macro interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MacroMesh {
    pub macro_x: Grid1D,
    pub macro_y: Grid1D,
    pub elem_x: Grid1D,
    pub elem_y: Grid1D,
}

impl MacroMesh {
    pub fn n_macros(&self) -> usize {
        self.macro_x.n_intervals() * self.macro_y.n_intervals()
    }

    pub fn n_elements(&self) -> usize {
        self.elem_x.n_intervals() * self.elem_y.n_intervals()
    }

    pub fn macro_rect(&self, i: usize, j: usize) -> MacroRect {
        let (x0, x1) = self.macro_x.interval(i);
        let (y0, y1) = self.macro_y.interval(j);
        MacroRect { x0, x1, y0, y1 }
    }
}

/// Builds the macro mesh with four congruent children per macro.
pub fn build_macro_mesh(grid_x: &Grid1D, grid_y: &Grid1D) -> MacroMesh {
    MacroMesh {
        macro_x: grid_x.clone(),
        macro_y: grid_y.clone(),
        elem_x: grid_x.bisect(),
        elem_y: grid_y.bisect(),
    }
}

/// Direction in which a two-element macro is split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitAxis {
    /// Two elements stacked in `y` (C1 spline in `y`).
    Y,
    /// Two elements side by side in `x` (C1 spline in `x`).
    X,
}

/// Rectangle bisected once along `split`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoElementMacro {
    pub rect: MacroRect,
    pub split: SplitAxis,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_widths() {
        let m = build_macro_mesh(&Grid1D::new(vec![0.0, 1.0, 3.0]).unwrap(), &Grid1D::new(vec![0.0, 2.0]).unwrap());
        assert_eq!(m.n_macros(), 2);
        assert_eq!(m.n_elements(), 8);
        let widths: Vec<f64> = (0..m.elem_x.n_intervals()).map(|i| m.elem_x.width(i)).collect();
        assert_eq!(widths, vec![0.5, 0.5, 1.0, 1.0]);
    }

    #[test]
    fn unit_macro() {
        let g = Grid1D::new(vec![0.0, 2.0]).unwrap();
        let m = build_macro_mesh(&g, &g);
        assert_eq!(m.n_elements(), 4);
        assert_eq!(m.elem_x.coords(), &[0.0, 1.0, 2.0]);
    }
}
