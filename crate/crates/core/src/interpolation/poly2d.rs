use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::mesh::{Grid1D, MacroRect};
use crate::poly;
use serde::{Deserialize, Serialize};

/// Tensor polynomial `Σ c[a][b] t^a s^b` in element-local variables
/// `t, s ∈ [-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct ElemPoly {
    pub c: [[f64; 4]; 4],
}

impl ElemPoly {
    pub fn outer(px: &[f64; 4], py: &[f64; 4]) -> Self {
        let mut c = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                c[a][b] = px[a] * py[b];
            }
        }
        Self { c }
    }

    /// `self += w · other`.
    pub fn axpy(&mut self, w: f64, other: &ElemPoly) {
        for a in 0..4 {
            for b in 0..4 {
                self.c[a][b] += w * other.c[a][b];
            }
        }
    }

    /// `∂_t^a ∂_s^b` at local coordinates.
    pub fn eval_local(&self, a: usize, b: usize, t: f64, s: f64) -> f64 {
        let mut col = [0.0; 4];
        for (k, row) in self.c.iter().enumerate() {
            col[k] = poly::eval_deriv(row, b, s);
        }
        poly::eval_deriv(&col, a, t)
    }

    /// Largest exponent with a nonzero coefficient in either variable.
    pub fn degree(&self) -> usize {
        let mut d = 0;
        for a in 0..4 {
            for b in 0..4 {
                if self.c[a][b] != 0.0 {
                    d = d.max(a).max(b);
                }
            }
        }
        d
    }
}

/// Piecewise tensor polynomial on a rectangular element grid.
///
/// Elements are stored row by row, `iy * nx + ix`. Coefficients refer to the
/// element-local variables, so derivatives in world coordinates pick up the
/// factors `(2/h_x)^a (2/h_y)^b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePoly2D {
    pub gx: Grid1D,
    pub gy: Grid1D,
    pub degree: usize,
    pub elems: Vec<ElemPoly>,
}

impl PiecewisePoly2D {
    pub fn new(gx: Grid1D, gy: Grid1D, degree: usize, elems: Vec<ElemPoly>) -> Result<Self> {
        if elems.len() != gx.n_intervals() * gy.n_intervals() {
            return Err(Error::Grid);
        }
        if !(2..=3).contains(&degree) || elems.iter().any(|e| e.degree() > degree) {
            return Err(Error::Order(degree));
        }
        Ok(Self { gx, gy, degree, elems })
    }

    pub fn nx(&self) -> usize {
        self.gx.n_intervals()
    }

    pub fn ny(&self) -> usize {
        self.gy.n_intervals()
    }

    pub fn elem(&self, ix: usize, iy: usize) -> &ElemPoly {
        &self.elems[iy * self.nx() + ix]
    }

    pub fn element_rect(&self, ix: usize, iy: usize) -> MacroRect {
        let (x0, x1) = self.gx.interval(ix);
        let (y0, y1) = self.gy.interval(iy);
        MacroRect { x0, x1, y0, y1 }
    }

    /// `D^(a,b)` of the polynomial of element `(ix, iy)`, extended beyond the
    /// element if `(x, y)` lies outside it.
    pub fn eval_in(&self, ix: usize, iy: usize, a: usize, b: usize, x: f64, y: f64) -> f64 {
        let (x0, x1) = self.gx.interval(ix);
        let (y0, y1) = self.gy.interval(iy);
        let hx = 0.5 * (x1 - x0);
        let hy = 0.5 * (y1 - y0);
        let t = (x - 0.5 * (x0 + x1)) / hx;
        let s = (y - 0.5 * (y0 + y1)) / hy;
        self.elem(ix, iy).eval_local(a, b, t, s) / (hx.powi(a as i32) * hy.powi(b as i32))
    }

    /// `D^(a,b)` at `(x, y)`; on element interfaces the element with the
    /// lowest index is used.
    pub fn eval(&self, x: f64, y: f64, a: usize, b: usize) -> Result<f64> {
        let ix = self.gx.locate(x)?;
        let iy = self.gy.locate(y)?;
        Ok(self.eval_in(ix, iy, a, b, x, y))
    }

    /// Element containing `(x, y)` under the lowest-index convention.
    pub fn locate(&self, x: f64, y: f64) -> Result<(usize, usize)> {
        Ok((self.gx.locate(x)?, self.gy.locate(y)?))
    }
}

impl ScalarField for PiecewisePoly2D {
    /// NaN outside the grid.
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        self.eval(x, y, a, b).unwrap_or(f64::NAN)
    }
}
