use super::quadrature::QuadratureRule;
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::interpolation::PiecewisePoly2D;
use crate::mesh::{EdgeInfo, EdgeOrientation, Grid1D};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `u - v`.
pub struct Difference<'a> {
    pub u: &'a dyn ScalarField,
    pub v: &'a dyn ScalarField,
}

impl ScalarField for Difference<'_> {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        self.u.d(a, b, x, y) - self.v.d(a, b, x, y)
    }
}

/// Multi-index sets of the standard (semi)norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Seminorm {
    L2,
    H1,
    /// Elementwise second-order seminorm.
    H2,
}

impl Seminorm {
    pub const ALL: [Seminorm; 3] = [Seminorm::L2, Seminorm::H1, Seminorm::H2];

    pub fn alphas(self) -> &'static [(usize, usize)] {
        match self {
            Seminorm::L2 => &[(0, 0)],
            Seminorm::H1 => &[(1, 0), (0, 1)],
            Seminorm::H2 => &[(2, 0), (1, 1), (0, 2)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Seminorm::L2 => "l2",
            Seminorm::H1 => "h1",
            Seminorm::H2 => "h2",
        }
    }
}

/// Pairwise (tree) summation; the result depends only on the order of `v`.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// `Σ_α ∫_E (D^α f)^2` over one rectangle by tensor Gauss quadrature.
pub fn element_sq<F: ScalarField + ?Sized>(f: &F, alphas: &[(usize, usize)], x: (f64, f64), y: (f64, f64), rule: &QuadratureRule<f64>) -> f64 {
    let mut acc = 0.0;
    for (py, wy) in rule.mapped(y.0, y.1) {
        for (px, wx) in rule.mapped(x.0, x.1) {
            for &(a, b) in alphas {
                let v = f.d(a, b, px, py);
                acc += wx * wy * v * v;
            }
        }
    }
    acc
}

/// Every element `(ix, iy)` of a grid pair, ordered by `(iy, ix)`.
pub fn all_elements(gx: &Grid1D, gy: &Grid1D) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(gx.n_intervals() * gy.n_intervals());
    for iy in 0..gy.n_intervals() {
        for ix in 0..gx.n_intervals() {
            v.push((ix, iy));
        }
    }
    v
}

/// Squared (semi)norm `Σ_E Σ_α ‖D^α f‖²_{L2(E)}` over the listed elements of
/// `gx × gy`. Elements are summed pairwise in the order given.
pub fn seminorm_sq<F: ScalarField + ?Sized>(f: &F, norm: Seminorm, gx: &Grid1D, gy: &Grid1D, elems: &[(usize, usize)], rule: &QuadratureRule<f64>) -> f64 {
    let parts: Vec<f64> = elems
        .par_iter()
        .map(|&(ix, iy)| element_sq(f, norm.alphas(), gx.interval(ix), gy.interval(iy), rule))
        .collect();
    pairwise_sum(&parts)
}

/// Square root of [`seminorm_sq`].
pub fn seminorm<F: ScalarField + ?Sized>(f: &F, norm: Seminorm, gx: &Grid1D, gy: &Grid1D, elems: &[(usize, usize)], rule: &QuadratureRule<f64>) -> f64 {
    seminorm_sq(f, norm, gx, gy, elems, rule).sqrt()
}

/// Largest `|f|` on a tensor grid of `samples` interior points per direction
/// and element.
pub fn linf_sampled<F: ScalarField + ?Sized>(f: &F, gx: &Grid1D, gy: &Grid1D, elems: &[(usize, usize)], samples: usize) -> f64 {
    elems
        .par_iter()
        .map(|&(ix, iy)| {
            let (x0, x1) = gx.interval(ix);
            let (y0, y1) = gy.interval(iy);
            let mut m = 0.0f64;
            for j in 0..samples {
                let y = y0 + (y1 - y0) * (j as f64 + 0.5) / samples as f64;
                for i in 0..samples {
                    let x = x0 + (x1 - x0) * (i as f64 + 0.5) / samples as f64;
                    m = m.max(f.value(x, y).abs());
                }
            }
            m
        })
        .reduce(|| 0.0, f64::max)
}

/// `∫_e f^2` along an edge.
pub fn edge_l2<F: ScalarField + ?Sized>(f: &F, edge: &EdgeInfo, rule: &QuadratureRule<f64>) -> f64 {
    match edge.orientation {
        EdgeOrientation::Horizontal => rule.integrate(edge.start.0, edge.end.0, |x| f.value(x, edge.start.1).powi(2)),
        EdgeOrientation::Vertical => rule.integrate(edge.start.1, edge.end.1, |y| f.value(edge.start.0, y).powi(2)),
    }
}

fn both_sides(edge: &EdgeInfo) -> Result<((usize, usize), (usize, usize))> {
    match (edge.lower, edge.upper) {
        (Some(l), Some(u)) => Ok((l, u)),
        _ => Err(Error::BoundaryEdge),
    }
}

/// `∫_e [D^α p]^2` with the jump taken as the lower/left trace minus the
/// upper/right trace.
pub fn edge_jump_sq(p: &PiecewisePoly2D, edge: &EdgeInfo, alpha: (usize, usize), rule: &QuadratureRule<f64>) -> Result<f64> {
    let (l, u) = both_sides(edge)?;
    let jump = |x: f64, y: f64| p.eval_in(l.0, l.1, alpha.0, alpha.1, x, y) - p.eval_in(u.0, u.1, alpha.0, alpha.1, x, y);
    Ok(match edge.orientation {
        EdgeOrientation::Horizontal => rule.integrate(edge.start.0, edge.end.0, |x| jump(x, edge.start.1).powi(2)),
        EdgeOrientation::Vertical => rule.integrate(edge.start.1, edge.end.1, |y| jump(edge.start.0, y).powi(2)),
    })
}

/// Normal-derivative multi-index of an edge.
pub fn normal_alpha(edge: &EdgeInfo) -> (usize, usize) {
    match edge.orientation {
        EdgeOrientation::Horizontal => (0, 1),
        EdgeOrientation::Vertical => (1, 0),
    }
}

/// `Σ_e ∫_e [∂p/∂n]^2` over interior edges.
pub fn jump_norm_sum(p: &PiecewisePoly2D, edges: &[&EdgeInfo], rule: &QuadratureRule<f64>) -> Result<f64> {
    let parts = edges
        .par_iter()
        .map(|e| edge_jump_sq(p, e, normal_alpha(e), rule))
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&parts))
}

/// Largest value jump at `samples` points (including endpoints) per edge.
pub fn max_value_jump(p: &PiecewisePoly2D, edges: &[&EdgeInfo], samples: usize) -> Result<f64> {
    let mut m = 0.0f64;
    for e in edges {
        let (l, u) = both_sides(e)?;
        for k in 0..samples {
            let t = k as f64 / (samples - 1).max(1) as f64;
            let x = e.start.0 + t * (e.end.0 - e.start.0);
            let y = e.start.1 + t * (e.end.1 - e.start.1);
            m = m.max((p.eval_in(l.0, l.1, 0, 0, x, y) - p.eval_in(u.0, u.1, 0, 0, x, y)).abs());
        }
    }
    Ok(m)
}
