use crate::error::Result;
use crate::fields::{PolyField, ScalarField};
use crate::interpolation::{interp_aniso_mesh, interp_bfs_mesh, interp_full, interp_reduced, quasi_interp, PiecewisePoly2D};
use crate::mesh::{build_macro_mesh, patch_range, select_sigma, Corner, Grid1D, MacroMesh, MacroRect, SigmaStrategy, SplitAxis};
use crate::norms::{element_sq, QuadratureRule};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    /// Full biquadratic macro interpolant.
    Full,
    /// Macro interpolant with the mixed-derivative data set to zero.
    Reduced,
    /// Bicubic Hermite element.
    Bicubic,
    /// Two-element macro split in `y` on macros whose long side is `x`.
    AnisoY,
    /// Quasi-interpolant with weighted edge means.
    Quasi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    /// `‖D^deriv u‖` over the macro, or over its patch when `on_patch`.
    Seminorm,
    /// `|∫_M D^deriv u| / |M|^(1/2)`.
    MeanIntegral,
}

/// `h_1^p1 h_2^p2 h_long^q` times a norm or mean of `D^deriv u`, with
/// `h_1, h_2` the side lengths of the macro and `h_long` the longer one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundTerm {
    pub deriv: (usize, usize),
    pub h_pow: (i32, i32),
    pub long_pow: i32,
    pub kind: TermKind,
    pub on_patch: bool,
}

/// Right-hand side bounding `‖D^γ (u - Πu)‖_{0,M}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaBound {
    pub gamma: (usize, usize),
    pub terms: Vec<BoundTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub name: String,
    pub operator: OperatorKind,
    pub bounds: Vec<GammaBound>,
}

fn multi_indices(order: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=order).map(move |a| (order - a, a))
}

fn add(a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    (a.0 + b.0, a.1 + b.1)
}

/// `Σ_{|α| = order} h^α · (term of D^(α + shift) u)`.
fn alpha_terms(order: usize, shift: (usize, usize), kind: TermKind) -> Vec<BoundTerm> {
    multi_indices(order)
        .map(|a| BoundTerm { deriv: add(a, shift), h_pow: (a.0 as i32, a.1 as i32), long_pow: 0, kind, on_patch: false })
        .collect()
}

fn gammas_of_order(k: usize) -> Vec<(usize, usize)> {
    multi_indices(k).collect()
}

impl BoundSpec {
    /// First `x` derivative of the reduced operator with the mixed-derivative mean.
    pub fn reduced() -> Self {
        let mut terms = alpha_terms(2, (1, 0), TermKind::Seminorm);
        terms.push(BoundTerm { deriv: (1, 1), h_pow: (0, 1), long_pow: 0, kind: TermKind::MeanIntegral, on_patch: false });
        Self { name: "reduced_dx".into(), operator: OperatorKind::Reduced, bounds: vec![GammaBound { gamma: (1, 0), terms }] }
    }

    /// Full operator, all `γ` with `|γ| = k`.
    pub fn full(k: usize) -> Self {
        let bounds = gammas_of_order(k)
            .into_iter()
            .map(|g| {
                let mut terms = alpha_terms(4 - k, g, TermKind::Seminorm);
                terms.extend(alpha_terms(3 - k, g, TermKind::MeanIntegral));
                GammaBound { gamma: g, terms }
            })
            .collect();
        Self { name: format!("full_order{k}"), operator: OperatorKind::Full, bounds }
    }

    /// Bicubic element, all `|γ| <= 2`.
    pub fn bicubic() -> Self {
        let bounds = (0..=2)
            .flat_map(gammas_of_order)
            .map(|g| GammaBound { gamma: g, terms: alpha_terms(4 - (g.0 + g.1), g, TermKind::Seminorm) })
            .collect();
        Self { name: "bicubic".into(), operator: OperatorKind::Bicubic, bounds }
    }

    /// Two-element operator, `|γ| <= 2` except `(2, 0)`.
    pub fn aniso() -> Self {
        let bounds = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)]
            .into_iter()
            .map(|g| GammaBound { gamma: g, terms: alpha_terms(3 - (g.0 + g.1), g, TermKind::Seminorm) })
            .collect();
        Self { name: "aniso".into(), operator: OperatorKind::AnisoY, bounds }
    }

    /// Two-element operator, second derivative across the split.
    pub fn aniso_xx() -> Self {
        let mut terms = alpha_terms(1, (2, 0), TermKind::Seminorm);
        terms.extend(alpha_terms(2, (1, 0), TermKind::Seminorm).into_iter().map(|t| BoundTerm { long_pow: -1, ..t }));
        Self { name: "aniso_xx".into(), operator: OperatorKind::AnisoY, bounds: vec![GammaBound { gamma: (2, 0), terms }] }
    }

    /// Two-element operator in `L2` with second derivatives only.
    pub fn aniso_l2() -> Self {
        let mut terms = alpha_terms(2, (0, 0), TermKind::Seminorm);
        terms.extend(alpha_terms(2, (0, 1), TermKind::Seminorm).into_iter().map(|t| BoundTerm { h_pow: (t.h_pow.0, t.h_pow.1 + 1), ..t }));
        Self { name: "aniso_l2".into(), operator: OperatorKind::AnisoY, bounds: vec![GammaBound { gamma: (0, 0), terms }] }
    }

    /// Quasi-interpolant, first derivatives against third derivatives on the patch.
    pub fn quasi() -> Self {
        let mut terms = Vec::new();
        for b in [(1, 0), (0, 1)] {
            terms.extend(alpha_terms(2, b, TermKind::Seminorm).into_iter().map(|t| BoundTerm { on_patch: true, ..t }));
        }
        let bounds = gammas_of_order(1).into_iter().map(|g| GammaBound { gamma: g, terms: terms.clone() }).collect();
        Self { name: "quasi_h1".into(), operator: OperatorKind::Quasi, bounds }
    }

    /// Quasi-interpolant on locally uniform meshes, `|γ| = k <= 2`.
    pub fn quasi_uniform(k: usize) -> Self {
        let terms: Vec<BoundTerm> = multi_indices(3)
            .map(|a| BoundTerm { deriv: a, h_pow: (0, 0), long_pow: 3 - k as i32, kind: TermKind::Seminorm, on_patch: true })
            .collect();
        let bounds = gammas_of_order(k).into_iter().map(|g| GammaBound { gamma: g, terms: terms.clone() }).collect();
        Self { name: format!("quasi_uniform_order{k}"), operator: OperatorKind::Quasi, bounds }
    }

    /// Every implemented estimate.
    pub fn all() -> Vec<Self> {
        let mut out = vec![Self::reduced(), Self::full(0), Self::full(1), Self::full(2), Self::bicubic(), Self::aniso(), Self::aniso_xx(), Self::aniso_l2()];
        out.push(Self::quasi());
        out.extend((0..=2).map(Self::quasi_uniform));
        out
    }
}

/// Macro grid of refinement `level` on the unit square: `2^(level+1)` cells
/// in `x` and four times as many in `y`.
pub fn level_grids(level: usize) -> Result<(Grid1D, Grid1D)> {
    let n = 2usize << level;
    Ok((Grid1D::uniform(0.0, 1.0, n)?, Grid1D::uniform(0.0, 1.0, 4 * n)?))
}

struct Applied {
    poly: PiecewisePoly2D,
    /// Elements per macro in `x` and `y`.
    block: (usize, usize),
    mesh: MacroMesh,
    sel: Option<crate::mesh::SigmaSelection>,
}

fn apply<F: ScalarField + ?Sized>(op: OperatorKind, field: &F, gx: &Grid1D, gy: &Grid1D) -> Result<Applied> {
    let mesh = build_macro_mesh(gx, gy);
    let (poly, block, sel) = match op {
        OperatorKind::Full => (interp_full(field, &mesh)?, (2, 2), None),
        OperatorKind::Reduced => (interp_reduced(field, &mesh)?, (2, 2), None),
        OperatorKind::Bicubic => (interp_bfs_mesh(field, gx, gy)?, (1, 1), None),
        OperatorKind::AnisoY => (interp_aniso_mesh(field, gx, gy, SplitAxis::Y)?, (1, 2), None),
        OperatorKind::Quasi => {
            let sel = select_sigma(&mesh, SigmaStrategy::TowardCorner, Corner::LowerLeft);
            (quasi_interp(field, &mesh, &sel)?, (2, 2), Some(sel))
        }
    };
    Ok(Applied { poly, block, mesh, sel })
}

struct Residual<'a, F: ?Sized> {
    u: &'a F,
    p: &'a PiecewisePoly2D,
}

impl<F: ScalarField + ?Sized> ScalarField for Residual<'_, F> {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        self.u.d(a, b, x, y) - self.p.d(a, b, x, y)
    }
}

fn rect_of(gx: &Grid1D, gy: &Grid1D, i: (usize, usize), j: (usize, usize)) -> MacroRect {
    MacroRect { x0: gx.coords()[i.0], x1: gx.coords()[i.1], y0: gy.coords()[j.0], y1: gy.coords()[j.1] }
}

fn sq_over<F: ScalarField + ?Sized>(f: &F, alpha: (usize, usize), rects: &[MacroRect], rule: &QuadratureRule<f64>) -> f64 {
    rects.iter().map(|r| element_sq(f, &[alpha], (r.x0, r.x1), (r.y0, r.y1), rule)).sum()
}

fn integral_over<F: ScalarField + ?Sized>(f: &F, alpha: (usize, usize), rects: &[MacroRect], rule: &QuadratureRule<f64>) -> f64 {
    rects
        .iter()
        .map(|r| rule.integrate(r.y0, r.y1, |y| rule.integrate(r.x0, r.x1, |x| f.d(alpha.0, alpha.1, x, y))))
        .sum()
}

/// Per-macro `(LHS, RHS)` for every `γ` of the spec, macros in row order.
fn macro_sides<F: ScalarField + ?Sized>(spec: &BoundSpec, field: &F, gx: &Grid1D, gy: &Grid1D, rule: &QuadratureRule<f64>) -> Result<Vec<Vec<(f64, f64)>>> {
    let ap = apply(spec.operator, field, gx, gy)?;
    let (mx, my) = (gx.n_intervals(), gy.n_intervals());
    let diff = Residual { u: field, p: &ap.poly };
    let out = (0..mx * my)
        .into_par_iter()
        .map(|m| {
            let (i, j) = (m % mx, m / mx);
            let (bx, by) = ap.block;
            let elems: Vec<MacroRect> = (0..bx * by).map(|k| ap.poly.element_rect(bx * i + k % bx, by * j + k / bx)).collect();
            let macro_rect = rect_of(gx, gy, (i, i + 1), (j, j + 1));
            let patch: Vec<MacroRect> = match &ap.sel {
                Some(sel) => {
                    let (ilo, ihi, jlo, jhi) = patch_range(&ap.mesh, sel, i, j);
                    let mut v = Vec::new();
                    for b in jlo..=jhi {
                        for a in ilo..=ihi {
                            v.push(rect_of(gx, gy, (a, a + 1), (b, b + 1)));
                        }
                    }
                    v
                }
                None => vec![macro_rect],
            };
            let (h1, h2) = (macro_rect.x1 - macro_rect.x0, macro_rect.y1 - macro_rect.y0);
            let hl = h1.max(h2);
            spec.bounds
                .iter()
                .map(|gb| {
                    let lhs = sq_over(&diff, gb.gamma, &elems, rule).sqrt();
                    let rhs: f64 = gb
                        .terms
                        .iter()
                        .map(|t| {
                            let w = h1.powi(t.h_pow.0) * h2.powi(t.h_pow.1) * hl.powi(t.long_pow);
                            let region: &[MacroRect] = if t.on_patch { &patch } else { &elems };
                            let q = match t.kind {
                                TermKind::Seminorm => sq_over(field, t.deriv, region, rule).sqrt(),
                                TermKind::MeanIntegral => integral_over(field, t.deriv, region, rule).abs() / macro_rect.area().sqrt(),
                            };
                            w * q
                        })
                        .sum();
                    (lhs, rhs)
                })
                .collect()
        })
        .collect();
    Ok(out)
}

/// Largest `LHS / RHS` over the macros of one mesh and every `γ` of the spec.
pub fn sup_ratio<F: ScalarField + ?Sized>(spec: &BoundSpec, field: &F, gx: &Grid1D, gy: &Grid1D, rule: &QuadratureRule<f64>) -> Result<f64> {
    let sides = macro_sides(spec, field, gx, gy, rule)?;
    Ok(sides.iter().flatten().filter(|(_, r)| *r > 0.0).map(|(l, r)| l / r).fold(0.0, f64::max))
}

/// Sup ratios on the refinement levels `0..levels`.
pub fn bound_consistency<F: ScalarField + ?Sized>(spec: &BoundSpec, field: &F, levels: usize) -> Result<Vec<f64>> {
    let rule = QuadratureRule::gauss_legendre(5);
    (0..levels)
        .map(|l| {
            let (gx, gy) = level_grids(l)?;
            sup_ratio(spec, field, &gx, &gy, &rule)
        })
        .collect()
}

/// Monomials `x^a y^b`, `a, b <= 3`, whose right-hand side vanishes on every
/// macro, with the largest `LHS` they produce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelCheck {
    pub monomials: Vec<(usize, usize)>,
    pub max_lhs: f64,
}

pub fn kernel_check(spec: &BoundSpec) -> Result<KernelCheck> {
    let rule = QuadratureRule::gauss_legendre(5);
    let (gx, gy) = level_grids(1)?;
    let mut out = KernelCheck { monomials: Vec::new(), max_lhs: 0.0 };
    for a in 0..=3 {
        for b in 0..=3 {
            let mut c = [[0.0; 4]; 4];
            c[a][b] = 1.0;
            let u = PolyField { c };
            let sides = macro_sides(spec, &u, &gx, &gy, &rule)?;
            if sides.iter().flatten().all(|(_, r)| *r == 0.0) {
                out.monomials.push((a, b));
                out.max_lhs = sides.iter().flatten().map(|(l, _)| *l).fold(out.max_lhs, f64::max);
            }
        }
    }
    Ok(out)
}
