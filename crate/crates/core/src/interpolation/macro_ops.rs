use super::poly2d::{ElemPoly, PiecewisePoly2D};
use crate::error::Result;
use crate::fields::ScalarField;
use crate::mesh::{Grid1D, MacroRect, SplitAxis, TwoElementMacro};
use crate::poly;
use crate::spline_core::{local_pieces, newton_coefficients, newton_pieces, HermiteData1D, RefKind};
use serde::{Deserialize, Serialize};

/// Values, first partials and mixed partial at the four vertices of a
/// rectangle, indexed `[x corner][y corner]` with 0 the lower coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacroFunctionals16 {
    pub rect: MacroRect,
    pub v: [[f64; 2]; 2],
    pub vx: [[f64; 2]; 2],
    pub vy: [[f64; 2]; 2],
    pub vxy: [[f64; 2]; 2],
}

impl MacroFunctionals16 {
    pub fn from_field<F: ScalarField + ?Sized>(field: &F, rect: MacroRect) -> Self {
        let mut d = Self { rect, v: [[0.0; 2]; 2], vx: [[0.0; 2]; 2], vy: [[0.0; 2]; 2], vxy: [[0.0; 2]; 2] };
        for (i, &x) in rect.corners_x().iter().enumerate() {
            for (j, &y) in rect.corners_y().iter().enumerate() {
                d.v[i][j] = field.d(0, 0, x, y);
                d.vx[i][j] = field.d(1, 0, x, y);
                d.vy[i][j] = field.d(0, 1, x, y);
                d.vxy[i][j] = field.d(1, 1, x, y);
            }
        }
        d
    }

    /// Data scaled to the reference square, `D[kx][ky]` with `k` running over
    /// value at the low end, value at the high end, derivative at the low end,
    /// derivative at the high end (the order of [`RefKind::ALL`]).
    pub fn reference(&self) -> [[f64; 4]; 4] {
        let (hx, hy) = self.rect.half();
        let mut d = [[0.0; 4]; 4];
        for kx in 0..4 {
            for ky in 0..4 {
                let (i, j) = (kx % 2, ky % 2);
                d[kx][ky] = match (kx >= 2, ky >= 2) {
                    (false, false) => self.v[i][j],
                    (true, false) => hx * self.vx[i][j],
                    (false, true) => hy * self.vy[i][j],
                    (true, true) => hx * hy * self.vxy[i][j],
                };
            }
        }
        d
    }
}

/// `F[i][j] = u[n_i; n_j]` for the knot groups `{-1}, {-1,-1}, {-1,-1,1},
/// {-1,-1,1,1}` on the reference square.
pub type DividedDiff2DTable = [[f64; 4]; 4];

/// Two-dimensional divided differences of reference-scaled data: a 1D
/// divided difference in `x` for every `y` functional, followed by one in `y`.
pub fn divided_diff_2d(reference: &[[f64; 4]; 4]) -> Result<DividedDiff2DTable> {
    let hd = |r: [f64; 4]| HermiteData1D::new(r[0], r[2], r[1], r[3]);
    let mut inner = [[0.0; 4]; 4];
    for ky in 0..4 {
        let row = [reference[0][ky], reference[1][ky], reference[2][ky], reference[3][ky]];
        inner[ky] = newton_coefficients(&hd(row))?;
    }
    let mut f = [[0.0; 4]; 4];
    for i in 0..4 {
        let col = [inner[0][i], inner[1][i], inner[2][i], inner[3][i]];
        f[i] = newton_coefficients(&hd(col))?;
    }
    Ok(f)
}

pub(crate) const LAGRANGE3: [[f64; 4]; 3] = [[0.0, -0.5, 0.5, 0.0], [1.0, 0.0, -1.0, 0.0], [0.0, 0.5, 0.5, 0.0]];

// (x+1)^2 (x-1) completes 1, x+1, (x+1)^2 to the cubic Newton basis.
const NEWTON_CUBIC: [[f64; 4]; 4] = [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [-1.0, -1.0, 1.0, 1.0]];

pub(crate) fn hermite_basis() -> Vec<Vec<[f64; 4]>> {
    RefKind::ALL
        .iter()
        .map(|&k| local_pieces::<f64>(k).iter().map(poly::widen).collect())
        .collect()
}

fn newton_basis() -> Vec<Vec<[f64; 4]>> {
    newton_pieces::<f64>()
        .iter()
        .map(|pieces| {
            vec![
                poly::widen(&poly::compose_affine(&pieces[0], -0.5, 0.5)),
                poly::widen(&poly::compose_affine(&pieces[1], 0.5, 0.5)),
            ]
        })
        .collect()
}

/// `Σ coef(kx, ky) b_kx(x) b_ky(y)` on every piece pair, stored row by row.
pub(crate) fn tensor_assemble(bx: &[Vec<[f64; 4]>], by: &[Vec<[f64; 4]>], coef: impl Fn(usize, usize) -> f64) -> Vec<ElemPoly> {
    let npx = bx[0].len();
    let npy = by[0].len();
    let mut out = vec![ElemPoly::default(); npx * npy];
    for py in 0..npy {
        for px in 0..npx {
            let e = &mut out[py * npx + px];
            for (kx, fx) in bx.iter().enumerate() {
                for (ky, fy) in by.iter().enumerate() {
                    let w = coef(kx, ky);
                    if w != 0.0 {
                        e.axpy(w, &ElemPoly::outer(&fx[px], &fy[py]));
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn full_elems(reference: &[[f64; 4]; 4]) -> Vec<ElemPoly> {
    let b = hermite_basis();
    tensor_assemble(&b, &b, |kx, ky| reference[kx][ky])
}

fn bisected(lo: f64, hi: f64) -> Result<Grid1D> {
    Grid1D::new(vec![lo, 0.5 * (lo + hi), hi])
}

fn whole(lo: f64, hi: f64) -> Result<Grid1D> {
    Grid1D::new(vec![lo, hi])
}

fn macro_poly(rect: &MacroRect, elems: Vec<ElemPoly>) -> Result<PiecewisePoly2D> {
    PiecewisePoly2D::new(bisected(rect.x0, rect.x1)?, bisected(rect.y0, rect.y1)?, 2, elems)
}

/// Full biquadratic C1 macro interpolant from its 16 functionals, assembled
/// from the Lagrange-type basis.
pub fn interp_full_macro_data(data: &MacroFunctionals16) -> Result<PiecewisePoly2D> {
    macro_poly(&data.rect, full_elems(&data.reference()))
}

/// Same interpolant assembled from the two-dimensional Newton form.
pub fn interp_full_macro_newton_data(data: &MacroFunctionals16) -> Result<PiecewisePoly2D> {
    let f = divided_diff_2d(&data.reference())?;
    let b = newton_basis();
    macro_poly(&data.rect, tensor_assemble(&b, &b, |i, j| f[i][j]))
}

pub fn interp_full_macro<F: ScalarField + ?Sized>(field: &F, rect: MacroRect) -> Result<PiecewisePoly2D> {
    interp_full_macro_data(&MacroFunctionals16::from_field(field, rect))
}

pub fn interp_full_macro_newton<F: ScalarField + ?Sized>(field: &F, rect: MacroRect) -> Result<PiecewisePoly2D> {
    interp_full_macro_newton_data(&MacroFunctionals16::from_field(field, rect))
}

/// Full interpolant with the mixed-derivative functionals set to zero.
pub fn interp_reduced_macro<F: ScalarField + ?Sized>(field: &F, rect: MacroRect) -> Result<PiecewisePoly2D> {
    let mut d = MacroFunctionals16::from_field(field, rect);
    d.vxy = [[0.0; 2]; 2];
    interp_full_macro_data(&d)
}

pub(crate) fn bfs_elem(data: &MacroFunctionals16) -> Result<ElemPoly> {
    let f = divided_diff_2d(&data.reference())?;
    let b: Vec<Vec<[f64; 4]>> = NEWTON_CUBIC.iter().map(|c| vec![*c]).collect();
    Ok(tensor_assemble(&b, &b, |i, j| f[i][j])[0])
}

/// Bicubic Hermite interpolant on a single element.
pub fn interp_bfs<F: ScalarField + ?Sized>(field: &F, rect: MacroRect) -> Result<PiecewisePoly2D> {
    let e = bfs_elem(&MacroFunctionals16::from_field(field, rect))?;
    PiecewisePoly2D::new(whole(rect.x0, rect.x1)?, whole(rect.y0, rect.y1)?, 3, vec![e])
}

pub(crate) fn q2_elem<F: ScalarField + ?Sized>(field: &F, rect: &MacroRect) -> ElemPoly {
    let (cx, cy) = rect.centre();
    let xs = [rect.x0, cx, rect.x1];
    let ys = [rect.y0, cy, rect.y1];
    let b: Vec<Vec<[f64; 4]>> = LAGRANGE3.iter().map(|c| vec![*c]).collect();
    tensor_assemble(&b, &b, |a, c| field.value(xs[a], ys[c]))[0]
}

/// Biquadratic nodal interpolant at the 3 × 3 tensor nodes of an element.
pub fn nodal_q2<F: ScalarField + ?Sized>(field: &F, rect: MacroRect) -> Result<PiecewisePoly2D> {
    PiecewisePoly2D::new(whole(rect.x0, rect.x1)?, whole(rect.y0, rect.y1)?, 2, vec![q2_elem(field, &rect)])
}

/// Data of the two-element operator: values and spline-direction derivatives
/// at the three Lagrange nodes (low, middle, high) of each of the two spline
/// ends, indexed `[lagrange node][spline end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnisoData {
    pub values: [[f64; 2]; 3],
    pub derivs: [[f64; 2]; 3],
}

/// Samples the field for [`interp_aniso_data`].
pub fn aniso_data<F: ScalarField + ?Sized>(field: &F, tm: &TwoElementMacro) -> AnisoData {
    let r = &tm.rect;
    let (cx, cy) = r.centre();
    let mut d = AnisoData { values: [[0.0; 2]; 3], derivs: [[0.0; 2]; 3] };
    for a in 0..3 {
        for e in 0..2 {
            let (x, y, dx, dy) = match tm.split {
                SplitAxis::Y => ([r.x0, cx, r.x1][a], r.corners_y()[e], 0, 1),
                SplitAxis::X => (r.corners_x()[e], [r.y0, cy, r.y1][a], 1, 0),
            };
            d.values[a][e] = field.value(x, y);
            d.derivs[a][e] = field.d(dx, dy, x, y);
        }
    }
    d
}

pub(crate) fn aniso_elems(tm: &TwoElementMacro, data: &AnisoData) -> Vec<ElemPoly> {
    let (hx, hy) = tm.rect.half();
    let lag: Vec<Vec<[f64; 4]>> = LAGRANGE3.iter().map(|c| vec![*c]).collect();
    let her = hermite_basis();
    let coef = |a: usize, k: usize, h: f64| match k {
        0 | 1 => data.values[a][k],
        _ => h * data.derivs[a][k - 2],
    };
    match tm.split {
        SplitAxis::Y => tensor_assemble(&lag, &her, |a, k| coef(a, k, hy)),
        SplitAxis::X => tensor_assemble(&her, &lag, |k, a| coef(a, k, hx)),
    }
}

/// Two-element macro interpolant: quadratic Lagrange across the split and a
/// C1 quadratic macro spline along it.
pub fn interp_aniso_data(tm: &TwoElementMacro, data: &AnisoData) -> Result<PiecewisePoly2D> {
    let r = &tm.rect;
    let (gx, gy) = match tm.split {
        SplitAxis::Y => (whole(r.x0, r.x1)?, bisected(r.y0, r.y1)?),
        SplitAxis::X => (bisected(r.x0, r.x1)?, whole(r.y0, r.y1)?),
    };
    PiecewisePoly2D::new(gx, gy, 2, aniso_elems(tm, data))
}

pub fn interp_aniso<F: ScalarField + ?Sized>(field: &F, tm: &TwoElementMacro) -> Result<PiecewisePoly2D> {
    interp_aniso_data(tm, &aniso_data(field, tm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_polynomial_field;

    fn reference_rect() -> MacroRect {
        MacroRect::new(-1.0, 1.0, -1.0, 1.0).unwrap()
    }

    #[test]
    fn x2y2_reproduced_on_a_stretched_macro() {
        let u = make_polynomial_field(&[vec![0.0, 0.0, 0.0], vec![0.0; 3], vec![0.0, 0.0, 1.0]]).unwrap();
        let r = MacroRect::new(0.3, 0.7, 1.0, 1.001).unwrap();
        let p = interp_full_macro(&u, r).unwrap();
        for &(x, y) in &[(0.31, 1.0002), (0.5, 1.0005), (0.69, 1.0009)] {
            assert!((p.value(x, y) - u.value(x, y)).abs() < 1e-12);
        }
    }

    #[test]
    fn divided_difference_table_corner_entries() {
        let u = make_polynomial_field(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let d = MacroFunctionals16::from_field(&u, reference_rect());
        let f = divided_diff_2d(&d.reference()).unwrap();
        assert!((f[0][0] - u.value(-1.0, -1.0)).abs() < 1e-14);
        assert!((f[1][0] - u.d(1, 0, -1.0, -1.0)).abs() < 1e-14);
        assert!((f[0][1] - u.d(0, 1, -1.0, -1.0)).abs() < 1e-14);
        assert!((f[1][1] - u.d(1, 1, -1.0, -1.0)).abs() < 1e-14);
    }

    #[test]
    fn bfs_reproduces_cubic() {
        let u = make_polynomial_field(&[vec![0.0], vec![0.0], vec![0.0], vec![1.0]]).unwrap();
        let p = interp_bfs(&u, MacroRect::new(0.0, 0.5, 0.0, 2.0).unwrap()).unwrap();
        assert_eq!(p.degree, 3);
        assert!((p.value(0.2, 1.3) - 0.008).abs() < 1e-14);
    }

    #[test]
    fn aniso_y_spline_reproduces_q2() {
        let u = make_polynomial_field(&[vec![1.0, 0.0, 2.0], vec![0.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]]).unwrap();
        for split in [SplitAxis::Y, SplitAxis::X] {
            let tm = TwoElementMacro { rect: MacroRect::new(0.0, 1.0, 0.0, 0.01).unwrap(), split };
            let p = interp_aniso(&u, &tm).unwrap();
            for &(x, y) in &[(0.1, 0.001), (0.6, 0.0051), (0.95, 0.0099)] {
                assert!((p.value(x, y) - u.value(x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nodal_q2_matches_nodes() {
        let u = crate::fields::make_smooth_field("sin_sin").unwrap();
        let r = MacroRect::new(0.1, 0.4, 0.2, 0.3).unwrap();
        let p = nodal_q2(&u, r).unwrap();
        for x in [0.1, 0.25, 0.4] {
            for y in [0.2, 0.25, 0.3] {
                assert!((p.value(x, y) - u.value(x, y)).abs() < 1e-14);
            }
        }
    }
}
