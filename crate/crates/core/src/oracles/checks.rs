use super::divided::brute_force_divided_difference;
use super::random::{random_fn1d, random_hermite, random_poly_field, random_smooth_field, seeded};
use crate::error::Result;
use crate::fields::{Fn1D, PolyField, ScalarField, SeparableSum};
use crate::interpolation::{
    assemble_node_data, divided_diff_2d, interp_aniso, interp_aniso_mesh, interp_bfs, interp_bfs_mesh, interp_full, interp_full_macro, interp_full_macro_data,
    interp_full_macro_newton_data, interp_reduced, interp_reduced_macro, quasi_interp, MacroFunctionals16, NodeData, PiecewisePoly2D,
};
use crate::mesh::{build_macro_mesh, select_sigma, Corner, Grid1D, MacroMesh, MacroRect, SigmaStrategy, SplitAxis, TwoElementMacro};
use crate::norms::QuadratureRule;
use crate::spline_core::{
    divided_difference, eval_dual_weight, eval_world_basis, hermite_interpolate_1d, hermite_interpolate_1d_newton, newton_coefficients, pair_sum,
    theta, DualWeight, EndpointSide, HermiteData1D, KnotSequence, Side, WorldKind,
};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    pub fn new(name: &str, cases: usize, max_error: f64, tolerance: f64) -> Self {
        Self { name: name.to_string(), cases, max_error, tolerance, passed: max_error <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn new(seed: u64, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { schema_version: SCHEMA_VERSION, seed, checks, passed }
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let e = (a - b).abs() / b.abs().max(1.0);
    if e.is_nan() {
        f64::INFINITY
    } else {
        e
    }
}

fn grid_points(r: &MacroRect, n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let (s, t) = (i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64);
            out.push((r.x0 + s * (r.x1 - r.x0), r.y0 + t * (r.y1 - r.y0)));
        }
    }
    out
}

/// Largest `|p - u|` over the points divided by the largest `|u|`.
fn relative_sup<P: ScalarField + ?Sized, U: ScalarField + ?Sized>(p: &P, u: &U, pts: &[(f64, f64)]) -> f64 {
    let (mut diff, mut scale) = (0.0f64, 0.0f64);
    for &(x, y) in pts {
        let (a, b) = (p.value(x, y), u.value(x, y));
        diff = diff.max(if (a - b).is_nan() { f64::INFINITY } else { (a - b).abs() });
        scale = scale.max(b.abs());
    }
    diff / scale.max(f64::MIN_POSITIVE)
}

fn reference_rect() -> MacroRect {
    MacroRect { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 }
}

fn zero_functionals(rect: MacroRect) -> MacroFunctionals16 {
    MacroFunctionals16 { rect, v: [[0.0; 2]; 2], vx: [[0.0; 2]; 2], vy: [[0.0; 2]; 2], vxy: [[0.0; 2]; 2] }
}

fn slot(d: &mut MacroFunctionals16, kx: usize, ky: usize) -> &mut f64 {
    let (i, j) = (kx % 2, ky % 2);
    match (kx >= 2, ky >= 2) {
        (false, false) => &mut d.v[i][j],
        (true, false) => &mut d.vx[i][j],
        (false, true) => &mut d.vy[i][j],
        (true, true) => &mut d.vxy[i][j],
    }
}

/// All 256 pairings of the vertex functionals with the assembled basis on
/// the reference macro.
pub fn check_kronecker() -> Result<CheckResult> {
    let rect = reference_rect();
    let mut worst = 0.0f64;
    for src in 0..16 {
        let mut d = zero_functionals(rect);
        *slot(&mut d, src / 4, src % 4) = 1.0;
        let p = interp_full_macro_data(&d)?;
        for tgt in 0..16 {
            let (kx, ky) = (tgt / 4, tgt % 4);
            let (x, y) = ([-1.0, 1.0][kx % 2], [-1.0, 1.0][ky % 2]);
            let got = p.eval(x, y, usize::from(kx >= 2), usize::from(ky >= 2))?;
            let want = if src == tgt { 1.0 } else { 0.0 };
            worst = worst.max((got - want).abs());
        }
    }
    Ok(CheckResult::new("kronecker", 256, worst, 1e-12))
}

/// Evaluator of a dual weight, replaceable to exercise the checks.
pub type WeightFn<'a> = dyn Fn(&DualWeight<f64>, f64) -> f64 + Sync + 'a;

pub fn exact_weight(w: &DualWeight<f64>, x: f64) -> f64 {
    eval_dual_weight(w, x).unwrap_or(f64::NAN)
}

// Macro grids whose consecutive edges have equal and 10:1 lengths.
const EDGE_GRIDS: [&[f64]; 2] = [&[0.0, 0.5, 1.0], &[0.0, 1.0, 1.1]];

fn element_grid(macro_nodes: &[f64]) -> Vec<f64> {
    let mut xs = Vec::with_capacity(2 * macro_nodes.len() - 1);
    for w in macro_nodes.windows(2) {
        xs.push(w[0]);
        xs.push(0.5 * (w[0] + w[1]));
    }
    xs.push(macro_nodes[macro_nodes.len() - 1]);
    xs
}

/// `∫ f` over `[a, b]` split at the midpoint.
fn split_integral(rule: &QuadratureRule<f64>, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let m = 0.5 * (a + b);
    rule.integrate(a, m, &mut f) + rule.integrate(m, b, &mut f)
}

/// Unit mass of every dual weight and the duality system against the
/// derivatives of the edge-scaled `ψ` of both edge endpoints.
pub fn check_dual_weights_with(weight: &WeightFn) -> Result<CheckResult> {
    let rule = QuadratureRule::gauss_legendre(5);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for nodes in EDGE_GRIDS {
        let xs = element_grid(nodes);
        for e in 0..nodes.len() - 1 {
            let (a, b) = (nodes[e], nodes[e + 1]);
            for (side, own) in [(EndpointSide::Left, 2 * e), (EndpointSide::Right, 2 * e + 2)] {
                let w = DualWeight::new(a, b, side)?;
                let mass = split_integral(&rule, a, b, |x| weight(&w, x));
                worst = worst.max((mass - 1.0).abs());
                for node in [2 * e, 2 * e + 2] {
                    let mut err = None;
                    let pairing = split_integral(&rule, a, b, |x| match eval_world_basis(&xs, node, WorldKind::Psi, 1, x) {
                        Ok(v) => v * weight(&w, x),
                        Err(e) => {
                            err = Some(e);
                            0.0
                        }
                    });
                    if let Some(e) = err {
                        return Err(e);
                    }
                    let want = if node == own { 1.0 } else { 0.0 };
                    worst = worst.max((pairing - want).abs());
                }
                cases += 3;
            }
        }
    }
    Ok(CheckResult::new("dual_weights", cases, worst, 1e-12))
}

pub fn check_dual_weights() -> Result<CheckResult> {
    check_dual_weights_with(&exact_weight)
}

/// `ψ_i + ψ_{i+1}` and `θ` are orthogonal to `φ'_i, φ'_{i+1}` on the edge,
/// and the closed form of the pair sum agrees with the basis functions.
pub fn check_orthogonality() -> Result<CheckResult> {
    let rule = QuadratureRule::gauss_legendre(5);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for nodes in EDGE_GRIDS {
        let xs = element_grid(nodes);
        for e in 0..nodes.len() - 1 {
            let (a, b) = (nodes[e], nodes[e + 1]);
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            let world = |kind, node, order, x| eval_world_basis(&xs, node, kind, order, x).unwrap_or(f64::NAN);
            let psi_sum = |x| world(WorldKind::Psi, 2 * e, 0, x) + world(WorldKind::Psi, 2 * e + 2, 0, x);
            for l in [2 * e, 2 * e + 2] {
                let dphi = |x| world(WorldKind::Phi, l, 1, x);
                let o1 = split_integral(&rule, a, b, |x| psi_sum(x) * dphi(x));
                let o2 = split_integral(&rule, a, b, |x| theta(c, h, x) * dphi(x));
                worst = worst.max(o1.abs()).max(o2.abs());
                cases += 2;
            }
            for k in 0..=20 {
                let x = a + (b - a) * k as f64 / 20.0;
                worst = worst.max((pair_sum(c, h, x) - psi_sum(x)).abs());
            }
        }
    }
    if worst.is_nan() {
        worst = f64::INFINITY;
    }
    Ok(CheckResult::new("orthogonality", cases, worst, 1e-12))
}

/// Lagrange-type and Newton-type assemblies agree in 1D and 2D.
pub fn check_newton_lagrange(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let d = random_hermite(&mut rng);
        let a: f64 = rng.gen_range(-2.0..2.0);
        let b = a + rng.gen_range(0.01..3.0);
        let s1 = hermite_interpolate_1d(&d, a, b)?;
        let s2 = hermite_interpolate_1d_newton(&d, a, b)?;
        for k in 0..=16 {
            let x = a + (b - a) * k as f64 / 16.0;
            for order in 0..=2 {
                for side in [Side::LeftLimit, Side::RightLimit] {
                    let (u, v) = (s1.eval(order, x, side)?, s2.eval(order, x, side)?);
                    let scale = ((b - a) * 0.5).powi(order as i32);
                    worst = worst.max(rel(u * scale, v * scale));
                }
            }
        }
    }
    for _ in 0..100 {
        let rect = random_rect(&mut rng, 1e3);
        let mut d = zero_functionals(rect);
        for kx in 0..4 {
            for ky in 0..4 {
                *slot(&mut d, kx, ky) = rng.gen_range(-1.0..1.0);
            }
        }
        let p = interp_full_macro_data(&d)?;
        let q = interp_full_macro_newton_data(&d)?;
        for iy in 0..2 {
            for ix in 0..2 {
                for (u, v) in p.elem(ix, iy).c.iter().flatten().zip(q.elem(ix, iy).c.iter().flatten()) {
                    worst = worst.max((u - v).abs());
                }
            }
        }
    }
    Ok(CheckResult::new("newton_vs_lagrange", 200, worst, 1e-12))
}

/// Rectangle in `[-1, 3]²` with long side in `[0.1, 2]` along a random axis
/// and aspect ratio up to `max_aspect`.
fn random_rect<R: Rng>(rng: &mut R, max_aspect: f64) -> MacroRect {
    let x0 = rng.gen_range(-1.0..1.0);
    let y0 = rng.gen_range(-1.0..1.0);
    let long = rng.gen_range(0.1..2.0);
    let short = long / max_aspect.powf(rng.gen_range(0.0..1.0));
    let (w, h) = if rng.gen_bool(0.5) { (long, short) } else { (short, long) };
    MacroRect { x0, x1: x0 + w, y0, y1: y0 + h }
}

/// The divided-difference kernel against the textbook recursion on random
/// knot groups and functions.
pub fn check_divided_differences(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let mut worst = 0.0f64;
    let n = 1000;
    for _ in 0..n {
        let f = random_fn1d(&mut rng);
        let groups = rng.gen_range(1..=3);
        let mut x = rng.gen_range(-1.0..-0.5);
        let mut nodes = Vec::new();
        for _ in 0..groups {
            nodes.push((x, rng.gen_range(1..=2usize)));
            x += rng.gen_range(0.2..0.7);
        }
        let data: Vec<Vec<f64>> = nodes.iter().map(|&(t, m)| (0..m).map(|k| f.deriv(k, t)).collect()).collect();
        let expanded: Vec<f64> = nodes.iter().flat_map(|&(t, m)| std::iter::repeat_n(t, m)).collect();
        let fast = divided_difference(&KnotSequence::new(nodes)?, &data)?;
        let slow = brute_force_divided_difference(&expanded, &|k, t| f.deriv(k, t));
        worst = worst.max(rel(fast, slow));
    }
    Ok(CheckResult::new("divided_differences", n, worst, 1e-12))
}

/// Integral representations of the two highest Hermite divided differences
/// on `[-1, 1]`, for random functions and for their macro splines.
pub fn check_peano(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let rule = QuadratureRule::gauss_legendre(10);
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let f = random_fn1d(&mut rng);
        let d = HermiteData1D::new(f.deriv(0, -1.0), f.deriv(1, -1.0), f.deriv(0, 1.0), f.deriv(1, 1.0));
        let c = newton_coefficients(&d)?;
        let s = hermite_interpolate_1d(&d, -1.0, 1.0)?;
        let s2 = |x: f64| s.eval(2, x, if x < 0.0 { Side::LeftLimit } else { Side::RightLimit }).unwrap_or(f64::NAN);
        for (k, kernel) in [(2usize, (|x: f64| (1.0 - x) / 4.0) as fn(f64) -> f64), (3, |x: f64| x / 4.0)] {
            let of_f = split_integral(&rule, -1.0, 1.0, |x| kernel(x) * f.deriv(2, x));
            let of_s = split_integral(&rule, -1.0, 1.0, |x| kernel(x) * s2(x));
            worst = worst.max(rel(of_f, c[k])).max(rel(of_s, c[k]));
        }
    }
    Ok(CheckResult::new("peano_form", n, worst, 1e-12))
}

/// Line integral along `y = y0` (`along_x`) or `x = x0`, split at the centre.
fn edge_integral<F: ScalarField + ?Sized>(rule: &QuadratureRule<f64>, f: &F, alpha: (usize, usize), along_x: bool, fixed: f64) -> f64 {
    split_integral(rule, -1.0, 1.0, |s| if along_x { f.d(alpha.0, alpha.1, s, fixed) } else { f.d(alpha.0, alpha.1, fixed, s) })
}

fn area_integral<F: ScalarField + ?Sized>(rule: &QuadratureRule<f64>, f: &F, alpha: (usize, usize)) -> f64 {
    split_integral(rule, -1.0, 1.0, |y| split_integral(rule, -1.0, 1.0, |x| f.d(alpha.0, alpha.1, x, y)))
}

/// Functionals of the reduced operator for the first derivative in `x`
/// (vertex values, edge means and normal-derivative edge means on the two
/// horizontal edges) and for the mixed derivative (all four edge integrals
/// and the area integral). Each must take the same value on `u` and on its
/// interpolant, for both the reduced and the full operator.
pub fn check_reduced_functionals(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let rule = QuadratureRule::gauss_legendre(10);
    let rect = reference_rect();
    let mut worst = 0.0f64;
    let n = 20;
    let values = |f: &dyn ScalarField| -> Vec<f64> {
        let mut out = Vec::new();
        for &(x, y) in &[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)] {
            out.push(f.d(1, 0, x, y));
        }
        for y in [-1.0, 1.0] {
            out.push(0.5 * edge_integral(&rule, f, (1, 0), true, y));
        }
        for y in [-1.0, 1.0] {
            out.push(0.5 * edge_integral(&rule, f, (1, 1), true, y));
        }
        for y in [-1.0, 1.0] {
            out.push(edge_integral(&rule, f, (1, 1), true, y));
        }
        for x in [-1.0, 1.0] {
            out.push(edge_integral(&rule, f, (1, 1), false, x));
        }
        out.push(area_integral(&rule, f, (1, 1)));
        out
    };
    for _ in 0..n {
        let u = random_smooth_field(&mut rng);
        let fu = values(&u);
        // closed forms of the edge means through vertex data
        let f5 = 0.5 * (u.value(1.0, -1.0) - u.value(-1.0, -1.0));
        let f7 = 0.5 * (u.d(0, 1, 1.0, -1.0) - u.d(0, 1, -1.0, -1.0));
        worst = worst.max(rel(fu[4], f5)).max(rel(fu[6], f7));
        for p in [interp_reduced_macro(&u, rect)?, interp_full_macro(&u, rect)?] {
            for (a, b) in values(&p).iter().zip(&fu) {
                worst = worst.max(rel(*a, *b));
            }
        }
    }
    Ok(CheckResult::new("reduced_functionals", n, worst, 1e-10))
}

fn dd_table<F: ScalarField + ?Sized>(f: &F, rect: MacroRect) -> Result<[[f64; 4]; 4]> {
    divided_diff_2d(&MacroFunctionals16::from_field(f, rect).reference())
}

/// The two-dimensional divided differences take the same values on `u` and
/// on its full macro and bicubic interpolants.
pub fn check_newton_table_invariance(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let mut worst = 0.0f64;
    let n = 50;
    for _ in 0..n {
        let u = random_smooth_field(&mut rng);
        let rect = random_rect(&mut rng, 100.0);
        let t = dd_table(&u, rect)?;
        for p in [interp_full_macro(&u, rect)?, interp_bfs(&u, rect)?] {
            let tp = dd_table(&p, rect)?;
            for (a, b) in tp.iter().flatten().zip(t.iter().flatten()) {
                worst = worst.max(rel(*a, *b));
            }
        }
    }
    Ok(CheckResult::new("newton_table_invariance", n, worst, 1e-10))
}

/// Divided differences of the two-element operator on the reference macro:
/// Lagrange groups `{-1}, {-1,0}, {-1,0,1}` in `x` and Hermite groups in `y`.
pub fn aniso_dd_table<F: ScalarField + ?Sized>(f: &F) -> Result<[[f64; 4]; 3]> {
    let mut rows = [[0.0; 4]; 3];
    for (a, &x) in [-1.0, 0.0, 1.0].iter().enumerate() {
        rows[a] = newton_coefficients(&HermiteData1D::new(f.value(x, -1.0), f.d(0, 1, x, -1.0), f.value(x, 1.0), f.d(0, 1, x, 1.0)))?;
    }
    let mut t = [[0.0; 4]; 3];
    for j in 0..4 {
        t[0][j] = rows[0][j];
        t[1][j] = rows[1][j] - rows[0][j];
        t[2][j] = 0.5 * (rows[2][j] - 2.0 * rows[1][j] + rows[0][j]);
    }
    Ok(t)
}

/// Associated functional `F^γ_{ij}` of the two-element operator applied to
/// `v = D^γ f` on the reference macro, for `γ_x <= 1`, `i >= γ_x`, `j >= γ_y`.
///
/// The `x` part is a point value at `-1` (`i = 0`), a first difference over
/// `[-1, 0]` (`i = 1`) or a halved second difference over `-1, 0, 1`
/// (`i = 2`), realised through integrals of `v` when `γ_x = 1`. The `y` part
/// is a value or derivative at `y = -1` (`j = 0, 1`) or the integral against
/// `(1 - y)/4` (`j = 2`) or `y/4` (`j = 3`) of the second `y` derivative.
pub fn aniso_functional<F: ScalarField + ?Sized>(f: &F, gamma: (usize, usize), i: usize, j: usize, rule: &QuadratureRule<f64>) -> f64 {
    let gx = gamma.0;
    let s: [fn(f64) -> f64; 2] = [|y| (1.0 - y) / 4.0, |y| y / 4.0];
    let ypart = |x: f64| match j {
        0 | 1 => f.d(gx, j, x, -1.0),
        _ => split_integral(rule, -1.0, 1.0, |y| s[j - 2](y) * f.d(gx, 2, x, y)),
    };
    let on = |a: f64, b: f64| rule.integrate(a, b, ypart);
    match (i, gx) {
        (0, _) => ypart(-1.0),
        (1, 0) => ypart(0.0) - ypart(-1.0),
        (1, _) => on(-1.0, 0.0),
        (_, 0) => 0.5 * (ypart(-1.0) - 2.0 * ypart(0.0) + ypart(1.0)),
        _ => 0.5 * (on(0.0, 1.0) - on(-1.0, 0.0)),
    }
}

/// Index pairs `(i, j)` of the associated functionals for `γ`.
pub fn aniso_functional_indices(gamma: (usize, usize)) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in gamma.0..3 {
        for j in gamma.1..4 {
            out.push((i, j));
        }
    }
    out
}

pub const ANISO_GAMMAS: [(usize, usize); 5] = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)];

/// For the two-element operator in both split directions: its divided
/// differences and integral functionals are invariant, and the integral
/// functionals equal the divided differences.
pub fn check_aniso_functionals(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let rule = QuadratureRule::gauss_legendre(8);
    let tm = TwoElementMacro { rect: reference_rect(), split: SplitAxis::Y };
    let mut worst = 0.0f64;
    let n = 30;
    for _ in 0..n {
        let u = random_smooth_field(&mut rng);
        let p = interp_aniso(&u, &tm)?;
        let (tu, tp) = (aniso_dd_table(&u)?, aniso_dd_table(&p)?);
        for (a, b) in tp.iter().flatten().zip(tu.iter().flatten()) {
            worst = worst.max(rel(*a, *b));
        }
        for gamma in ANISO_GAMMAS {
            for (i, j) in aniso_functional_indices(gamma) {
                let fu = aniso_functional(&u, gamma, i, j, &rule);
                let fp = aniso_functional(&p, gamma, i, j, &rule);
                worst = worst.max(rel(fp, fu)).max(rel(fu, tu[i][j]));
            }
        }
        // transposed operator on the transposed field
        let ut = Transposed(&u);
        let tmx = TwoElementMacro { rect: reference_rect(), split: SplitAxis::X };
        let q = Transposed(interp_aniso(&ut, &tmx)?);
        let tq = aniso_dd_table(&q)?;
        for (a, b) in tq.iter().flatten().zip(tu.iter().flatten()) {
            worst = worst.max(rel(*a, *b));
        }
    }
    Ok(CheckResult::new("aniso_functionals", n, worst, 1e-10))
}

/// `(x, y) ↦ f(y, x)`.
struct Transposed<F>(F);

impl<F: ScalarField> ScalarField for Transposed<F> {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        self.0.d(b, a, y, x)
    }
}

const ASPECTS: [f64; 3] = [1.0, 1e3, 1e6];

fn stretched(aspect: f64, long_x: bool) -> MacroRect {
    let (w, h) = if long_x { (1.0, 1.0 / aspect) } else { (1.0 / aspect, 1.0) };
    MacroRect { x0: 0.25, x1: 0.25 + w, y0: -0.5, y1: -0.5 + h }
}

/// Full macro operator (both assemblies) on random biquadratics.
pub fn check_reproduction_full(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let u = random_poly_field(&mut rng, 2, 2);
        for aspect in ASPECTS {
            for long_x in [true, false] {
                let rect = stretched(aspect, long_x);
                let d = MacroFunctionals16::from_field(&u, rect);
                let pts = grid_points(&rect, 9);
                worst = worst.max(relative_sup(&interp_full_macro_data(&d)?, &u, &pts));
                worst = worst.max(relative_sup(&interp_full_macro_newton_data(&d)?, &u, &pts));
            }
        }
    }
    Ok(CheckResult::new("reproduction_full", 50, worst, 1e-9))
}

/// Bicubic element on every monomial of total degree at most 3.
pub fn check_reproduction_bfs() -> Result<CheckResult> {
    let rect = MacroRect { x0: 0.3, x1: 0.8, y0: 0.1, y1: 0.35 };
    let pts = grid_points(&rect, 9);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for a in 0..=3 {
        for b in 0..=3 - a {
            let mut c = [[0.0; 4]; 4];
            c[a][b] = 1.0;
            let u = PolyField { c };
            worst = worst.max(relative_sup(&interp_bfs(&u, rect)?, &u, &pts));
            cases += 1;
        }
    }
    Ok(CheckResult::new("reproduction_bfs", cases, worst, 1e-10))
}

/// Two-element operator on random biquadratics, both split directions.
pub fn check_reproduction_aniso(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let u = random_poly_field(&mut rng, 2, 2);
        for aspect in ASPECTS {
            for (split, long_x) in [(SplitAxis::Y, true), (SplitAxis::X, false)] {
                let rect = stretched(aspect, long_x);
                let p = interp_aniso(&u, &TwoElementMacro { rect, split })?;
                worst = worst.max(relative_sup(&p, &u, &grid_points(&rect, 9)));
            }
        }
    }
    Ok(CheckResult::new("reproduction_aniso", 50, worst, 1e-9))
}

fn graded_mesh() -> Result<MacroMesh> {
    let gx = Grid1D::new(vec![0.0, 0.3, 0.5, 0.9, 1.0])?;
    let gy = Grid1D::new(vec![0.0, 0.2, 0.7, 0.75, 1.0])?;
    Ok(build_macro_mesh(&gx, &gy))
}

fn mesh_rect(mesh: &MacroMesh) -> MacroRect {
    MacroRect { x0: mesh.macro_x.first(), x1: mesh.macro_x.last(), y0: mesh.macro_y.first(), y1: mesh.macro_y.last() }
}

/// Reduced operator on `1, x, x², y, y²` over a graded macro mesh.
pub fn check_reproduction_reduced() -> Result<CheckResult> {
    let mesh = graded_mesh()?;
    let pts = grid_points(&mesh_rect(&mesh), 21);
    let mut worst = 0.0f64;
    for (a, b) in [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)] {
        let mut c = [[0.0; 4]; 4];
        c[a][b] = 1.0;
        let u = PolyField { c };
        worst = worst.max(relative_sup(&interp_reduced(&u, &mesh)?, &u, &pts));
    }
    Ok(CheckResult::new("reproduction_reduced", 5, worst, 1e-10))
}

fn sigma_choices(mesh: &MacroMesh) -> Vec<crate::mesh::SigmaSelection> {
    let mut out = Vec::new();
    for corner in [Corner::LowerLeft, Corner::UpperLeft, Corner::UpperRight, Corner::LowerRight] {
        out.push(select_sigma(mesh, SigmaStrategy::TowardCorner, corner));
    }
    out.push(select_sigma(mesh, SigmaStrategy::Left, Corner::LowerLeft));
    out.push(select_sigma(mesh, SigmaStrategy::Down, Corner::LowerLeft));
    out
}

/// Random C1 piecewise biquadratic on the macro mesh.
pub fn random_c1_q2<R: Rng>(rng: &mut R, mesh: &MacroMesh) -> Result<PiecewisePoly2D> {
    let (nx, ny) = (mesh.macro_x.len(), mesh.macro_y.len());
    let mut draw = || (0..nx * ny).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    let d = NodeData { nx, ny, u: draw(), ux: draw(), uy: draw(), uxy: draw() };
    assemble_node_data(mesh, &d)
}

/// Quasi-interpolant on random C1 piecewise biquadratics for every edge strategy.
pub fn check_reproduction_quasi(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let mesh = graded_mesh()?;
    let pts = grid_points(&mesh_rect(&mesh), 21);
    let sels = sigma_choices(&mesh);
    let mut worst = 0.0f64;
    let n = 20;
    for _ in 0..n {
        let v = random_c1_q2(&mut rng, &mesh)?;
        for sel in &sels {
            worst = worst.max(relative_sup(&quasi_interp(&v, &mesh, sel)?, &v, &pts));
        }
    }
    Ok(CheckResult::new("reproduction_quasi", n * sels.len(), worst, 1e-10))
}

/// Largest jump of value and gradient across every interior element
/// interface, sampled from both adjacent elements.
pub fn max_interface_jump(p: &PiecewisePoly2D, samples: usize) -> f64 {
    let (xs, ys) = (p.gx.coords(), p.gy.coords());
    let (nx, ny) = (p.nx(), p.ny());
    let mut worst = 0.0f64;
    let mut cmp = |e1: (usize, usize), e2: (usize, usize), x: f64, y: f64| {
        for (a, b) in [(0, 0), (1, 0), (0, 1)] {
            let (u, v) = (p.eval_in(e1.0, e1.1, a, b, x, y), p.eval_in(e2.0, e2.1, a, b, x, y));
            worst = worst.max(rel(u, v));
        }
    };
    for k in 1..nx {
        for iy in 0..ny {
            for s in 0..samples {
                let y = ys[iy] + (ys[iy + 1] - ys[iy]) * s as f64 / (samples - 1) as f64;
                cmp((k - 1, iy), (k, iy), xs[k], y);
            }
        }
    }
    for k in 1..ny {
        for ix in 0..nx {
            for s in 0..samples {
                let x = xs[ix] + (xs[ix + 1] - xs[ix]) * s as f64 / (samples - 1) as f64;
                cmp((ix, k - 1), (ix, k), x, ys[k]);
            }
        }
    }
    worst
}

/// Value and gradient continuity of the full, quasi and bicubic interpolants
/// of smooth fields on a graded mesh.
pub fn check_c1_continuity(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let mesh = graded_mesh()?;
    let sels = sigma_choices(&mesh);
    let mut worst = 0.0f64;
    let n = 10;
    for _ in 0..n {
        let u = random_smooth_field(&mut rng);
        worst = worst.max(max_interface_jump(&interp_full(&u, &mesh)?, 7));
        worst = worst.max(max_interface_jump(&interp_bfs_mesh(&u, &mesh.elem_x, &mesh.elem_y)?, 7));
        for sel in &sels {
            worst = worst.max(max_interface_jump(&quasi_interp(&u, &mesh, sel)?, 7));
        }
    }
    Ok(CheckResult::new("c1_continuity", n * (2 + sels.len()), worst, 1e-10))
}

/// Both sides of the multiplicative trace inequality for `p = 2` on the
/// vertical edges of `rect`: `∫ v(x0,·)² + v(x1,·)²` and
/// `2‖v‖‖v_x‖ + (2/h_x)‖v‖²`.
pub fn check_trace_inequality<F: ScalarField + ?Sized>(v: &F, rect: &MacroRect, rule: &QuadratureRule<f64>) -> (f64, f64) {
    let lhs = rule.integrate(rect.y0, rect.y1, |y| v.value(rect.x0, y).powi(2) + v.value(rect.x1, y).powi(2));
    let sq = |a: usize| rule.integrate(rect.y0, rect.y1, |y| rule.integrate(rect.x0, rect.x1, |x| v.d(a, 0, x, y).powi(2)));
    let (n0, n1) = (sq(0).sqrt(), sq(1).sqrt());
    let hx = rect.x1 - rect.x0;
    (lhs, 2.0 * n0 * n1 + 2.0 / hx * n0 * n0)
}

/// Trace inequality on random bicubic polynomials over elements with aspect
/// ratios up to `10^6` in either direction; the error is `max(lhs/rhs) - 1`.
pub fn check_trace_suite(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let rule = QuadratureRule::gauss_legendre(8);
    let mut worst = f64::NEG_INFINITY;
    let n = 100;
    for _ in 0..n {
        let v = random_poly_field(&mut rng, 3, 3);
        let rect = random_rect(&mut rng, 1e6);
        let (lhs, rhs) = check_trace_inequality(&v, &rect, &rule);
        worst = worst.max(lhs / rhs - 1.0);
    }
    Ok(CheckResult::new("trace_inequality", n, worst, 1e-12))
}

/// `‖Π^y u‖∞ / (‖u‖∞ + h_y ‖u_y‖∞)` over random smooth fields on macros
/// whose short side `h_y` ranges over `1, 10^-1, 10^-3`; each sup is taken
/// over a 32 × 32 sample grid containing the nodes.
pub fn check_aniso_stability(seed: u64, constant: f64) -> Result<CheckResult> {
    let mut rng = seeded(seed);
    let mut worst = 0.0f64;
    let n = 20;
    for _ in 0..n {
        let u = random_smooth_field(&mut rng);
        for hy in [1.0, 0.1, 1e-3] {
            let x0: f64 = rng.gen_range(-1.0..0.0);
            let y0: f64 = rng.gen_range(-1.0..0.0);
            let rect = MacroRect { x0, x1: x0 + 1.0, y0, y1: y0 + hy };
            let p = interp_aniso(&u, &TwoElementMacro { rect, split: SplitAxis::Y })?;
            let pts = grid_points(&rect, 32);
            let sup = |f: &dyn Fn(f64, f64) -> f64| pts.iter().map(|&(x, y)| f(x, y).abs()).fold(0.0, f64::max);
            let num = sup(&|x, y| p.value(x, y));
            let den = sup(&|x, y| u.value(x, y)) + hy * sup(&|x, y| u.d(0, 1, x, y));
            worst = worst.max(num / den);
        }
    }
    Ok(CheckResult::new("aniso_stability", 3 * n, worst, constant))
}

/// Largest coefficient deviation between the element polynomials of `p` and
/// the `x`-independent profile of the first element in each row.
fn profile_deviation(p: &PiecewisePoly2D, reference: &PiecewisePoly2D) -> f64 {
    let mut worst = 0.0f64;
    for iy in 0..p.ny() {
        let r = reference.elem(0, iy);
        for ix in 0..p.nx() {
            let e = p.elem(ix, iy);
            for a in 0..4 {
                for b in 0..4 {
                    let target = if a == 0 { r.c[0][b] } else { 0.0 };
                    worst = worst.max(rel(e.c[a][b], target));
                }
            }
        }
    }
    worst
}

/// Fields of `y` alone: the two-element and reduced operators give the same
/// coefficients on every element of a row, for `x`-partitions whose widths
/// differ by a factor 100.
pub fn check_aniso_invariance(seed: u64) -> Result<CheckResult> {
    let mut rng = seeded(seed ^ 0xA15);
    let gy = Grid1D::new(vec![0.0, 0.1, 0.35, 0.4, 1.0])?;
    let coarse = Grid1D::uniform(0.0, 1.0, 4)?;
    let mixed = Grid1D::new(vec![0.0, 0.0025, 0.005, 0.0075, 0.01, 0.25, 0.5, 0.75, 1.0])?;
    let fine = Grid1D::uniform(0.0, 0.01, 4)?;
    let cases = 10;
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let u = SeparableSum::new((0..3).map(|_| (rng.gen_range(-1.0..1.0), Fn1D::Const(1.0), random_fn1d(&mut rng))).collect());
        let aniso = |gx: &Grid1D| interp_aniso_mesh(&u, gx, &gy, SplitAxis::Y);
        let reduced = |gx: &Grid1D| interp_reduced(&u, &build_macro_mesh(gx, &gy));
        let (ra, rr) = (aniso(&coarse)?, reduced(&coarse)?);
        for gx in [&coarse, &mixed, &fine] {
            worst = worst.max(profile_deviation(&aniso(gx)?, &ra));
            worst = worst.max(profile_deviation(&reduced(gx)?, &rr));
        }
    }
    Ok(CheckResult::new("aniso_invariance", cases, worst, 1e-12))
}

type Suite = fn(u64) -> Result<CheckResult>;

/// Every verification suite, in report order.
pub fn all_suites() -> Vec<Suite> {
    vec![
        |_| check_kronecker(),
        |_| check_dual_weights(),
        |_| check_orthogonality(),
        check_newton_lagrange,
        check_divided_differences,
        check_peano,
        check_reduced_functionals,
        check_newton_table_invariance,
        check_aniso_functionals,
        check_reproduction_full,
        |_| check_reproduction_bfs(),
        check_reproduction_aniso,
        |_| check_reproduction_reduced(),
        check_reproduction_quasi,
        check_c1_continuity,
        check_trace_suite,
        |s| check_aniso_stability(s, 4.0),
        check_aniso_invariance,
    ]
}

/// Runs every suite in parallel; results keep the order of [`all_suites`].
pub fn run_all(seed: u64) -> Result<VerifyReport> {
    let checks = all_suites().par_iter().map(|f| f(seed)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport::new(seed, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Fn1D;

    #[test]
    fn constant_field_gives_trace_equality() {
        let c = PolyField { c: [[1.5, 0.0, 0.0, 0.0], [0.0; 4], [0.0; 4], [0.0; 4]] };
        let rect = MacroRect { x0: 0.0, x1: 0.2, y0: 1.0, y1: 4.0 };
        let (lhs, rhs) = check_trace_inequality(&c, &rect, &QuadratureRule::gauss_legendre(3));
        assert!((lhs - 2.0 * 3.0 * 2.25).abs() < 1e-12);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn sign_flip_in_weight_is_caught() {
        let flipped = |w: &DualWeight<f64>, x: f64| -exact_weight(w, x);
        assert!(!check_dual_weights_with(&flipped).unwrap().passed);
        assert!(check_dual_weights().unwrap().passed);
    }

    #[test]
    fn transposition_swaps_derivatives() {
        let u = crate::fields::SeparableSum::product(Fn1D::sin(1.0), Fn1D::Exp { rate: 2.0, origin: 0.0 });
        let t = Transposed(&u);
        assert!((t.d(0, 1, 0.3, 0.7) - u.d(1, 0, 0.7, 0.3)).abs() < 1e-15);
    }
}
