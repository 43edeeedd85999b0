//! Convergence studies on uniform and Shishkin meshes with observed orders
//! and fitted constants.

use crate::error::{Error, Result};
use crate::fields::{field_by_name, make_smooth_field, ScalarField};
use crate::interpolation::{build_composite, interp_aniso_mesh, interp_bfs_mesh, interp_full, interp_reduced, quasi_interp, PiecewisePoly2D};
use crate::mesh::{build_macro_mesh, build_shishkin, select_sigma, select_sigma_shishkin, transition_point, Corner, EdgeType, Grid1D, SigmaStrategy, SplitAxis};
use crate::norms::{all_elements, norm_report, seminorm, Difference, QuadratureRule, Seminorm};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `log(e0/e1) / log(h0/h1)`.
pub fn pairwise_order(e0: f64, e1: f64, h0: f64, h1: f64) -> f64 {
    (e0 / e1).ln() / (h0 / h1).ln()
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub level: usize,
    pub h: f64,
    pub errors: Vec<f64>,
    /// Order against the previous row; `None` on the first row.
    pub orders: Vec<Option<f64>>,
}

/// Errors per level and norm with pairwise observed orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateTable {
    pub columns: Vec<String>,
    pub rows: Vec<RateRow>,
}

impl RateTable {
    /// `errors[k][c]` is the error of column `c` at mesh size `hs[k]`.
    pub fn new(columns: Vec<String>, hs: &[f64], errors: Vec<Vec<f64>>) -> Self {
        let mut rows: Vec<RateRow> = Vec::with_capacity(hs.len());
        for (k, (h, e)) in hs.iter().zip(errors).enumerate() {
            let orders = match rows.last() {
                None => vec![None; e.len()],
                Some(prev) => e.iter().zip(&prev.errors).map(|(a, b)| Some(pairwise_order(*b, *a, prev.h, *h))).collect(),
            };
            rows.push(RateRow { level: k, h: *h, errors: e, orders });
        }
        Self { columns, rows }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Least-squares order of a column over the last `last` rows.
    pub fn ls_order(&self, col: usize, last: usize) -> f64 {
        let tail = &self.rows[self.rows.len().saturating_sub(last)..];
        let xs: Vec<f64> = tail.iter().map(|r| r.h.ln()).collect();
        let ys: Vec<f64> = tail.iter().map(|r| r.errors[col].ln()).collect();
        ls_slope(&xs, &ys)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    Full,
    Reduced,
    Bicubic,
    Quasi,
    Aniso,
}

impl Operator {
    pub const ALL: [Operator; 5] = [Operator::Full, Operator::Reduced, Operator::Bicubic, Operator::Quasi, Operator::Aniso];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Full => "full",
            Operator::Reduced => "reduced",
            Operator::Bicubic => "bicubic",
            Operator::Quasi => "quasi",
            Operator::Aniso => "aniso",
        }
    }
}

impl std::str::FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Operator::ALL.into_iter().find(|o| o.name() == s).ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeshFamily {
    /// `n × n` macros.
    Uniform,
    /// `n × 4n` macros, long side in `x`.
    Stretched,
}

impl std::str::FromStr for MeshFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(MeshFamily::Uniform),
            "stretched" => Ok(MeshFamily::Stretched),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeConfig {
    pub operator: Operator,
    pub field: String,
    pub levels: usize,
    pub family: MeshFamily,
    pub sigma: SigmaStrategy,
}

impl Default for ConvergeConfig {
    fn default() -> Self {
        Self { operator: Operator::Full, field: "sin_sin".into(), levels: 4, family: MeshFamily::Uniform, sigma: SigmaStrategy::TowardCorner }
    }
}

/// Macro cells per direction on the coarsest level.
pub const BASE_CELLS: usize = 4;

pub fn apply_operator<F: ScalarField + ?Sized>(op: Operator, field: &F, gx: &Grid1D, gy: &Grid1D, sigma: SigmaStrategy) -> Result<PiecewisePoly2D> {
    let mesh = build_macro_mesh(gx, gy);
    match op {
        Operator::Full => interp_full(field, &mesh),
        Operator::Reduced => interp_reduced(field, &mesh),
        Operator::Bicubic => interp_bfs_mesh(field, gx, gy),
        Operator::Quasi => quasi_interp(field, &mesh, &select_sigma(&mesh, sigma, Corner::LowerLeft)),
        Operator::Aniso => interp_aniso_mesh(field, gx, gy, SplitAxis::Y),
    }
}

pub const NORM_COLUMNS: [&str; 3] = ["l2", "h1", "h2_broken"];

/// Interpolation errors in `L2`, `H1` and the elementwise `H2` seminorm on
/// `levels` successive refinements; `h` is the macro width in `x`.
pub fn converge(cfg: &ConvergeConfig) -> Result<RateTable> {
    if cfg.levels < 3 {
        return Err(Error::Config(format!("at least 3 levels are needed for rate fitting, got {}", cfg.levels)));
    }
    let field = make_smooth_field(&cfg.field)?;
    let rule = QuadratureRule::gauss_legendre(5);
    let results = (0..cfg.levels)
        .into_par_iter()
        .map(|l| {
            let n = BASE_CELLS << l;
            let ny = match cfg.family {
                MeshFamily::Uniform => n,
                MeshFamily::Stretched => 4 * n,
            };
            let gx = Grid1D::uniform(0.0, 1.0, n)?;
            let gy = Grid1D::uniform(0.0, 1.0, ny)?;
            let p = apply_operator(cfg.operator, &*field, &gx, &gy, cfg.sigma)?;
            let diff = Difference { u: &*field, v: &p };
            let elems = all_elements(&p.gx, &p.gy);
            let e = Seminorm::ALL.iter().map(|&s| seminorm(&diff, s, &p.gx, &p.gy, &elems, &rule)).collect::<Vec<f64>>();
            Ok((1.0 / n as f64, e))
        })
        .collect::<Result<Vec<_>>>()?;
    let hs: Vec<f64> = results.iter().map(|r| r.0).collect();
    Ok(RateTable::new(NORM_COLUMNS.iter().map(|s| s.to_string()).collect(), &hs, results.into_iter().map(|r| r.1).collect()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShishkinConfig {
    pub field: String,
    pub eps: Vec<f64>,
    pub ns: Vec<usize>,
    pub lambda0: f64,
    pub c_star: f64,
    pub sigma: SigmaStrategy,
}

impl Default for ShishkinConfig {
    fn default() -> Self {
        Self { field: "layer".into(), eps: vec![1e-4, 1e-6, 1e-8], ns: vec![8, 16, 32, 64], lambda0: 3.0, c_star: 1.0, sigma: SigmaStrategy::TowardCorner }
    }
}

impl ShishkinConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.ns.iter().find(|&&n| n == 0 || n % 8 != 0) {
            return Err(Error::Config(format!("N = {n} is not a positive multiple of 8")));
        }
        if let Some(e) = self.eps.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
            return Err(Error::Config(format!("epsilon = {e} is outside (0, 1)")));
        }
        if self.ns.is_empty() || self.eps.is_empty() {
            return Err(Error::Config("empty N or epsilon list".into()));
        }
        if !(self.lambda0 > 0.0 && self.c_star > 0.0) {
            return Err(Error::Config("lambda0 and c_star must be positive".into()));
        }
        Ok(())
    }
}

/// Error quantities of the composite interpolant for one `(ε, N)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShishkinRow {
    pub epsilon: f64,
    pub n: usize,
    pub lambda: f64,
    pub l2: f64,
    /// `ε^(1/4) |u - u★|_1`.
    pub h1_weighted: f64,
    /// `ε^(3/4)` times the elementwise second-order seminorm.
    pub h2_weighted: f64,
    /// Squared normal-derivative jump sums for edge types I to IV.
    pub jumps: [f64; 4],
    pub max_value_jump: f64,
}

/// Quantity paired with a model rate `g(ε, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// `N^-2`
    InvN2,
    /// `N^-2 ln² N`
    InvN2Log2,
    /// `N^-1 ln N`
    InvNLog,
    /// `N^-3`
    InvN3,
    /// `ε^(-1/2) N^-3 ln⁴ N`
    EpsInvN3Log4,
    /// `ε^(1/4) N^-2 ln² N`
    Eps14InvN2Log2,
}

impl Model {
    pub fn eval(self, eps: f64, n: usize) -> f64 {
        let nf = n as f64;
        let l = nf.ln();
        match self {
            Model::InvN2 => nf.powi(-2),
            Model::InvN2Log2 => nf.powi(-2) * l * l,
            Model::InvNLog => l / nf,
            Model::InvN3 => nf.powi(-3),
            Model::EpsInvN3Log4 => nf.powi(-3) * l.powi(4) / eps.sqrt(),
            Model::Eps14InvN2Log2 => eps.powf(0.25) * nf.powi(-2) * l * l,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::InvN2 => "N^-2",
            Model::InvN2Log2 => "N^-2 ln^2 N",
            Model::InvNLog => "N^-1 ln N",
            Model::InvN3 => "N^-3",
            Model::EpsInvN3Log4 => "eps^-1/2 N^-3 ln^4 N",
            Model::Eps14InvN2Log2 => "eps^1/4 N^-2 ln^2 N",
        }
    }
}

/// Quantity names of [`ShishkinRow`] usable in fits.
pub const QUANTITIES: [&str; 7] = ["l2", "h1_weighted", "h2_weighted", "jump_I", "jump_II", "jump_III", "jump_IV"];

impl ShishkinRow {
    pub fn quantity(&self, name: &str) -> Option<f64> {
        Some(match name {
            "l2" => self.l2,
            "h1_weighted" => self.h1_weighted,
            "h2_weighted" => self.h2_weighted,
            "jump_I" => self.jumps[0],
            "jump_II" => self.jumps[1],
            "jump_III" => self.jumps[2],
            "jump_IV" => self.jumps[3],
            _ => return None,
        })
    }
}

/// Fit of one quantity against a model rate, per `ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFit {
    pub quantity: String,
    pub model: String,
    pub eps: Vec<f64>,
    /// Geometric mean of `value / g(ε, N)` over `N`, i.e. the least-squares
    /// constant in log scale.
    pub constants: Vec<f64>,
    /// Least-squares slope of `-log value` against `log N` over the last three `N`.
    pub orders: Vec<f64>,
    /// Largest over smallest constant.
    pub spread: f64,
}

/// Default quantity/model pairs of the study.
pub const FITS: [(&str, Model); 7] = [
    ("l2", Model::InvN2),
    ("l2", Model::Eps14InvN2Log2),
    ("h1_weighted", Model::InvN2Log2),
    ("h2_weighted", Model::InvNLog),
    ("jump_I", Model::InvN3),
    ("jump_III", Model::EpsInvN3Log4),
    ("l2", Model::InvN2Log2),
];

pub fn fit_model(rows: &[ShishkinRow], quantity: &str, model: Model) -> ModelFit {
    let mut eps: Vec<f64> = Vec::new();
    for r in rows {
        if !eps.contains(&r.epsilon) {
            eps.push(r.epsilon);
        }
    }
    let mut constants = Vec::new();
    let mut orders = Vec::new();
    for &e in &eps {
        let sel: Vec<&ShishkinRow> = rows.iter().filter(|r| r.epsilon == e).collect();
        let logs: Vec<f64> = sel.iter().map(|r| (r.quantity(quantity).unwrap_or(f64::NAN) / model.eval(e, r.n)).ln()).collect();
        constants.push((logs.iter().sum::<f64>() / logs.len() as f64).exp());
        let tail = &sel[sel.len().saturating_sub(3)..];
        let xs: Vec<f64> = tail.iter().map(|r| (r.n as f64).ln()).collect();
        let ys: Vec<f64> = tail.iter().map(|r| -r.quantity(quantity).unwrap_or(f64::NAN).ln()).collect();
        orders.push(if tail.len() >= 2 { ls_slope(&xs, &ys) } else { f64::NAN });
    }
    let spread = constants.iter().cloned().fold(0.0, f64::max) / constants.iter().cloned().fold(f64::INFINITY, f64::min);
    ModelFit { quantity: quantity.to_string(), model: model.name().to_string(), eps, constants, orders, spread }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShishkinStudy {
    pub rows: Vec<ShishkinRow>,
    pub fits: Vec<ModelFit>,
}

/// One `(ε, N)` point of the study.
pub fn shishkin_point(cfg: &ShishkinConfig, eps: f64, n: usize) -> Result<ShishkinRow> {
    let u = field_by_name(&cfg.field, eps, cfg.c_star)?;
    let mesh = build_shishkin(eps, n, cfg.lambda0, cfg.c_star)?;
    let corners = select_sigma_shishkin(&mesh, cfg.sigma)?;
    let star = build_composite(&*u, &mesh, &corners)?;
    let rep = norm_report(&*u, &star, &mesh, &QuadratureRule::gauss_legendre(5), 4)?;
    let jump = |t| rep.jump(t).unwrap_or(f64::NAN);
    Ok(ShishkinRow {
        epsilon: eps,
        n,
        lambda: transition_point(eps, n, cfg.lambda0, cfg.c_star),
        l2: rep.global.l2,
        h1_weighted: eps.powf(0.25) * rep.global.h1,
        h2_weighted: eps.powf(0.75) * rep.global.h2,
        jumps: [jump(EdgeType::I), jump(EdgeType::II), jump(EdgeType::III), jump(EdgeType::IV)],
        max_value_jump: rep.max_value_jump,
    })
}

/// Every `(ε, N)` point in parallel, rows ordered by `ε` then `N` as given.
pub fn shishkin_study(cfg: &ShishkinConfig) -> Result<ShishkinStudy> {
    cfg.validate()?;
    let grid: Vec<(f64, usize)> = cfg.eps.iter().flat_map(|&e| cfg.ns.iter().map(move |&n| (e, n))).collect();
    let rows = grid.par_iter().map(|&(e, n)| shishkin_point(cfg, e, n)).collect::<Result<Vec<_>>>()?;
    let fits = FITS.iter().map(|&(q, m)| fit_model(&rows, q, m)).collect();
    Ok(ShishkinStudy { rows, fits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_third_order() {
        let t = RateTable::new(vec!["e".into()], &[1.0, 0.5, 0.25], vec![vec![1.0], vec![1.0 / 8.0], vec![1.0 / 64.0]]);
        assert_eq!(t.rows[0].orders[0], None);
        assert!((t.rows[1].orders[0].unwrap() - 3.0).abs() < 1e-14);
        assert!((t.rows[2].orders[0].unwrap() - 3.0).abs() < 1e-14);
        assert!((t.ls_order(0, 3) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn config_validation() {
        let mut c = ShishkinConfig::default();
        assert!(c.validate().is_ok());
        c.ns = vec![8, 12];
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        assert!(converge(&ConvergeConfig { levels: 2, ..ConvergeConfig::default() }).is_err());
    }

    #[test]
    fn model_fit_recovers_constant() {
        let rows: Vec<ShishkinRow> = [8usize, 16, 32]
            .iter()
            .map(|&n| ShishkinRow { epsilon: 1e-4, n, lambda: 0.0, l2: 3.0 * Model::InvN2.eval(1e-4, n), h1_weighted: 0.0, h2_weighted: 0.0, jumps: [0.0; 4], max_value_jump: 0.0 })
            .collect();
        let f = fit_model(&rows, "l2", Model::InvN2);
        assert!((f.constants[0] - 3.0).abs() < 1e-12);
        assert!((f.orders[0] - 2.0).abs() < 1e-12);
        assert_eq!(f.spread, 1.0);
    }
}
