use super::grid::Grid1D;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Subdomain labels of the unit square.
///
/// `Omega0` is the coarse interior, `Omega1..Omega4` the bottom, left, top and
/// right edge-layer strips, and the remaining labels the four corner squares
/// (bottom-left, top-left, top-right, bottom-right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Omega0,
    Omega1,
    Omega2,
    Omega3,
    Omega4,
    Omega12,
    Omega23,
    Omega34,
    Omega41,
}

impl Region {
    pub const ALL: [Region; 9] = [
        Region::Omega0,
        Region::Omega1,
        Region::Omega2,
        Region::Omega3,
        Region::Omega4,
        Region::Omega12,
        Region::Omega23,
        Region::Omega34,
        Region::Omega41,
    ];

    pub fn is_corner(self) -> bool {
        matches!(self, Region::Omega12 | Region::Omega23 | Region::Omega34 | Region::Omega41)
    }

    /// Strip elements are anisotropic.
    pub fn is_strip(self) -> bool {
        matches!(self, Region::Omega1 | Region::Omega2 | Region::Omega3 | Region::Omega4)
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::Omega0 => "omega0",
            Region::Omega1 => "omega1",
            Region::Omega2 => "omega2",
            Region::Omega3 => "omega3",
            Region::Omega4 => "omega4",
            Region::Omega12 => "omega12",
            Region::Omega23 => "omega23",
            Region::Omega34 => "omega34",
            Region::Omega41 => "omega41",
        }
    }
}

/// Block of `nx × ny` elements starting at element `(ix0, iy0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacroCell {
    pub region: Region,
    pub ix0: usize,
    pub iy0: usize,
    pub nx: usize,
    pub ny: usize,
}

/// Piecewise uniform layer-adapted tensor mesh on the unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShishkinMesh {
    pub epsilon: f64,
    pub n: usize,
    pub lambda0: f64,
    pub c_star: f64,
    pub lambda: f64,
    /// Fine step `4 λ / N`.
    pub h: f64,
    /// Coarse step `2 (1 - 2 λ) / N`.
    pub big_h: f64,
    pub xs: Grid1D,
    pub ys: Grid1D,
    pub regions: Vec<Region>,
    pub macros: Vec<MacroCell>,
    pub element_macro: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Band {
    Low,
    Mid,
    High,
}

impl ShishkinMesh {
    pub fn n_elements(&self) -> usize {
        self.n * self.n
    }

    pub fn elem_index(&self, ix: usize, iy: usize) -> usize {
        iy * self.n + ix
    }

    pub fn region(&self, ix: usize, iy: usize) -> Region {
        self.regions[self.elem_index(ix, iy)]
    }

    /// First and last fine-band indices: `[0, N/4]` and `[3N/4, N]`.
    pub fn quarter(&self) -> usize {
        self.n / 4
    }

    fn band(&self, i: usize) -> Band {
        let q = self.quarter();
        if i < q {
            Band::Low
        } else if i < 3 * q {
            Band::Mid
        } else {
            Band::High
        }
    }
}

/// Transition point `min(1/4, λ₀ √ε ln N / c★)`.
pub fn transition_point(epsilon: f64, n: usize, lambda0: f64, c_star: f64) -> f64 {
    (lambda0 * epsilon.sqrt() * (n as f64).ln() / c_star).min(0.25)
}

/// Builds the Shishkin mesh, its region labels and its macro structure.
pub fn build_shishkin(epsilon: f64, n: usize, lambda0: f64, c_star: f64) -> Result<ShishkinMesh> {
    if n < 8 || !n.is_multiple_of(8) {
        return Err(Error::Shishkin(format!("N = {n} must be a positive multiple of 8")));
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Shishkin(format!("epsilon = {epsilon} must be positive")));
    }
    if !(lambda0 >= 3.0) || !lambda0.is_finite() {
        return Err(Error::Shishkin(format!("lambda0 = {lambda0} must be at least 3")));
    }
    if !(c_star > 0.0) || !c_star.is_finite() {
        return Err(Error::Shishkin(format!("c_star = {c_star} must be positive")));
    }
    if epsilon.sqrt() > 1.0 / n as f64 {
        log::warn!("sqrt(epsilon) = {} exceeds 1/N = {}", epsilon.sqrt(), 1.0 / n as f64);
    }
    let lambda = transition_point(epsilon, n, lambda0, c_star);
    let q = n / 4;
    let h = lambda / q as f64;
    let big_h = 2.0 * (1.0 - 2.0 * lambda) / n as f64;
    let mut c = Vec::with_capacity(n + 1);
    for i in 0..=q {
        c.push(h * i as f64);
    }
    c[q] = lambda;
    for i in 1..2 * q {
        c.push(lambda + big_h * i as f64);
    }
    for i in 0..=q {
        c.push(1.0 - lambda + h * i as f64);
    }
    c[3 * q] = 1.0 - lambda;
    c[n] = 1.0;
    let xs = Grid1D::new(c)?;
    let ys = xs.clone();
    let mut mesh = ShishkinMesh {
        epsilon,
        n,
        lambda0,
        c_star,
        lambda,
        h,
        big_h,
        xs,
        ys,
        regions: Vec::new(),
        macros: Vec::new(),
        element_macro: vec![usize::MAX; n * n],
    };
    let mut regions = Vec::with_capacity(n * n);
    for iy in 0..n {
        for ix in 0..n {
            regions.push(match (mesh.band(ix), mesh.band(iy)) {
                (Band::Mid, Band::Mid) => Region::Omega0,
                (Band::Mid, Band::Low) => Region::Omega1,
                (Band::Low, Band::Mid) => Region::Omega2,
                (Band::Mid, Band::High) => Region::Omega3,
                (Band::High, Band::Mid) => Region::Omega4,
                (Band::Low, Band::Low) => Region::Omega12,
                (Band::Low, Band::High) => Region::Omega23,
                (Band::High, Band::High) => Region::Omega34,
                (Band::High, Band::Low) => Region::Omega41,
            });
        }
    }
    mesh.regions = regions;
    // macros: 2x2 in corners, 1x2 in bottom/top strips, 2x1 in left/right strips
    let mut macros = Vec::new();
    for iy in 0..n {
        for ix in 0..n {
            let r = mesh.region(ix, iy);
            let (nx, ny) = match r {
                Region::Omega0 => (1, 1),
                Region::Omega1 | Region::Omega3 => (1, 2),
                Region::Omega2 | Region::Omega4 => (2, 1),
                _ => (2, 2),
            };
            if ix % nx == 0 && iy % ny == 0 {
                macros.push(MacroCell { region: r, ix0: ix, iy0: iy, nx, ny });
            }
        }
    }
    for (k, m) in macros.iter().enumerate() {
        for iy in m.iy0..m.iy0 + m.ny {
            for ix in m.ix0..m.ix0 + m.nx {
                mesh.element_macro[iy * n + ix] = k;
            }
        }
    }
    mesh.macros = macros;
    Ok(mesh)
}
