use super::macro_mesh::{build_macro_mesh, MacroMesh};
use super::shishkin::{Region, ShishkinMesh};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Macro edge attached to a macro node, named by the direction it leaves the node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SigmaDir {
    Left,
    Right,
    Down,
    Up,
}

impl SigmaDir {
    pub fn is_horizontal(self) -> bool {
        matches!(self, SigmaDir::Left | SigmaDir::Right)
    }

    fn opposite(self) -> Self {
        match self {
            SigmaDir::Left => SigmaDir::Right,
            SigmaDir::Right => SigmaDir::Left,
            SigmaDir::Down => SigmaDir::Up,
            SigmaDir::Up => SigmaDir::Down,
        }
    }
}

/// Domain corner towards which `TowardCorner` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Corner {
    LowerLeft,
    UpperLeft,
    UpperRight,
    LowerRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaStrategy {
    /// Horizontal edge pointing to the corner's vertical side.
    TowardCorner,
    /// Horizontal edge to the left of the node.
    Left,
    /// Vertical edge below the node.
    Down,
}

impl std::str::FromStr for SigmaStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "toward_corner" => Ok(SigmaStrategy::TowardCorner),
            "left" => Ok(SigmaStrategy::Left),
            "down" => Ok(SigmaStrategy::Down),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// One edge per macro node, nodes numbered `j * (nx + 1) + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaSelection {
    pub nodes_x: usize,
    pub nodes_y: usize,
    pub dirs: Vec<SigmaDir>,
}

impl SigmaSelection {
    pub fn dir(&self, i: usize, j: usize) -> SigmaDir {
        self.dirs[j * self.nodes_x + i]
    }

    /// Endpoints of the edge selected at node `(i, j)`, ordered by increasing coordinate.
    pub fn edge(&self, mesh: &MacroMesh, i: usize, j: usize) -> ((f64, f64), (f64, f64)) {
        let gx = mesh.macro_x.coords();
        let gy = mesh.macro_y.coords();
        match self.dir(i, j) {
            SigmaDir::Left => ((gx[i - 1], gy[j]), (gx[i], gy[j])),
            SigmaDir::Right => ((gx[i], gy[j]), (gx[i + 1], gy[j])),
            SigmaDir::Down => ((gx[i], gy[j - 1]), (gx[i], gy[j])),
            SigmaDir::Up => ((gx[i], gy[j]), (gx[i], gy[j + 1])),
        }
    }
}

fn admissible(dir: SigmaDir, i: usize, j: usize, nx: usize, ny: usize) -> bool {
    match dir {
        SigmaDir::Left => i > 0,
        SigmaDir::Right => i + 1 < nx,
        SigmaDir::Down => j > 0,
        SigmaDir::Up => j + 1 < ny,
    }
}

/// Selects an edge at every macro node; when the preferred edge leaves the
/// mesh the opposite one is taken.
pub fn select_sigma(mesh: &MacroMesh, strategy: SigmaStrategy, corner: Corner) -> SigmaSelection {
    let nx = mesh.macro_x.len();
    let ny = mesh.macro_y.len();
    let preferred = match strategy {
        SigmaStrategy::TowardCorner => match corner {
            Corner::LowerLeft | Corner::UpperLeft => SigmaDir::Left,
            Corner::UpperRight | Corner::LowerRight => SigmaDir::Right,
        },
        SigmaStrategy::Left => SigmaDir::Left,
        SigmaStrategy::Down => SigmaDir::Down,
    };
    let mut dirs = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            dirs.push(if admissible(preferred, i, j, nx, ny) { preferred } else { preferred.opposite() });
        }
    }
    SigmaSelection { nodes_x: nx, nodes_y: ny, dirs }
}

/// Validates a caller-supplied selection.
pub fn custom_sigma(mesh: &MacroMesh, dirs: Vec<SigmaDir>) -> Result<SigmaSelection> {
    let nx = mesh.macro_x.len();
    let ny = mesh.macro_y.len();
    if dirs.len() != nx * ny {
        return Err(Error::Sigma { i: 0, j: 0, reason: format!("expected {} entries, got {}", nx * ny, dirs.len()) });
    }
    for j in 0..ny {
        for i in 0..nx {
            if !admissible(dirs[j * nx + i], i, j, nx, ny) {
                return Err(Error::Sigma { i, j, reason: format!("edge {:?} leaves the mesh", dirs[j * nx + i]) });
            }
        }
    }
    Ok(SigmaSelection { nodes_x: nx, nodes_y: ny, dirs })
}

/// Outcome of the patch-size check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaReport {
    /// Largest `h_x(ω_M) / h_x(M)` over all macros.
    pub max_ratio_x: f64,
    /// Largest `h_y(ω_M) / h_y(M)` over all macros.
    pub max_ratio_y: f64,
    /// Whether every `ω_M` lies in the set of macros touching `M`.
    pub within_neighbourhood: bool,
    pub bound: f64,
    pub ok: bool,
}

/// Macro index range `(i_lo, i_hi, j_lo, j_hi)` of the patch `ω_M` of macro `(i, j)`.
pub fn patch_range(mesh: &MacroMesh, sel: &SigmaSelection, i: usize, j: usize) -> (usize, usize, usize, usize) {
    let (mut ilo, mut ihi, mut jlo, mut jhi) = (i, i, j, j);
    for (a, b) in [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)] {
        match sel.dir(a, b) {
            SigmaDir::Left => ilo = ilo.min(a - 1),
            SigmaDir::Right => ihi = ihi.max(a),
            SigmaDir::Down => jlo = jlo.min(b - 1),
            SigmaDir::Up => jhi = jhi.max(b),
        }
    }
    let _ = mesh;
    (ilo, ihi, jlo, jhi)
}

/// Recomputes every patch `ω_M` and checks `h_k(ω_M) <= bound · h_k(M)`.
pub fn verify_sigma(mesh: &MacroMesh, sel: &SigmaSelection, bound: f64) -> SigmaReport {
    let gx = mesh.macro_x.coords();
    let gy = mesh.macro_y.coords();
    let (mut rx, mut ry, mut inside) = (0.0f64, 0.0f64, true);
    for j in 0..mesh.macro_y.n_intervals() {
        for i in 0..mesh.macro_x.n_intervals() {
            let (ilo, ihi, jlo, jhi) = patch_range(mesh, sel, i, j);
            rx = rx.max((gx[ihi + 1] - gx[ilo]) / (gx[i + 1] - gx[i]));
            ry = ry.max((gy[jhi + 1] - gy[jlo]) / (gy[j + 1] - gy[j]));
            inside &= ilo + 1 >= i && ihi <= i + 1 && jlo + 1 >= j && jhi <= j + 1;
        }
    }
    SigmaReport { max_ratio_x: rx, max_ratio_y: ry, within_neighbourhood: inside, bound, ok: inside && rx <= bound && ry <= bound }
}

/// Corner-region macro mesh of a Shishkin mesh with its edge selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornerSigma {
    pub region: Region,
    pub corner: Corner,
    /// Element-grid offsets of the region in the global mesh.
    pub ix0: usize,
    pub iy0: usize,
    pub mesh: MacroMesh,
    pub selection: SigmaSelection,
}

/// Edge selections for the four corner regions. Edges never leave the closed
/// corner region they belong to.
pub fn select_sigma_shishkin(mesh: &ShishkinMesh, strategy: SigmaStrategy) -> Result<Vec<CornerSigma>> {
    let q = mesh.quarter();
    let n = mesh.n;
    let specs = [
        (Region::Omega12, Corner::LowerLeft, 0, 0),
        (Region::Omega23, Corner::UpperLeft, 0, 3 * q),
        (Region::Omega34, Corner::UpperRight, 3 * q, 3 * q),
        (Region::Omega41, Corner::LowerRight, 3 * q, 0),
    ];
    let mut out = Vec::with_capacity(4);
    for (region, corner, ix0, iy0) in specs {
        let gx = mesh.xs.sub(ix0, ix0 + q, 2)?;
        let gy = mesh.ys.sub(iy0, iy0 + q, 2)?;
        let mm = build_macro_mesh(&gx, &gy);
        let selection = select_sigma(&mm, strategy, corner);
        let (xlo, xhi, ylo, yhi) = (gx.first(), gx.last(), gy.first(), gy.last());
        for j in 0..selection.nodes_y {
            for i in 0..selection.nodes_x {
                let (a, b) = selection.edge(&mm, i, j);
                let inside = |p: (f64, f64)| p.0 >= xlo && p.0 <= xhi && p.1 >= ylo && p.1 <= yhi;
                if !inside(a) || !inside(b) {
                    return Err(Error::Sigma { i, j, reason: "edge leaves the closed corner region".into() });
                }
            }
        }
        let _ = n;
        out.push(CornerSigma { region, corner, ix0, iy0, mesh: mm, selection });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Grid1D;

    #[test]
    fn left_strategy_on_uniform_mesh() {
        let g = Grid1D::uniform(0.0, 1.0, 4).unwrap();
        let m = build_macro_mesh(&g, &g);
        let s = select_sigma(&m, SigmaStrategy::Left, Corner::LowerLeft);
        assert_eq!(s.dir(2, 1), SigmaDir::Left);
        assert_eq!(s.edge(&m, 2, 1), ((0.25, 0.25), (0.5, 0.25)));
        assert_eq!(s.dir(0, 3), SigmaDir::Right);
        let r = verify_sigma(&m, &s, 2.0);
        assert!(r.ok);
        assert!(r.max_ratio_x <= 2.0 + 1e-12);
    }

    #[test]
    fn custom_rejects_outward_edges() {
        let g = Grid1D::uniform(0.0, 1.0, 2).unwrap();
        let m = build_macro_mesh(&g, &g);
        let mut dirs = vec![SigmaDir::Right; 9];
        assert!(custom_sigma(&m, dirs.clone()).is_err());
        for j in 0..3 {
            dirs[j * 3 + 2] = SigmaDir::Left;
        }
        assert!(custom_sigma(&m, dirs).is_ok());
    }
}
