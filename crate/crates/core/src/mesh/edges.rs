use super::shishkin::{Region, ShishkinMesh};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeOrientation {
    /// Parallel to the x axis; unit normal `+y`.
    Horizontal,
    /// Parallel to the y axis; unit normal `+x`.
    Vertical,
}

/// Edge classes by length and by isotropy of the adjacent elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeType {
    /// Long edge inside the coarse region between two isotropic elements.
    I,
    /// Long edge of an anisotropic element.
    II,
    /// Short edge of an anisotropic element.
    III,
    /// Edge between two small square elements near a corner.
    IV,
    Boundary,
}

impl EdgeType {
    pub const INTERIOR: [EdgeType; 4] = [EdgeType::I, EdgeType::II, EdgeType::III, EdgeType::IV];

    pub fn name(self) -> &'static str {
        match self {
            EdgeType::I => "I",
            EdgeType::II => "II",
            EdgeType::III => "III",
            EdgeType::IV => "IV",
            EdgeType::Boundary => "boundary",
        }
    }
}

/// One element edge of a tensor mesh.
///
/// `line` is the grid index of the constant coordinate and `seg` the interval
/// index along the edge. `lower` is the element on the smaller-coordinate
/// side (the side the normal points away from), `upper` the other one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeInfo {
    pub orientation: EdgeOrientation,
    pub line: usize,
    pub seg: usize,
    pub start: (f64, f64),
    pub end: (f64, f64),
    pub lower: Option<(usize, usize)>,
    pub upper: Option<(usize, usize)>,
    pub edge_type: EdgeType,
}

impl EdgeInfo {
    pub fn length(&self) -> f64 {
        (self.end.0 - self.start.0) + (self.end.1 - self.start.1)
    }
}

fn long_side_horizontal(r: Region) -> bool {
    matches!(r, Region::Omega1 | Region::Omega3)
}

fn classify(orientation: EdgeOrientation, a: Region, b: Region) -> EdgeType {
    let horizontal = orientation == EdgeOrientation::Horizontal;
    for r in [a, b] {
        if r.is_strip() {
            return if long_side_horizontal(r) == horizontal { EdgeType::II } else { EdgeType::III };
        }
    }
    if a == Region::Omega0 && b == Region::Omega0 {
        EdgeType::I
    } else {
        EdgeType::IV
    }
}

/// Lists every element edge of the Shishkin mesh with its type.
///
/// Vertical edges come first, ordered by `(line, seg)`, then horizontal ones.
pub fn classify_edges(mesh: &ShishkinMesh) -> Vec<EdgeInfo> {
    let n = mesh.n;
    let xs = mesh.xs.coords();
    let ys = mesh.ys.coords();
    let mut out = Vec::with_capacity(2 * n * (n + 1));
    for line in 0..=n {
        for seg in 0..n {
            let lower = (line > 0).then(|| (line - 1, seg));
            let upper = (line < n).then_some((line, seg));
            let edge_type = match (lower, upper) {
                (Some(l), Some(u)) => classify(EdgeOrientation::Vertical, mesh.region(l.0, l.1), mesh.region(u.0, u.1)),
                _ => EdgeType::Boundary,
            };
            out.push(EdgeInfo {
                orientation: EdgeOrientation::Vertical,
                line,
                seg,
                start: (xs[line], ys[seg]),
                end: (xs[line], ys[seg + 1]),
                lower,
                upper,
                edge_type,
            });
        }
    }
    for line in 0..=n {
        for seg in 0..n {
            let lower = (line > 0).then(|| (seg, line - 1));
            let upper = (line < n).then_some((seg, line));
            let edge_type = match (lower, upper) {
                (Some(l), Some(u)) => classify(EdgeOrientation::Horizontal, mesh.region(l.0, l.1), mesh.region(u.0, u.1)),
                _ => EdgeType::Boundary,
            };
            out.push(EdgeInfo {
                orientation: EdgeOrientation::Horizontal,
                line,
                seg,
                start: (xs[seg], ys[line]),
                end: (xs[seg + 1], ys[line]),
                lower,
                upper,
                edge_type,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_shishkin;

    #[test]
    fn examples() {
        let m = build_shishkin(1e-6, 16, 3.0, 1.0).unwrap();
        let edges = classify_edges(&m);
        let find = |o, line, seg| edges.iter().find(|e| e.orientation == o && e.line == line && e.seg == seg).unwrap();
        // deep inside the coarse region
        assert_eq!(find(EdgeOrientation::Horizontal, 8, 8).edge_type, EdgeType::I);
        // vertical edge between two bottom-strip elements
        assert_eq!(find(EdgeOrientation::Vertical, 8, 1).edge_type, EdgeType::III);
        // horizontal edge inside the bottom strip and on its interface with the interior
        assert_eq!(find(EdgeOrientation::Horizontal, 2, 8).edge_type, EdgeType::II);
        assert_eq!(find(EdgeOrientation::Horizontal, 4, 8).edge_type, EdgeType::II);
        // corner square interior
        assert_eq!(find(EdgeOrientation::Vertical, 1, 1).edge_type, EdgeType::IV);
        // corner/strip interface at x = lambda
        assert_eq!(find(EdgeOrientation::Vertical, 4, 1).edge_type, EdgeType::III);
        assert_eq!(find(EdgeOrientation::Vertical, 0, 3).edge_type, EdgeType::Boundary);
    }
}
