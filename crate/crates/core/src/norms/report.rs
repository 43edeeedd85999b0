use super::quadrature::QuadratureRule;
use super::sobolev::{all_elements, jump_norm_sum, linf_sampled, max_value_jump, seminorm_sq, Difference, Seminorm};
use crate::error::Result;
use crate::fields::ScalarField;
use crate::interpolation::CompositeInterpolant;
use crate::mesh::{classify_edges, EdgeType, Region, ShishkinMesh};
use serde::{Deserialize, Serialize};

/// Error quantities of `u - u★` over a set of elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionNorms {
    pub region: String,
    pub l2: f64,
    pub h1: f64,
    /// Elementwise second-order seminorm.
    pub h2: f64,
    pub linf: f64,
}

/// Regional and global error norms with jump sums per edge type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub epsilon: f64,
    pub n: usize,
    pub regions: Vec<RegionNorms>,
    pub global: RegionNorms,
    /// `Σ_e ∫_e [∂u★/∂n]^2` for the types I, II, III, IV.
    pub jumps: Vec<(String, f64)>,
    pub max_value_jump: f64,
}

impl NormReport {
    pub fn jump(&self, t: EdgeType) -> Option<f64> {
        self.jumps.iter().find(|(n, _)| n == t.name()).map(|(_, v)| *v)
    }

    /// `(region, quantity, value)` rows, regions first, then the global row and the jumps.
    pub fn rows(&self) -> Vec<(String, String, f64)> {
        let mut out = Vec::new();
        for r in self.regions.iter().chain(std::iter::once(&self.global)) {
            for (q, v) in [("l2", r.l2), ("h1", r.h1), ("h2", r.h2), ("linf", r.linf)] {
                out.push((r.region.clone(), q.to_string(), v));
            }
        }
        for (t, v) in &self.jumps {
            out.push(("global".into(), format!("jump_{t}"), *v));
        }
        out.push(("global".into(), "max_value_jump".into(), self.max_value_jump));
        out
    }
}

fn region_norms<F: ScalarField + ?Sized>(f: &F, mesh: &ShishkinMesh, name: &str, elems: &[(usize, usize)], rule: &QuadratureRule<f64>, samples: usize) -> RegionNorms {
    let sq = |s| seminorm_sq(f, s, &mesh.xs, &mesh.ys, elems, rule).sqrt();
    RegionNorms {
        region: name.to_string(),
        l2: sq(Seminorm::L2),
        h1: sq(Seminorm::H1),
        h2: sq(Seminorm::H2),
        linf: linf_sampled(f, &mesh.xs, &mesh.ys, elems, samples),
    }
}

/// Norms of `u - u★` per region and globally, and the typed jump sums of `u★`.
pub fn norm_report(u: &dyn ScalarField, star: &CompositeInterpolant, mesh: &ShishkinMesh, rule: &QuadratureRule<f64>, samples: usize) -> Result<NormReport> {
    let diff = Difference { u, v: star };
    let all = all_elements(&mesh.xs, &mesh.ys);
    let mut regions = Vec::new();
    for r in Region::ALL {
        let elems: Vec<(usize, usize)> = all.iter().copied().filter(|&(ix, iy)| mesh.region(ix, iy) == r).collect();
        regions.push(region_norms(&diff, mesh, r.name(), &elems, rule, samples));
    }
    let global = region_norms(&diff, mesh, "global", &all, rule, samples);
    let edges = classify_edges(mesh);
    let mut jumps = Vec::new();
    for t in EdgeType::INTERIOR {
        let set: Vec<_> = edges.iter().filter(|e| e.edge_type == t).collect();
        jumps.push((t.name().to_string(), jump_norm_sum(&star.poly, &set, rule)?));
    }
    let interior: Vec<_> = edges.iter().filter(|e| e.edge_type != EdgeType::Boundary).collect();
    let max_value_jump = max_value_jump(&star.poly, &interior, 5)?;
    Ok(NormReport { epsilon: mesh.epsilon, n: mesh.n, regions, global, jumps, max_value_jump })
}
