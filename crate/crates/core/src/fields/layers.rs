use super::field::{ScalarField, SeparableSum};
use super::fn1d::Fn1D;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Smooth part of a manufactured decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SmoothKind {
    /// `x(1-x) y(1-y) + 1`.
    #[default]
    Polynomial,
    /// `x(1-x) y(1-y) + 1 + sin(2x) cos(3y) / 2`; third derivatives independent of ε.
    Trig,
    /// Polynomial part plus `ε sin(x/√ε) sin(y/√ε)`, with `|D^α S| ~ ε^(1-|α|/2)`.
    Oscillatory,
}

/// Amplitude functions and smooth part of the manufactured decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerConfig {
    pub smooth: SmoothKind,
    /// Tangential profiles `g_1(x), g_2(y), g_3(x), g_4(y)` of the edge layers.
    pub profiles: [Fn1D; 4],
    /// Amplitude of every corner layer.
    pub corner_amplitude: f64,
}

impl Default for LayerConfig {
    fn default() -> Self {
        Self {
            smooth: SmoothKind::Polynomial,
            profiles: [Fn1D::cos(1.0), Fn1D::cos(1.0), Fn1D::cos(1.0), Fn1D::cos(1.0)],
            corner_amplitude: 1.0,
        }
    }
}

/// `u = S + E_1 + ... + E_4 + E_12 + E_23 + E_34 + E_41` with
/// `E_1 = g_1(x) exp(-c★ y/√ε)`, `E_2 = g_2(y) exp(-c★ x/√ε)`,
/// `E_3 = g_3(x) exp(-c★ (1-y)/√ε)`, `E_4 = g_4(y) exp(-c★ (1-x)/√ε)` and the
/// corner layers the products of the two adjacent exponentials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerDecomposition {
    pub epsilon: f64,
    pub c_star: f64,
    pub smooth: SeparableSum,
    pub edges: [SeparableSum; 4],
    pub corners: [SeparableSum; 4],
}

impl LayerDecomposition {
    /// Every component, smooth part first.
    pub fn components(&self) -> Vec<&SeparableSum> {
        let mut v = vec![&self.smooth];
        v.extend(self.edges.iter());
        v.extend(self.corners.iter());
        v
    }
}

impl ScalarField for LayerDecomposition {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        self.components().iter().map(|c| c.d(a, b, x, y)).sum()
    }
}

fn poly_part() -> Vec<(f64, Fn1D, Fn1D)> {
    let bubble = Fn1D::Poly(vec![0.0, 1.0, -1.0]);
    vec![(1.0, bubble.clone(), bubble), (1.0, Fn1D::Const(1.0), Fn1D::Const(1.0))]
}

/// Decomposition with the default configuration.
pub fn make_layer_decomposition(epsilon: f64, c_star: f64) -> Result<LayerDecomposition> {
    make_layer_decomposition_with(epsilon, c_star, LayerConfig::default())
}

pub fn make_layer_decomposition_with(epsilon: f64, c_star: f64, config: LayerConfig) -> Result<LayerDecomposition> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Shishkin(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    let r = c_star / epsilon.sqrt();
    let mut smooth = poly_part();
    match config.smooth {
        SmoothKind::Polynomial => {}
        SmoothKind::Trig => smooth.push((0.5, Fn1D::sin(2.0), Fn1D::cos(3.0))),
        SmoothKind::Oscillatory => {
            let k = 1.0 / epsilon.sqrt();
            smooth.push((epsilon, Fn1D::sin(k), Fn1D::sin(k)));
        }
    }
    let decay_lo = Fn1D::Exp { rate: -r, origin: 0.0 };
    let decay_hi = Fn1D::Exp { rate: r, origin: 1.0 };
    let [g1, g2, g3, g4] = config.profiles;
    let edges = [
        SeparableSum::product(g1, decay_lo.clone()),
        SeparableSum::product(decay_lo.clone(), g2),
        SeparableSum::product(g3, decay_hi.clone()),
        SeparableSum::product(decay_hi.clone(), g4),
    ];
    let a = config.corner_amplitude;
    let corner = |fx: &Fn1D, fy: &Fn1D| SeparableSum::new(vec![(a, fx.clone(), fy.clone())]);
    let corners = [
        corner(&decay_lo, &decay_lo),
        corner(&decay_lo, &decay_hi),
        corner(&decay_hi, &decay_hi),
        corner(&decay_hi, &decay_lo),
    ];
    Ok(LayerDecomposition { epsilon, c_star, smooth: SeparableSum::new(smooth), edges, corners })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_shishkin;

    #[test]
    fn edge_layer_trace_on_boundary() {
        let u = make_layer_decomposition(1e-6, 1.0).unwrap();
        for &x in &[0.0, 0.3, 0.9] {
            assert!((u.edges[0].value(x, 0.0) - x.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn corner_layer_small_at_transition_point() {
        for n in [8usize, 16, 32, 64] {
            let m = build_shishkin(1e-6, n, 3.0, 1.0).unwrap();
            let u = make_layer_decomposition(1e-6, 1.0).unwrap();
            let v = u.corners[0].value(m.lambda, m.lambda);
            assert!(v <= (n as f64).powi(-6) * (1.0 + 1e-12), "N={n}: {v}");
        }
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(make_layer_decomposition(0.0, 1.0).is_err());
        assert!(make_layer_decomposition(1.5, 1.0).is_err());
    }
}
