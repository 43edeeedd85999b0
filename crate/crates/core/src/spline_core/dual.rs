use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// Which endpoint of a macro edge a dual weight belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndpointSide {
    Left,
    Right,
}

/// Piecewise quadratic weight on a macro edge `[a, b]` whose pairing with the
/// derivative of the edge-scaled `ψ` of its endpoint is one and with that of
/// the other endpoint is zero.
///
/// With `c` the edge midpoint, `h` the half length and `s = (x - c)/h`, the
/// weight equals `pieces[p](s) / h` on the left (`p = 0`) and right (`p = 1`)
/// halves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualWeight<T> {
    pub edge: (T, T),
    pub side: EndpointSide,
    pub pieces: [[T; 3]; 2],
}

impl<T: Real> DualWeight<T> {
    pub fn new(a: T, b: T, side: EndpointSide) -> Result<Self> {
        if !(a < b) {
            return Err(Error::Degenerate(a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN)));
        }
        let l = |v: f64| T::lit(v);
        let pieces = match side {
            EndpointSide::Left => [[l(-0.5), l(-6.0), l(-3.0)], [l(-0.5), l(-6.0), l(9.0)]],
            EndpointSide::Right => [[l(-0.5), l(6.0), l(9.0)], [l(-0.5), l(6.0), l(-3.0)]],
        };
        Ok(Self { edge: (a, b), side, pieces })
    }

    pub fn midpoint(&self) -> T {
        (self.edge.0 + self.edge.1) * T::lit(0.5)
    }

    pub fn half_length(&self) -> T {
        (self.edge.1 - self.edge.0) * T::lit(0.5)
    }
}

/// Evaluates a dual weight at `x` (right half at the midpoint).
pub fn eval_dual_weight<T: Real>(w: &DualWeight<T>, x: T) -> Result<T> {
    let (a, b) = w.edge;
    if !(x >= a && x <= b) {
        return Err(Error::Domain {
            x: x.to_f64().unwrap_or(f64::NAN),
            lo: a.to_f64().unwrap_or(f64::NAN),
            hi: b.to_f64().unwrap_or(f64::NAN),
        });
    }
    let h = w.half_length();
    let s = (x - w.midpoint()) / h;
    let p = if s < T::zero() { 0 } else { 1 };
    Ok(poly::eval(&w.pieces[p], s) / h)
}

/// Exact integral of a dual weight over its edge.
pub fn integrate_dual_weight<T: Real>(w: &DualWeight<T>) -> T {
    poly::integrate(&w.pieces[0], -T::one(), T::zero()) + poly::integrate(&w.pieces[1], T::zero(), T::one())
}

/// `θ(x) = ((x - c)/h)^2 - 1/6` on an edge with midpoint `c` and half length `h`.
pub fn theta<T: Real>(c: T, h: T, x: T) -> T {
    let s = (x - c) / h;
    s * s - T::one() / T::lit(6.0)
}

/// Sum of the two edge-scaled `ψ` functions of the edge endpoints, `h (s|s| - s)`.
pub fn pair_sum<T: Real>(c: T, h: T, x: T) -> T {
    let s = (x - c) / h;
    h * (s * s.abs() - s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_mass() {
        for side in [EndpointSide::Left, EndpointSide::Right] {
            for (a, b) in [(0.0f64, 1.0), (-3.0, 17.0), (1.0, 1.0 + 1e-6)] {
                let w = DualWeight::new(a, b, side).unwrap();
                assert!((integrate_dual_weight(&w) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn midpoint_value() {
        let w = DualWeight::new(2.0f64, 6.0, EndpointSide::Left).unwrap();
        assert!((eval_dual_weight(&w, 4.0).unwrap() + 0.25).abs() < 1e-15);
    }

    #[test]
    fn outside_edge_is_error() {
        let w = DualWeight::new(0.0, 1.0, EndpointSide::Right).unwrap();
        assert!(eval_dual_weight(&w, 1.5).is_err());
    }
}
