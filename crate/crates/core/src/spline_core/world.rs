use super::basis::{ref_pieces, RefKind};
use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// World-domain basis families on an element grid `x_0 < x_1 < ... < x_n`.
///
/// Spline families (`Phi`, `Psi`) live on macro nodes, i.e. even indices, and
/// are supported on `[x_{i-2}, x_{i+2}]`. Lagrange families live on the element
/// grid: `LagrangeFull` at node `x_i`, `LagrangeHalf` at the midpoint of
/// `[x_i, x_{i+1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WorldKind {
    Phi,
    Psi,
    LagrangeFull,
    LagrangeHalf,
}

fn domain_err<T: Real>(x: T, xs: &[T]) -> Error {
    Error::Domain {
        x: x.to_f64().unwrap_or(f64::NAN),
        lo: xs[0].to_f64().unwrap_or(f64::NAN),
        hi: xs[xs.len() - 1].to_f64().unwrap_or(f64::NAN),
    }
}

// Quadratic Lagrange shape functions at t = -1, 0, 1 on [-1, 1].
fn lagrange_local<T: Real>(which: usize) -> [T; 3] {
    let h = T::lit(0.5);
    match which {
        0 => [T::zero(), -h, h],
        1 => [T::one(), T::zero(), -T::one()],
        _ => [T::zero(), h, h],
    }
}

fn eval_on_interval<T: Real>(c: &[T; 3], lo: T, hi: T, order: usize, x: T) -> T {
    let hh = (hi - lo) * T::lit(0.5);
    let t = (x - (lo + hh)) / hh;
    poly::eval_deriv(c, order, t) / hh.powi(order as i32)
}

/// Evaluates a world-domain basis function (or a derivative up to order 2).
///
/// At interior breakpoints the interval to the right is used.
pub fn eval_world_basis<T: Real>(xs: &[T], node: usize, kind: WorldKind, order: usize, x: T) -> Result<T> {
    if order > 2 {
        return Err(Error::Order(order));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::Grid);
    }
    if !(x >= xs[0] && x <= xs[n - 1]) {
        return Err(domain_err(x, xs));
    }
    match kind {
        WorldKind::Phi | WorldKind::Psi => {
            if node >= n || node % 2 == 1 {
                return Err(Error::Index { index: node, what: "macro node (even element-grid index)" });
            }
            let tol = T::lit(1e-12);
            let mut support = Vec::new();
            if node >= 2 {
                support.push((node - 2, node, RefKind::PhiPlus, RefKind::PsiPlus));
            }
            if node + 2 < n {
                support.push((node, node + 2, RefKind::PhiMinus, RefKind::PsiMinus));
            }
            for &(lo, hi, _, _) in &support {
                let (a, m, b) = (xs[lo], xs[lo + 1], xs[hi]);
                let mid = (a + b) * T::lit(0.5);
                if ((m - mid) / (b - a)).abs() > tol {
                    return Err(Error::Knots(format!("x_{} is not the midpoint of its macro interval", lo + 1)));
                }
            }
            let only = support.len() == 1;
            for &(lo, hi, phi, psi) in &support {
                let (a, b) = (xs[lo], xs[hi]);
                let closes = hi + 1 == n || (hi == node && only);
                let inside = x >= a && (x < b || (x == b && closes));
                if !inside {
                    continue;
                }
                let h = (b - a) * T::lit(0.5);
                let xr = (x - (a + h)) / h;
                let (r, scale) = match kind {
                    WorldKind::Phi => (phi, T::one()),
                    _ => (psi, h),
                };
                let pieces = ref_pieces::<T>(r);
                let c = if xr >= T::zero() { &pieces[1] } else { &pieces[0] };
                return Ok(scale * poly::eval_deriv(c, order, xr) / h.powi(order as i32));
            }
            Ok(T::zero())
        }
        WorldKind::LagrangeFull => {
            if node >= n {
                return Err(Error::Index { index: node, what: "element-grid node" });
            }
            if node + 1 < n && x >= xs[node] && x <= xs[node + 1] {
                return Ok(eval_on_interval(&lagrange_local(0), xs[node], xs[node + 1], order, x));
            }
            if node > 0 && x >= xs[node - 1] && x < xs[node] {
                return Ok(eval_on_interval(&lagrange_local(2), xs[node - 1], xs[node], order, x));
            }
            if node + 1 == n && x == xs[node] {
                return Ok(eval_on_interval(&lagrange_local(2), xs[node - 1], xs[node], order, x));
            }
            Ok(T::zero())
        }
        WorldKind::LagrangeHalf => {
            if node + 1 >= n {
                return Err(Error::Index { index: node, what: "element-grid interval" });
            }
            if x >= xs[node] && x <= xs[node + 1] {
                return Ok(eval_on_interval(&lagrange_local(1), xs[node], xs[node + 1], order, x));
            }
            Ok(T::zero())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<f64> {
        vec![0.0, 0.5, 1.0, 2.0, 3.0, 3.25, 3.5]
    }

    #[test]
    fn value_and_derivative_tables() {
        let xs = grid();
        let phi = |x| eval_world_basis(&xs, 2, WorldKind::Phi, 0, x).unwrap();
        let dpsi = |x| eval_world_basis(&xs, 2, WorldKind::Psi, 1, x).unwrap();
        assert_eq!(phi(1.0), 1.0);
        assert_eq!(phi(0.0), 0.0);
        assert_eq!(phi(3.0), 0.0);
        assert_eq!(dpsi(1.0), 1.0);
        assert!((dpsi(0.5) + 0.5).abs() < 1e-15);
        assert!((dpsi(2.0) + 0.5).abs() < 1e-15);
        assert_eq!(dpsi(0.0), 0.0);
    }

    #[test]
    fn lagrange_property() {
        let xs = grid();
        assert!((eval_world_basis(&xs, 3, WorldKind::LagrangeHalf, 0, 2.5).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(eval_world_basis(&xs, 3, WorldKind::LagrangeHalf, 0, 2.0).unwrap(), 0.0);
        assert_eq!(eval_world_basis(&xs, 3, WorldKind::LagrangeHalf, 0, 3.0).unwrap(), 0.0);
        assert!((eval_world_basis(&xs, 3, WorldKind::LagrangeFull, 0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(eval_world_basis(&xs, 3, WorldKind::LagrangeFull, 0, 2.5).unwrap().abs() < 1e-15);
    }

    #[test]
    fn index_and_domain_errors() {
        let xs = grid();
        assert!(eval_world_basis(&xs, 1, WorldKind::Phi, 0, 1.0).is_err());
        assert!(eval_world_basis(&xs, 8, WorldKind::Psi, 0, 1.0).is_err());
        assert!(eval_world_basis(&xs, 6, WorldKind::LagrangeHalf, 0, 1.0).is_err());
        assert!(eval_world_basis(&xs, 2, WorldKind::Phi, 0, 4.0).is_err());
    }
}
