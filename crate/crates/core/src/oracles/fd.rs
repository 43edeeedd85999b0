use crate::error::{Error, Result};
use crate::fields::ScalarField;

const FIRST: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
const SECOND: [(f64, f64); 5] = [(-2.0, -1.0), (-1.0, 16.0), (0.0, -30.0), (1.0, 16.0), (2.0, -1.0)];

fn stencil(order: usize, h: f64) -> Vec<(f64, f64)> {
    match order {
        0 => vec![(0.0, 1.0)],
        1 => FIRST.iter().map(|&(o, w)| (o * h, w / (12.0 * h))).collect(),
        _ => SECOND.iter().map(|&(o, w)| (o * h, w / (12.0 * h * h))).collect(),
    }
}

/// Fourth-order central difference approximation of `D^(a,b) f` with
/// `a, b <= 2`, built as a tensor product of 1D stencils on values of `f`.
pub fn fd_derivative<F: ScalarField + ?Sized>(f: &F, alpha: (usize, usize), x: f64, y: f64, h: f64) -> Result<f64> {
    if alpha.0 > 2 || alpha.1 > 2 {
        return Err(Error::Order(alpha.0.max(alpha.1)));
    }
    if !(h > 0.0) || x + h == x || y + h == y {
        return Err(Error::Step(h));
    }
    let mut acc = 0.0;
    for (dx, wx) in stencil(alpha.0, h) {
        for (dy, wy) in stencil(alpha.1, h) {
            acc += wx * wy * f.value(x + dx, y + dy);
        }
    }
    Ok(acc)
}

/// Largest deviation `|fd - exact| / max(1, |exact|)` over the points.
pub fn fd_check<F: ScalarField + ?Sized>(f: &F, alpha: (usize, usize), points: &[(f64, f64)], h: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(x, y) in points {
        let exact = f.d(alpha.0, alpha.1, x, y);
        let approx = fd_derivative(f, alpha, x, y, h)?;
        worst = worst.max((approx - exact).abs() / exact.abs().max(1.0));
    }
    Ok(worst)
}
