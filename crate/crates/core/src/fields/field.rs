use super::fn1d::Fn1D;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// Function of `(x, y)` with exact partial derivatives `D^(a,b)`.
pub trait ScalarField: Send + Sync {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64;

    fn value(&self, x: f64, y: f64) -> f64 {
        self.d(0, 0, x, y)
    }
}

impl<F: ScalarField + ?Sized> ScalarField for Arc<F> {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        (**self).d(a, b, x, y)
    }
}

impl<F: ScalarField + ?Sized> ScalarField for &F {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        (**self).d(a, b, x, y)
    }
}

/// `Σ c_k f_k(x) g_k(y)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparableSum {
    pub terms: Vec<(f64, Fn1D, Fn1D)>,
}

impl SeparableSum {
    pub fn new(terms: Vec<(f64, Fn1D, Fn1D)>) -> Self {
        Self { terms }
    }

    pub fn product(f: Fn1D, g: Fn1D) -> Self {
        Self { terms: vec![(1.0, f, g)] }
    }
}

impl ScalarField for SeparableSum {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|(c, f, g)| c * f.deriv(a, x) * g.deriv(b, y)).sum()
    }
}

/// `exp(x y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpXY;

impl ScalarField for ExpXY {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        // ∂x^a ∂y^b e^{xy} = Σ_k C(b,k) a!/(a-k)! y^(a-k) x^(b-k) e^{xy}
        let mut acc = 0.0;
        let mut binom = 1.0;
        let mut fall = 1.0;
        for k in 0..=a.min(b) {
            acc += binom * fall * y.powi((a - k) as i32) * x.powi((b - k) as i32);
            binom *= (b - k) as f64 / (k + 1) as f64;
            fall *= (a - k) as f64;
        }
        acc * (x * y).exp()
    }
}

/// Tensor polynomial `Σ c[i][j] x^i y^j` of degree at most (3,3).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyField {
    pub c: [[f64; 4]; 4],
}

fn mono_deriv(k: usize, n: usize, t: f64) -> f64 {
    if n > k {
        return 0.0;
    }
    let mut f = 1.0;
    for j in 0..n {
        f *= (k - j) as f64;
    }
    f * t.powi((k - n) as i32)
}

impl ScalarField for PolyField {
    fn d(&self, a: usize, b: usize, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for i in a..4 {
            for j in b..4 {
                if self.c[i][j] != 0.0 {
                    acc += self.c[i][j] * mono_deriv(i, a, x) * mono_deriv(j, b, y);
                }
            }
        }
        acc
    }
}

/// Builds a tensor polynomial from `coefficients[i][j]` multiplying `x^i y^j`.
pub fn make_polynomial_field(coefficients: &[Vec<f64>]) -> Result<PolyField> {
    if coefficients.len() > 4 || coefficients.iter().any(|r| r.len() > 4) {
        return Err(Error::UnknownName("polynomial degree above (3,3)".into()));
    }
    let mut c = [[0.0; 4]; 4];
    for (i, row) in coefficients.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            c[i][j] = *v;
        }
    }
    Ok(PolyField { c })
}

/// Names accepted by [`make_smooth_field`].
pub const SMOOTH_FIELDS: [&str; 4] = ["sin_sin", "exp_xy", "runge", "sin_plus_sin"];

/// Smooth closed-form test fields.
///
/// * `sin_sin`: `sin(πx) sin(πy)`
/// * `exp_xy`: `exp(xy)`
/// * `runge`: `r(x) r(y)` with `r(t) = 1/(1 + 25 (t - 1/2)^2)`
/// * `sin_plus_sin`: `sin(πx) + sin(πy)`, whose mixed derivative vanishes
pub fn make_smooth_field(name: &str) -> Result<Arc<dyn ScalarField>> {
    Ok(match name {
        "sin_sin" => Arc::new(SeparableSum::product(Fn1D::sin(PI), Fn1D::sin(PI))),
        "exp_xy" => Arc::new(ExpXY),
        "runge" => {
            let r = Fn1D::Runge { a: 25.0, centre: 0.5 };
            Arc::new(SeparableSum::product(r.clone(), r))
        }
        "sin_plus_sin" => Arc::new(SeparableSum::new(vec![
            (1.0, Fn1D::sin(PI), Fn1D::Const(1.0)),
            (1.0, Fn1D::Const(1.0), Fn1D::sin(PI)),
        ])),
        other => return Err(Error::UnknownName(other.into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_examples() {
        let xy = make_polynomial_field(&[vec![0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(xy.d(1, 1, 0.3, -2.0), 1.0);
        let x2y2 = make_polynomial_field(&[vec![], vec![], vec![0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(x2y2.d(2, 2, 0.7, 0.1), 4.0);
        assert!(make_polynomial_field(&[vec![0.0; 5]]).is_err());
    }

    #[test]
    fn smooth_examples() {
        let s = make_smooth_field("sin_sin").unwrap();
        assert!((s.d(0, 0, 0.5, 0.5) - 1.0).abs() < 1e-15);
        assert!((s.d(2, 0, 0.5, 0.5) + PI * PI).abs() < 1e-12);
        let e = make_smooth_field("exp_xy").unwrap();
        // (1 + xy) e^{xy}
        assert_eq!(e.d(1, 1, 0.0, 0.0), 1.0);
        assert!((e.d(1, 1, 0.5, 2.0) - 2.0 * 1f64.exp()).abs() < 1e-12);
        assert!(make_smooth_field("nope").is_err());
    }
}
