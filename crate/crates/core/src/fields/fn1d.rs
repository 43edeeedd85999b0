use serde::{Deserialize, Serialize};

/// Univariate building blocks with closed-form derivatives of any order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Fn1D {
    Const(f64),
    /// `Σ c_k t^k`.
    Poly(Vec<f64>),
    /// `sin(freq t + phase)`.
    Sin { freq: f64, phase: f64 },
    /// `exp(rate (t - origin))`.
    Exp { rate: f64, origin: f64 },
    /// `1 / (1 + a (t - centre)^2)`.
    Runge { a: f64, centre: f64 },
}

impl Fn1D {
    pub fn cos(freq: f64) -> Self {
        Fn1D::Sin { freq, phase: std::f64::consts::FRAC_PI_2 }
    }

    pub fn sin(freq: f64) -> Self {
        Fn1D::Sin { freq, phase: 0.0 }
    }

    /// `n`-th derivative at `t`.
    pub fn deriv(&self, n: usize, t: f64) -> f64 {
        match self {
            Fn1D::Const(c) => {
                if n == 0 {
                    *c
                } else {
                    0.0
                }
            }
            Fn1D::Poly(c) => {
                let mut acc = 0.0;
                for k in (n..c.len()).rev() {
                    let mut f = 1.0;
                    for j in 0..n {
                        f *= (k - j) as f64;
                    }
                    acc = acc * t + c[k] * f;
                }
                acc
            }
            Fn1D::Sin { freq, phase } => {
                let arg = freq * t + phase + n as f64 * std::f64::consts::FRAC_PI_2;
                freq.powi(n as i32) * arg.sin()
            }
            Fn1D::Exp { rate, origin } => rate.powi(n as i32) * (rate * (t - origin)).exp(),
            Fn1D::Runge { a, centre } => {
                // (1 + a s^2) r^(k) + 2 a s k r^(k-1) + a k (k-1) r^(k-2) = 0
                let s = t - centre;
                let q = 1.0 + a * s * s;
                let mut r = vec![1.0 / q];
                for k in 1..=n {
                    let kf = k as f64;
                    let mut v = 2.0 * a * s * kf * r[k - 1];
                    if k >= 2 {
                        v += a * kf * (kf - 1.0) * r[k - 2];
                    }
                    r.push(-v / q);
                }
                r[n]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(f: &Fn1D, n: usize, t: f64) -> f64 {
        let h = 1e-3;
        (-f.deriv(n, t + 2.0 * h) + 8.0 * f.deriv(n, t + h) - 8.0 * f.deriv(n, t - h) + f.deriv(n, t - 2.0 * h)) / (12.0 * h)
    }

    #[test]
    fn derivative_chain_matches_differences() {
        let fs = [
            Fn1D::Poly(vec![1.0, -2.0, 0.5, 3.0]),
            Fn1D::sin(2.5),
            Fn1D::cos(1.3),
            Fn1D::Exp { rate: -3.0, origin: 0.2 },
            Fn1D::Runge { a: 25.0, centre: 0.5 },
        ];
        for f in &fs {
            for n in 0..4 {
                for &t in &[0.1, 0.37, 0.8] {
                    let (a, b) = (f.deriv(n + 1, t), fd(f, n, t));
                    assert!((a - b).abs() <= 1e-6 * (1.0 + a.abs()), "{f:?} n={n} t={t}: {a} vs {b}");
                }
            }
        }
    }
}
