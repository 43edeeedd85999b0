//! Dense univariate polynomial helpers on fixed-size coefficient arrays.
//!
//! Coefficients are stored lowest degree first: `c[0] + c[1] t + c[2] t^2 + ...`.

use crate::scalar::Real;

/// Evaluates the `k`-th derivative of `c` at `t`.
pub fn eval_deriv<T: Real, const N: usize>(c: &[T; N], k: usize, t: T) -> T {
    if k >= N {
        return T::zero();
    }
    let mut acc = T::zero();
    for n in (k..N).rev() {
        acc = acc * t + c[n] * falling(n, k);
    }
    acc
}

/// Evaluates `c` at `t`.
pub fn eval<T: Real, const N: usize>(c: &[T; N], t: T) -> T {
    eval_deriv(c, 0, t)
}

/// `n (n-1) ... (n-k+1)` as a scalar.
pub fn falling<T: Real>(n: usize, k: usize) -> T {
    let mut f = 1.0;
    for j in 0..k {
        f *= (n - j) as f64;
    }
    T::lit(f)
}

/// Coefficients of `t -> p(a + b t)`.
pub fn compose_affine<T: Real, const N: usize>(c: &[T; N], a: T, b: T) -> [T; N] {
    let mut out = [T::zero(); N];
    // (a + b t)^n expanded with binomial weights
    for n in 0..N {
        if c[n] == T::zero() {
            continue;
        }
        let mut binom = 1.0f64;
        for m in 0..=n {
            let term = T::lit(binom) * a.powi((n - m) as i32) * b.powi(m as i32);
            out[m] = out[m] + c[n] * term;
            binom = binom * (n - m) as f64 / (m + 1) as f64;
        }
    }
    out
}

/// Exact integral of `c` over `[lo, hi]`.
pub fn integrate<T: Real, const N: usize>(c: &[T; N], lo: T, hi: T) -> T {
    let mut acc = T::zero();
    for n in 0..N {
        let p = (n + 1) as i32;
        acc = acc + c[n] * (hi.powi(p) - lo.powi(p)) / T::lit((n + 1) as f64);
    }
    acc
}

/// Widens a quadratic coefficient triple into a cubic array.
pub fn widen<T: Real>(c: &[T; 3]) -> [T; 4] {
    [c[0], c[1], c[2], T::zero()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_matches_pointwise() {
        let c = [1.0f64, -2.0, 0.5, 3.0];
        let (a, b) = (0.25, -1.5);
        let d = compose_affine(&c, a, b);
        for &t in &[-1.0, -0.3, 0.0, 0.7, 1.0] {
            assert!((eval(&d, t) - eval(&c, a + b * t)).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_cubic() {
        let c = [0.0, 0.0, 0.0, 1.0];
        assert_eq!(eval_deriv(&c, 1, 2.0), 12.0);
        assert_eq!(eval_deriv(&c, 2, 2.0), 12.0);
        assert_eq!(eval_deriv(&c, 3, 2.0), 6.0);
        assert_eq!(eval_deriv(&c, 4, 2.0), 0.0);
    }

    #[test]
    fn integral_of_square() {
        assert!((integrate(&[0.0f64, 0.0, 1.0], 0.0, 1.0) - 1.0 / 3.0).abs() < 1e-15);
    }
}
