use super::basis::{local_pieces, ref_pieces, RefKind, Side};
use super::divided::{divided_difference, KnotSequence};
use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// End values and first derivatives for the 1D Hermite problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermiteData1D<T> {
    pub value_left: T,
    pub deriv_left: T,
    pub value_right: T,
    pub deriv_right: T,
}

impl<T: Real> HermiteData1D<T> {
    pub fn new(value_left: T, deriv_left: T, value_right: T, deriv_right: T) -> Self {
        Self { value_left, deriv_left, value_right, deriv_right }
    }

    pub fn is_finite(&self) -> bool {
        self.value_left.is_finite()
            && self.deriv_left.is_finite()
            && self.value_right.is_finite()
            && self.deriv_right.is_finite()
    }
}

/// Quadratic C1 spline on `[a, b]` with one knot at the midpoint.
///
/// Each piece is stored in its own local variable `t ∈ [-1, 1]` centred at the
/// piece midpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MacroSpline1D<T> {
    pub interval: (T, T),
    pub knot: T,
    pub pieces: [[T; 3]; 2],
}

impl<T: Real> MacroSpline1D<T> {
    fn quarter(&self) -> T {
        (self.interval.1 - self.interval.0) * T::lit(0.25)
    }

    /// Evaluates the spline or a derivative up to order 2. At the knot the
    /// one-sided limit named by `side` is used.
    pub fn eval(&self, order: usize, x: T, side: Side) -> Result<T> {
        if order > 2 {
            return Err(Error::Order(order));
        }
        let (a, b) = self.interval;
        if !(x >= a && x <= b) {
            return Err(Error::Domain {
                x: x.to_f64().unwrap_or(f64::NAN),
                lo: a.to_f64().unwrap_or(f64::NAN),
                hi: b.to_f64().unwrap_or(f64::NAN),
            });
        }
        let q = self.quarter();
        let right = x > self.knot || (x == self.knot && side == Side::RightLimit);
        let (p, centre) = if right {
            (1, self.knot + q)
        } else {
            (0, a + q)
        };
        let t = (x - centre) / q;
        Ok(poly::eval_deriv(&self.pieces[p], order, t) / q.powi(order as i32))
    }

    /// Differences between the two pieces at the knot in value and first derivative.
    pub fn knot_defect(&self) -> (T, T) {
        let q = self.quarter();
        let one = T::one();
        let v = poly::eval(&self.pieces[0], one) - poly::eval(&self.pieces[1], -one);
        let d = (poly::eval_deriv(&self.pieces[0], 1, one) - poly::eval_deriv(&self.pieces[1], 1, -one)) / q;
        (v, d)
    }
}

fn check_interval<T: Real>(a: T, b: T) -> Result<()> {
    if !(a < b) || !(b - a).is_finite() {
        return Err(Error::Degenerate(
            a.to_f64().unwrap_or(f64::NAN),
            b.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(())
}

/// Hermite interpolation assembled from the Lagrange-type basis.
pub fn hermite_interpolate_1d<T: Real>(data: &HermiteData1D<T>, a: T, b: T) -> Result<MacroSpline1D<T>> {
    check_interval(a, b)?;
    let h = (b - a) * T::lit(0.5);
    let weights = [
        (RefKind::PhiMinus, data.value_left),
        (RefKind::PhiPlus, data.value_right),
        (RefKind::PsiMinus, h * data.deriv_left),
        (RefKind::PsiPlus, h * data.deriv_right),
    ];
    let mut pieces = [[T::zero(); 3]; 2];
    for (kind, w) in weights {
        let lp = local_pieces::<T>(kind);
        for p in 0..2 {
            for n in 0..3 {
                pieces[p][n] = pieces[p][n] + w * lp[p][n];
            }
        }
    }
    Ok(MacroSpline1D { interval: (a, b), knot: a + h, pieces })
}

/// Newton coefficients `u[-1], u[-1,-1], u[-1,-1,1], u[-1,-1,1,1]` of
/// reference-scaled Hermite data.
pub fn newton_coefficients<T: Real>(reference: &HermiteData1D<T>) -> Result<[T; 4]> {
    let m1 = -T::one();
    let p1 = T::one();
    let l = vec![reference.value_left, reference.deriv_left];
    let r = vec![reference.value_right, reference.deriv_right];
    let f1 = divided_difference(&KnotSequence::new(vec![(m1, 1)])?, &[vec![l[0]]])?;
    let f2 = divided_difference(&KnotSequence::new(vec![(m1, 2)])?, std::slice::from_ref(&l))?;
    let f3 = divided_difference(&KnotSequence::new(vec![(m1, 2), (p1, 1)])?, &[l.clone(), vec![r[0]]])?;
    let f4 = divided_difference(&KnotSequence::new(vec![(m1, 2), (p1, 2)])?, &[l, r])?;
    Ok([f1, f2, f3, f4])
}

/// Newton basis `1, (x+1), (x+1)^2, 4 ψ̂₊₁(x)` as piece polynomials in the
/// reference variable.
pub fn newton_pieces<T: Real>() -> [[[T; 3]; 2]; 4] {
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let z = T::zero();
    let psi = ref_pieces::<T>(RefKind::PsiPlus);
    let n1 = [one, z, z];
    let n2 = [one, one, z];
    let n3 = [one, two, one];
    let n4 = [psi[0].map(|c| four * c), psi[1].map(|c| four * c)];
    [[n1, n1], [n2, n2], [n3, n3], n4]
}

/// Hermite interpolation assembled from the Newton form with divided differences.
pub fn hermite_interpolate_1d_newton<T: Real>(data: &HermiteData1D<T>, a: T, b: T) -> Result<MacroSpline1D<T>> {
    check_interval(a, b)?;
    let h = (b - a) * T::lit(0.5);
    let reference = HermiteData1D::new(data.value_left, h * data.deriv_left, data.value_right, h * data.deriv_right);
    let f = newton_coefficients(&reference)?;
    let basis = newton_pieces::<T>();
    let half = T::lit(0.5);
    let mut pieces = [[T::zero(); 3]; 2];
    for p in 0..2 {
        let mut acc = [T::zero(); 3];
        for (k, fk) in f.iter().enumerate() {
            for n in 0..3 {
                acc[n] = acc[n] + *fk * basis[k][p][n];
            }
        }
        let centre = if p == 0 { -half } else { half };
        pieces[p] = poly::compose_affine(&acc, centre, half);
    }
    Ok(MacroSpline1D { interval: (a, b), knot: a + h, pieces })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_is_reproduced() {
        let s = hermite_interpolate_1d(&HermiteData1D::new(-1.0f64, 1.0, 1.0, 1.0), -1.0, 1.0).unwrap();
        for &x in &[-1.0, -0.3, 0.0, 0.5, 1.0] {
            assert!((s.eval(0, x, Side::RightLimit).unwrap() - x).abs() < 1e-15);
        }
    }

    #[test]
    fn square_newton_coefficients() {
        let f = newton_coefficients(&HermiteData1D::new(1.0, -2.0, 1.0, 2.0)).unwrap();
        assert_eq!(f, [1.0, -2.0, 1.0, 0.0]);
        let s = hermite_interpolate_1d_newton(&HermiteData1D::new(1.0f64, -2.0, 1.0, 2.0), -1.0, 1.0).unwrap();
        for &x in &[-1.0, -0.25, 0.0, 0.8] {
            assert!((s.eval(0, x, Side::RightLimit).unwrap() - x * x).abs() < 1e-15);
        }
    }

    #[test]
    fn postcondition_instance() {
        let s = hermite_interpolate_1d(&HermiteData1D::new(0.0f64, 1.0, 0.0, 1.0), -1.0, 1.0).unwrap();
        assert!(s.eval(0, -1.0, Side::RightLimit).unwrap().abs() < 1e-15);
        assert!(s.eval(0, 1.0, Side::RightLimit).unwrap().abs() < 1e-15);
        assert!((s.eval(1, -1.0, Side::RightLimit).unwrap() - 1.0).abs() < 1e-15);
        assert!((s.eval(1, 1.0, Side::RightLimit).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_interval_rejected() {
        let d = HermiteData1D::new(0.0, 0.0, 0.0, 0.0);
        assert!(hermite_interpolate_1d(&d, 1.0, 1.0).is_err());
        assert!(hermite_interpolate_1d_newton(&d, 2.0, 1.0).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let s = hermite_interpolate_1d(&HermiteData1D::new(1.0f32, -2.0, 1.0, 2.0), -1.0, 1.0).unwrap();
        assert!((s.eval(0, 0.5f32, Side::RightLimit).unwrap() - 0.25).abs() < 1e-6);
    }
}
