use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// The four reference basis splines on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RefKind {
    /// Value 1 at `-1`.
    PhiMinus,
    /// Value 1 at `+1`.
    PhiPlus,
    /// Derivative 1 at `-1`.
    PsiMinus,
    /// Derivative 1 at `+1`.
    PsiPlus,
}

impl RefKind {
    pub const ALL: [RefKind; 4] = [RefKind::PhiMinus, RefKind::PhiPlus, RefKind::PsiMinus, RefKind::PsiPlus];

    fn index(self) -> usize {
        match self {
            RefKind::PhiMinus => 0,
            RefKind::PhiPlus => 1,
            RefKind::PsiMinus => 2,
            RefKind::PsiPlus => 3,
        }
    }
}

/// Which one-sided limit to take where a piecewise quantity jumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Side {
    LeftLimit,
    #[default]
    RightLimit,
}

// Piece coefficients in the reference variable, [left piece on [-1,0], right piece on [0,1]].
const REF: [[[f64; 3]; 2]; 4] = [
    [[0.5, -1.0, -0.5], [0.5, -1.0, 0.5]],
    [[0.5, 1.0, 0.5], [0.5, 1.0, -0.5]],
    [[0.25, -0.5, -0.75], [0.25, -0.5, 0.25]],
    [[-0.25, -0.5, -0.25], [-0.25, -0.5, 0.75]],
];

/// Quadratic pieces of a reference basis spline in the reference variable.
pub fn ref_pieces<T: Real>(kind: RefKind) -> [[T; 3]; 2] {
    let r = &REF[kind.index()];
    [r[0].map(T::lit), r[1].map(T::lit)]
}

/// Quadratic pieces in piece-local variables `t ∈ [-1, 1]`, where the reference
/// variable is `-1/2 + t/2` on the left piece and `1/2 + t/2` on the right piece.
pub fn local_pieces<T: Real>(kind: RefKind) -> [[T; 3]; 2] {
    let half = T::lit(0.5);
    let [l, r] = ref_pieces::<T>(kind);
    [
        poly::compose_affine(&l, -half, half),
        poly::compose_affine(&r, half, half),
    ]
}

/// Evaluates a reference basis spline or one of its first two derivatives.
pub fn eval_ref_basis<T: Real>(kind: RefKind, order: usize, x: T, side: Side) -> Result<T> {
    if order > 2 {
        return Err(Error::Order(order));
    }
    if !(x >= -T::one() && x <= T::one()) {
        return Err(Error::Domain {
            x: x.to_f64().unwrap_or(f64::NAN),
            lo: -1.0,
            hi: 1.0,
        });
    }
    let pieces = ref_pieces::<T>(kind);
    let right = x > T::zero() || (x == T::zero() && side == Side::RightLimit);
    let c = if right { &pieces[1] } else { &pieces[0] };
    Ok(poly::eval_deriv(c, order, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_at_endpoints() {
        for (k, kind) in RefKind::ALL.iter().enumerate() {
            let v = [
                eval_ref_basis(*kind, 0, -1.0f64, Side::RightLimit).unwrap(),
                eval_ref_basis(*kind, 0, 1.0, Side::RightLimit).unwrap(),
                eval_ref_basis(*kind, 1, -1.0, Side::RightLimit).unwrap(),
                eval_ref_basis(*kind, 1, 1.0, Side::RightLimit).unwrap(),
            ];
            for (m, val) in v.iter().enumerate() {
                let expect = if m == k { 1.0 } else { 0.0 };
                assert!((val - expect).abs() < 1e-15, "{kind:?} functional {m}");
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(eval_ref_basis(RefKind::PhiMinus, 0, -1.0, Side::RightLimit).unwrap(), 1.0);
        assert_eq!(eval_ref_basis(RefKind::PsiPlus, 1, 1.0, Side::RightLimit).unwrap(), 1.0);
        assert_eq!(eval_ref_basis(RefKind::PhiMinus, 0, 0.0, Side::RightLimit).unwrap(), 0.5);
        assert!(eval_ref_basis(RefKind::PhiMinus, 0, 1.5, Side::RightLimit).is_err());
        assert!(eval_ref_basis(RefKind::PhiMinus, 3, 0.5, Side::RightLimit).is_err());
    }

    #[test]
    fn second_derivative_jumps_at_knot() {
        let l = eval_ref_basis(RefKind::PhiMinus, 2, 0.0, Side::LeftLimit).unwrap();
        let r = eval_ref_basis(RefKind::PhiMinus, 2, 0.0, Side::RightLimit).unwrap();
        assert_eq!((l, r), (-1.0, 1.0));
    }

    #[test]
    fn local_pieces_agree_with_reference() {
        for kind in RefKind::ALL {
            let loc = local_pieces::<f64>(kind);
            for &t in &[-1.0, -0.4, 0.0, 0.6, 1.0] {
                let xl = -0.5 + 0.5 * t;
                let xr = 0.5 + 0.5 * t;
                let side_l = Side::LeftLimit;
                let side_r = Side::RightLimit;
                assert!((poly::eval(&loc[0], t) - eval_ref_basis(kind, 0, xl, side_l).unwrap()).abs() < 1e-15);
                assert!((poly::eval(&loc[1], t) - eval_ref_basis(kind, 0, xr, side_r).unwrap()).abs() < 1e-15);
            }
        }
    }
}
