use crate::fields::{Fn1D, PolyField, SeparableSum};
use crate::spline_core::HermiteData1D;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Seeded generator shared by all randomized checks.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_fn1d<R: Rng>(rng: &mut R) -> Fn1D {
    match rng.gen_range(0..3) {
        0 => Fn1D::Sin { freq: rng.gen_range(0.5..3.0), phase: rng.gen_range(0.0..TAU) },
        1 => Fn1D::Exp { rate: rng.gen_range(-1.5..1.5), origin: 0.0 },
        _ => Fn1D::Poly((0..5).map(|_| rng.gen_range(-1.0..1.0)).collect()),
    }
}

/// Sum of three random separable products; not a polynomial of low degree.
pub fn random_smooth_field<R: Rng>(rng: &mut R) -> SeparableSum {
    let terms = (0..3)
        .map(|_| (rng.gen_range(-1.0..1.0), random_fn1d(rng), random_fn1d(rng)))
        .collect();
    SeparableSum::new(terms)
}

/// Random tensor polynomial with coefficients in `[-1, 1]` up to degree `(dx, dy)`.
pub fn random_poly_field<R: Rng>(rng: &mut R, dx: usize, dy: usize) -> PolyField {
    let mut c = [[0.0; 4]; 4];
    for row in c.iter_mut().take(dx + 1) {
        for v in row.iter_mut().take(dy + 1) {
            *v = rng.gen_range(-1.0..1.0);
        }
    }
    PolyField { c }
}

pub fn random_hermite<R: Rng>(rng: &mut R) -> HermiteData1D<f64> {
    HermiteData1D::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}
