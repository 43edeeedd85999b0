use c1macro::fields::{PolyField, ScalarField, SeparableSum};
use c1macro::interpolation::{build_composite, interp_bfs_mesh, interp_full, interp_reduced, quasi_interp};
use c1macro::mesh::{build_macro_mesh, build_shishkin, select_sigma, select_sigma_shishkin, transition_point, Corner, Grid1D, SigmaStrategy};
use c1macro::norms::{all_elements, norm_report, seminorm_sq, QuadratureRule, Seminorm};
use c1macro::oracles::random::{random_smooth_field, seeded};
use c1macro::oracles::{brute_force_divided_difference, fd_check};
use c1macro::spline_core::{divided_difference, integrate_dual_weight, DualWeight, EndpointSide, KnotSequence};
use c1macro::study::{shishkin_point, ShishkinConfig};
use proptest::prelude::*;

fn graded(cuts: &[f64]) -> Grid1D {
    let mut c: Vec<f64> = vec![0.0];
    let total: f64 = cuts.iter().sum();
    let mut acc = 0.0;
    for w in cuts {
        acc += w / total;
        c.push(acc);
    }
    *c.last_mut().unwrap() = 1.0;
    Grid1D::new(c).unwrap()
}

fn sample_points(n: usize) -> Vec<(f64, f64)> {
    (0..n).flat_map(|i| (0..n).map(move |j| ((i as f64 + 0.37) / n as f64, (j as f64 + 0.61) / n as f64))).collect()
}

fn sup_diff(a: &dyn ScalarField, b: &dyn ScalarField, pts: &[(f64, f64)]) -> f64 {
    pts.iter().map(|&(x, y)| (a.value(x, y) - b.value(x, y)).abs()).fold(0.0, f64::max)
}

fn poly_field(c: &[f64]) -> PolyField {
    let mut m = [[0.0; 4]; 4];
    for (k, v) in c.iter().enumerate() {
        m[k / 4][k % 4] = *v;
    }
    PolyField { c: m }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauss_rule_is_exact_to_degree_2n_minus_1(n in 1usize..8, coeffs in prop::collection::vec(-2.0f64..2.0, 16), a in -3.0f64..1.0, len in 0.01f64..4.0) {
        let b = a + len;
        let deg = 2 * n - 1;
        let c = &coeffs[..=deg.min(15)];
        let rule = QuadratureRule::gauss_legendre(n);
        let got = rule.integrate(a, b, |x| c.iter().rev().fold(0.0, |acc, v| acc * x + v));
        let exact: f64 = c.iter().enumerate().map(|(k, v)| v * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k as f64 + 1.0)).sum();
        let scale = c.iter().enumerate().map(|(k, v)| v.abs() * a.abs().max(b.abs()).powi(k as i32 + 1)).sum::<f64>().max(1.0);
        prop_assert!((got - exact).abs() <= 1e-12 * scale);
    }

    #[test]
    fn seminorms_are_additive_and_monotone_in_the_element_set(seed in any::<u64>(), wx in prop::collection::vec(0.1f64..1.0, 4), wy in prop::collection::vec(0.1f64..1.0, 3)) {
        let u = random_smooth_field(&mut seeded(seed));
        let (gx, gy) = (graded(&wx), graded(&wy));
        let rule = QuadratureRule::gauss_legendre(4);
        let all = all_elements(&gx, &gy);
        let (left, right): (Vec<_>, Vec<_>) = all.iter().partition(|e| e.0 < 2);
        for s in Seminorm::ALL {
            let whole = seminorm_sq(&u, s, &gx, &gy, &all, &rule);
            let parts = seminorm_sq(&u, s, &gx, &gy, &left, &rule) + seminorm_sq(&u, s, &gx, &gy, &right, &rule);
            prop_assert!((whole - parts).abs() <= 1e-12 * whole.max(1.0));
            prop_assert!(seminorm_sq(&u, s, &gx, &gy, &left, &rule) <= whole * (1.0 + 1e-14));
        }
    }

    #[test]
    fn field_derivatives_match_finite_differences(seed in any::<u64>()) {
        let u = random_smooth_field(&mut seeded(seed));
        let pts = sample_points(4);
        for alpha in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (2, 2)] {
            prop_assert!(fd_check(&u, alpha, &pts, 1e-2).unwrap() < 1e-5, "alpha {:?}", alpha);
        }
    }

    #[test]
    fn interpolant_derivatives_match_finite_differences_inside_elements(seed in any::<u64>()) {
        let u = random_smooth_field(&mut seeded(seed));
        let mesh = build_macro_mesh(&Grid1D::uniform(0.0, 1.0, 2).unwrap(), &Grid1D::uniform(0.0, 1.0, 2).unwrap());
        let p = interp_full(&u, &mesh).unwrap();
        // points strictly inside elements of width 1/4
        let pts: Vec<(f64, f64)> = (0..4).flat_map(|i| (0..4).map(move |j| (0.125 + 0.25 * i as f64, 0.11 + 0.25 * j as f64))).collect();
        for alpha in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
            prop_assert!(fd_check(&p, alpha, &pts, 1e-2).unwrap() < 1e-5);
        }
    }

    #[test]
    fn full_operator_reproduces_q2_on_graded_meshes(c in prop::collection::vec(-1.0f64..1.0, 11), wx in prop::collection::vec(0.05f64..1.0, 3), wy in prop::collection::vec(0.05f64..1.0, 2)) {
        let mut m = [[0.0; 4]; 4];
        for a in 0..3 { for b in 0..3 { m[a][b] = c[3 * a + b]; } }
        let u = PolyField { c: m };
        let mesh = build_macro_mesh(&graded(&wx), &graded(&wy));
        let p = interp_full(&u, &mesh).unwrap();
        prop_assert!(sup_diff(&p, &u, &sample_points(9)) < 1e-11);
    }

    #[test]
    fn bicubic_operator_reproduces_q3(c in prop::collection::vec(-1.0f64..1.0, 16), wx in prop::collection::vec(0.05f64..1.0, 3)) {
        let u = poly_field(&c);
        let p = interp_bfs_mesh(&u, &graded(&wx), &Grid1D::uniform(0.0, 1.0, 3).unwrap()).unwrap();
        prop_assert!(sup_diff(&p, &u, &sample_points(9)) < 1e-11);
    }

    #[test]
    fn operators_are_linear(s1 in any::<u64>(), s2 in any::<u64>(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let u = random_smooth_field(&mut seeded(s1));
        let v = random_smooth_field(&mut seeded(s2));
        let mut terms = Vec::new();
        terms.extend(u.terms.iter().map(|(c, f, g)| (a * c, f.clone(), g.clone())));
        terms.extend(v.terms.iter().map(|(c, f, g)| (b * c, f.clone(), g.clone())));
        let w = SeparableSum::new(terms);
        let mesh = build_macro_mesh(&Grid1D::uniform(0.0, 1.0, 3).unwrap(), &Grid1D::new(vec![0.0, 0.2, 1.0]).unwrap());
        let sel = select_sigma(&mesh, SigmaStrategy::TowardCorner, Corner::LowerLeft);
        let pts = sample_points(7);
        for op in 0..3 {
            let apply = |f: &SeparableSum| match op {
                0 => interp_full(f, &mesh).unwrap(),
                1 => interp_reduced(f, &mesh).unwrap(),
                _ => quasi_interp(f, &mesh, &sel).unwrap(),
            };
            let (pu, pv, pw) = (apply(&u), apply(&v), apply(&w));
            let err = pts.iter().map(|&(x, y)| (pw.value(x, y) - a * pu.value(x, y) - b * pv.value(x, y)).abs()).fold(0.0, f64::max);
            prop_assert!(err < 1e-11);
        }
    }

    #[test]
    fn divided_differences_match_brute_force(xs in prop::collection::vec(-1.0f64..1.0, 1..4), mult in prop::collection::vec(1usize..3, 3), seed in any::<u64>()) {
        let u = random_smooth_field(&mut seeded(seed));
        let f = |k: usize, t: f64| u.d(k, 0, t, 0.3);
        let mut nodes: Vec<(f64, usize)> = Vec::new();
        for (i, x) in xs.iter().enumerate() {
            if nodes.iter().all(|(y, _)| (y - x).abs() > 0.05) {
                nodes.push((*x, mult[i]));
            }
        }
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        let knots: Vec<f64> = nodes.iter().flat_map(|&(x, m)| std::iter::repeat_n(x, m)).collect();
        let data: Vec<Vec<f64>> = nodes.iter().map(|&(x, m)| (0..m).map(|k| f(k, x)).collect()).collect();
        let ours = divided_difference(&KnotSequence::new(nodes).unwrap(), &data).unwrap();
        let brute = brute_force_divided_difference(&knots, &f);
        prop_assert!((ours - brute).abs() <= 1e-9 * brute.abs().max(1.0));
    }

    #[test]
    fn dual_weights_average_to_one(a in -5.0f64..5.0, len in 1e-6f64..10.0, left in any::<bool>()) {
        let side = if left { EndpointSide::Left } else { EndpointSide::Right };
        let w = DualWeight::new(a, a + len, side).unwrap();
        prop_assert!((integrate_dual_weight(&w) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transition_point_is_capped_and_monotone_in_eps(e in -10.0f64..-1.0, k in 1usize..9) {
        let n = 8 * k;
        let eps = 10f64.powf(e);
        let l = transition_point(eps, n, 3.0, 1.0);
        prop_assert!(l > 0.0 && l <= 0.25);
        prop_assert!(transition_point(eps / 10.0, n, 3.0, 1.0) <= l);
    }
}

#[test]
fn composite_reproduces_global_q2_on_shishkin_meshes() {
    let u = PolyField { c: [[1.0, 0.5, -0.3, 0.0], [0.2, -1.1, 0.4, 0.0], [0.7, 0.0, 0.25, 0.0], [0.0; 4]] };
    for eps in [1e-2, 1e-6] {
        for n in [8, 24] {
            let mesh = build_shishkin(eps, n, 3.0, 1.0).unwrap();
            let star = build_composite(&u, &mesh, &select_sigma_shishkin(&mesh, SigmaStrategy::TowardCorner).unwrap()).unwrap();
            let rep = norm_report(&u, &star, &mesh, &QuadratureRule::gauss_legendre(4), 4).unwrap();
            assert!(rep.global.linf < 1e-10, "eps {eps} n {n}: {}", rep.global.linf);
            assert!(rep.jumps.iter().all(|(_, v)| *v < 1e-18));
        }
    }
}

#[test]
fn region_norms_add_up_to_the_global_norm() {
    let u = c1macro::fields::field_by_name("layer", 1e-4, 1.0).unwrap();
    let mesh = build_shishkin(1e-4, 16, 3.0, 1.0).unwrap();
    let star = build_composite(&*u, &mesh, &select_sigma_shishkin(&mesh, SigmaStrategy::TowardCorner).unwrap()).unwrap();
    let rep = norm_report(&*u, &star, &mesh, &QuadratureRule::gauss_legendre(4), 3).unwrap();
    for q in [|r: &c1macro::norms::RegionNorms| r.l2, |r: &c1macro::norms::RegionNorms| r.h1, |r: &c1macro::norms::RegionNorms| r.h2] {
        let sum: f64 = rep.regions.iter().map(|r| q(r).powi(2)).sum();
        assert!((sum - q(&rep.global).powi(2)).abs() <= 1e-12 * sum);
    }
    let linf = rep.regions.iter().map(|r| r.linf).fold(0.0, f64::max);
    assert_eq!(linf, rep.global.linf);
}

#[test]
fn results_do_not_depend_on_the_thread_count() {
    let cfg = ShishkinConfig::default();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| shishkin_point(&cfg, 1e-6, 16).unwrap())
    };
    assert_eq!(run(1), run(4));
}
