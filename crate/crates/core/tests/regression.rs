//! Frozen values of the convergence, Shishkin and bound-consistency runs.

use c1macro::fields::make_smooth_field;
use c1macro::oracles::{bound_consistency, BoundSpec};
use c1macro::study::{converge, shishkin_point, ConvergeConfig, Operator, ShishkinConfig};

fn close(got: f64, want: f64) -> bool {
    (got - want).abs() <= 1e-9 * want.abs()
}

fn finest(op: Operator, field: &str) -> Vec<f64> {
    let t = converge(&ConvergeConfig { operator: op, field: field.into(), levels: 3, ..Default::default() }).unwrap();
    t.rows.last().unwrap().errors.clone()
}

#[test]
fn uniform_mesh_errors_on_level_two() {
    let frozen: [(Operator, &str, [f64; 3]); 5] = [
        (Operator::Full, "sin_sin", [1.1055477970739658e-5, 0.0013048331472471904, 0.22830925626962853]),
        (Operator::Bicubic, "sin_sin", [2.2729139188081577e-6, 9.701712478105406e-5, 0.010026269968335187]),
        (Operator::Quasi, "sin_sin", [1.1037330335304944e-5, 0.0013033399213109782, 0.22820769623229337]),
        (Operator::Aniso, "sin_sin", [2.312860351950582e-5, 0.002438069163142432, 0.32290250911484325]),
        (Operator::Reduced, "sin_plus_sin", [1.5668957368383147e-5, 0.0018446553609810148, 0.3228264972932977]),
    ];
    for (op, field, want) in frozen {
        let got = finest(op, field);
        for c in 0..3 {
            assert!(close(got[c], want[c]), "{op:?} column {c}: {} vs {}", got[c], want[c]);
        }
    }
}

#[test]
fn quasi_interpolant_tracks_the_nodal_one_on_uniform_meshes() {
    // the averaged mixed derivative differs from the nodal one by O(h^2)
    let (a, b) = (finest(Operator::Full, "sin_sin"), finest(Operator::Quasi, "sin_sin"));
    for c in 0..3 {
        assert!((a[c] - b[c]).abs() < 5e-3 * a[c]);
    }
}

#[test]
fn shishkin_point_eps_1e6_n16() {
    let r = shishkin_point(&ShishkinConfig::default(), 1e-6, 16).unwrap();
    assert!(close(r.lambda, 3.0 * 1e-3 * 16f64.ln()));
    assert!(close(r.l2, 0.010122199150268296));
    assert!(close(r.h1_weighted, 0.32683552045568254));
    assert!(close(r.h2_weighted, 0.663810633495055));
    assert!(close(r.jumps[0], 1.1306952716669216e-5));
    assert!(close(r.jumps[2], 0.003107535626566839));
    assert!(r.jumps[1] < 1e-20 && r.jumps[3] < 1e-20);
    assert!(r.max_value_jump < 1e-12);
}

#[test]
fn bound_ratios_on_two_levels() {
    let u = make_smooth_field("sin_sin").unwrap();
    let frozen = [
        (BoundSpec::full(1), [0.005827450025992958, 0.010260309235126512]),
        (BoundSpec::reduced(), [0.016257796234207603, 0.028058212174990844]),
        (BoundSpec::bicubic(), [0.03212821943375009, 0.035002619175540886]),
    ];
    for (spec, want) in frozen {
        let got = bound_consistency(&spec, &*u, 2).unwrap();
        for l in 0..2 {
            assert!(close(got[l], want[l]), "{} level {l}: {}", spec.name, got[l]);
        }
    }
}
