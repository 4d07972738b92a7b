mod common;

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{TestRng, TestRunner};
use zplab_core::dirichlet::zero_free_right;
use zplab_core::zeros::{total_multiplicity, trivial_cluster_count, Rectangle, ZeroFinder};
use zplab_core::{parse_expression, Error, FExpression};

const EXPRS: [&str; 4] = ["z0", "z1", "z1^2 + z0^3", "z0*z2 - 2*z1^2"];

fn expr(s: &str) -> FExpression {
    parse_expression(s).unwrap()
}

#[test]
fn zeta_zeros_match_reference() {
    let f = expr("z0");
    let zs = ZeroFinder::new(&f).locate_zeros(&Rectangle::new(-1.0, 2.0, 1.0, 50.0).unwrap()).unwrap();
    assert_eq!(zs.len(), 10);
    for (z, g) in zs.iter().zip(ZETA_ZERO_ORDINATES) {
        assert_eq!(z.multiplicity, 1);
        assert!((z.beta() - 0.5).abs() < 1e-10);
        assert!((z.gamma() - g).abs() < 1e-10, "{} vs {g}", z.gamma());
    }
}

#[test]
fn derivative_zeros_match_reference() {
    let f = expr("z1");
    let zs = ZeroFinder::new(&f).locate_zeros(&Rectangle::new(-1.0, 5.0, 1.0, 50.0).unwrap()).unwrap();
    assert_eq!(zs.len(), ZETA_PRIME_ZEROS.len());
    for (z, (b, g)) in zs.iter().zip(ZETA_PRIME_ZEROS) {
        assert!((z.rho - c(b, g)).norm() < 1e-9);
    }
    // squaring doubles every multiplicity and moves nothing
    let f2 = expr("z1^2");
    let zs2 = ZeroFinder::new(&f2).locate_zeros(&Rectangle::new(-1.0, 5.0, 1.0, 50.0).unwrap()).unwrap();
    assert_eq!(zs2.len(), 5);
    for (a, b) in zs.iter().zip(&zs2) {
        assert_eq!(b.multiplicity, 2);
        assert!((a.rho - b.rho).norm() < 1e-6);
    }
}

#[test]
fn counts_match_table() {
    let f = expr("z0");
    let finder = ZeroFinder::new(&f);
    for (t, n) in &ZERO_COUNTS[..3] {
        assert_eq!(finder.winding_count(&Rectangle::new(-1.0, 2.0, 1.0, *t).unwrap()).unwrap(), *n);
    }
}

#[test]
fn count_and_locate_agree() {
    for e in EXPRS {
        let f = expr(e);
        let finder = ZeroFinder::new(&f);
        for r in [(-3.0, 4.0, 1.0, 40.0), (-1.0, 3.0, 60.0, 80.0), (0.0, 2.0, 25.0, 26.5)] {
            let rect = Rectangle::new(r.0, r.1, r.2, r.3).unwrap();
            let (n, used) = finder.winding_count_nudged(&rect).unwrap();
            let zs = finder.locate_zeros(&used).unwrap();
            assert_eq!(total_multiplicity(&zs), n, "{e} on {rect:?}");
            for z in &zs {
                assert!(used.contains(z.rho));
                assert_eq!(finder.circle_winding(z.rho, z.box_radius).unwrap(), z.multiplicity as i64);
            }
        }
    }
}

#[test]
fn conjugate_symmetry() {
    for e in ["z0", "z1^2 + z0^3"] {
        let f = expr(e);
        let finder = ZeroFinder::new(&f);
        let up = finder.locate_zeros(&Rectangle::new(-2.0, 3.0, 1.0, 35.0).unwrap()).unwrap();
        let down = finder.locate_zeros(&Rectangle::new(-2.0, 3.0, -35.0, -1.0).unwrap()).unwrap();
        assert_eq!(up.len(), down.len());
        for z in &up {
            assert!(down.iter().any(|w| (w.rho - z.rho.conj()).norm() < 1e-8 && w.multiplicity == z.multiplicity));
        }
    }
}

#[test]
fn located_zeros_respect_right_bound() {
    for e in EXPRS {
        let f = expr(e);
        let e2 = zero_free_right(&f).unwrap();
        let zs = ZeroFinder::new(&f).locate_zeros(&Rectangle::new(-2.0, e2 + 3.0, 1.0, 60.0).unwrap()).unwrap();
        assert!(!zs.is_empty());
        assert!(zs.iter().all(|z| z.beta() < e2), "{e}");
    }
}

#[test]
fn trivial_zeros_of_zeta() {
    let f = expr("z0");
    for n in 1..=10 {
        assert_eq!(trivial_cluster_count(&f, n, 0.5).unwrap(), 1);
    }
    assert!(matches!(
        ZeroFinder::new(&f).winding_count(&Rectangle::new(0.0, 2.0, -1.0, 1.0).unwrap()),
        Err(Error::PoleInRectangle)
    ));
}

fn rect() -> impl Strategy<Value = Rectangle> {
    (-6.0f64..0.0, 1.0f64..6.0, 1.0f64..60.0, 1.0f64..20.0)
        .prop_map(|(s, w, t, h)| Rectangle::new(s, s + w, t, t + h).unwrap())
}

fn additivity(e: &str) {
    let f = expr(e);
    let finder = ZeroFinder::new(&f);
    let config = ProptestConfig::with_cases(50);
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner
        .run(&(rect(), 0.1f64..0.9, any::<bool>()), |(r, frac, vertical)| {
            let (a, b) = if vertical { r.split_sigma(frac) } else { r.split_t(frac) };
            let counts = [r, a, b].map(|x| finder.winding_exact(&x));
            if counts.iter().any(|c| matches!(c, Err(Error::BoundaryZeroSuspected { .. }))) {
                return Err(TestCaseError::reject("zero on a contour"));
            }
            let [n, na, nb] = counts.map(|c| c.unwrap());
            prop_assert_eq!(n, na + nb, "{:?} split at {}", r, frac);
            Ok(())
        })
        .unwrap();
}

#[test]
fn additivity_zeta() {
    additivity("z0");
}

#[test]
fn additivity_derivative() {
    additivity("z1");
}

#[test]
fn additivity_mixed() {
    additivity("z1^2 + z0^3");
}

#[test]
fn additivity_degenerate() {
    additivity("z0*z2 - 2*z1^2");
}
