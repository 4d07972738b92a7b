use proptest::prelude::*;
use zplab_core::expr::Monomial;
use zplab_core::{parse_expression, Complex64, Error, FExpression};

fn monomial() -> impl Strategy<Value = Monomial> {
    let coeff = (-5.0f64..5.0, prop_oneof![Just(0.0), -5.0f64..5.0])
        .prop_filter("nonzero", |(re, im)| re.abs() + im.abs() > 1e-3)
        .prop_map(|(re, im)| Complex64::new(re, im));
    (coeff, prop::collection::vec(0u32..4, 1..5)).prop_map(|(c, e)| Monomial::new(c, e))
}

fn expression() -> impl Strategy<Value = FExpression> {
    prop::collection::vec(monomial(), 1..6).prop_filter_map("constant", |m| FExpression::new(m).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn degree_invariants(f in expression()) {
        let d = f.degrees();
        let ms = f.monomials();
        prop_assert_eq!(d.deg1, ms.iter().map(Monomial::total_degree).max().unwrap());
        prop_assert!(d.deg1 >= 1);
        prop_assert!(!d.j.is_empty());
        for (i, m) in ms.iter().enumerate() {
            if m.total_degree() == d.deg1 {
                prop_assert!(m.weighted_degree() <= d.deg2);
            }
            let in_j = m.total_degree() == d.deg1 && m.weighted_degree() == d.deg2;
            prop_assert_eq!(in_j, d.j.contains(&i));
        }
        let s: Complex64 = d.j.iter().map(|&i| ms[i].coeff).sum();
        prop_assert_eq!(s, d.sum_j);
        prop_assert_eq!(d.condition_holds, s.norm() > 1e-12 * f.max_coeff_abs());
        // deg2 never exceeds the largest derivative order times deg1
        prop_assert!(d.deg2 as usize <= d.deg1 as usize * f.max_order());
    }

    #[test]
    fn print_parse_round_trip(f in expression()) {
        let g = parse_expression(&f.to_string()).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(g.to_string(), f.to_string());
    }

    #[test]
    fn reorder_invariance(f in expression(), seed in any::<u64>()) {
        let mut ms = f.monomials().to_vec();
        let n = ms.len();
        for i in (1..n).rev() {
            ms.swap(i, (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize);
        }
        let g = FExpression::new(ms).unwrap();
        let (a, b) = (f.degrees(), g.degrees());
        prop_assert_eq!((a.deg1, a.deg2, a.j.len()), (b.deg1, b.deg2, b.j.len()));
        prop_assert!((a.sum_j - b.sum_j).norm() <= 1e-12 * f.max_coeff_abs());
        prop_assert_eq!(a.condition_holds, b.condition_holds);
    }

    #[test]
    fn scaling_invariance(f in expression(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let c = Complex64::new(re, im);
        prop_assume!(c.norm() > 1e-2);
        let g = f.scaled(c).unwrap();
        let (a, b) = (f.degrees(), g.degrees());
        prop_assert_eq!((a.deg1, a.deg2, &a.j), (b.deg1, b.deg2, &b.j));
        prop_assert!((a.sum_j * c - b.sum_j).norm() <= 1e-12 * g.max_coeff_abs());
    }

    #[test]
    fn parser_never_panics(s in "[-+*^()z0-9., ]{0,40}") {
        let _ = parse_expression(&s);
    }
}

#[test]
fn condition_examples() {
    let d = parse_expression("z0*z2 - z1^2").unwrap().degrees();
    assert_eq!((d.deg1, d.deg2), (2, 2));
    assert!(!d.condition_holds);
    assert!(matches!(d.require_condition(), Err(Error::ConditionViolated(_))));
    let d = parse_expression("z1^2 + z0^3").unwrap().degrees();
    assert_eq!((d.deg1, d.deg2, d.sum_j), (3, 0, Complex64::new(1.0, 0.0)));
    let d = parse_expression("z0*z2 - 2*z1^2").unwrap().degrees();
    assert_eq!(d.sum_j, Complex64::new(-1.0, 0.0));
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(parse_expression("3 + 2"), Err(Error::ConstantExpression)));
    assert!(matches!(parse_expression("z0 - z0 + 1"), Err(Error::ConstantExpression)));
    assert!(matches!(parse_expression("z0 +"), Err(Error::Syntax { pos: 4, .. })));
}
