//! Every acceptance criterion at its stated tolerance, one PASS/FAIL line each.

mod common;

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{TestRng, TestRunner};
use std::f64::consts::{LN_2, PI, TAU};
use std::io::Write;
use std::time::{Duration, Instant};
use zplab_core::dirichlet::{coefficients, log_derivative_coefficients, zero_free_right, Rational};
use zplab_core::eval::{eval_point, evaluate_with_error};
use zplab_core::expr::Monomial;
use zplab_core::theorems::{star_discrepancy, weyl_statistics, Pipeline, Verdict, ZeroSet};
use zplab_core::zeros::{total_multiplicity, trivial_cluster_count, Rectangle, ZeroFinder};
use zplab_core::zeta::{zeta, zeta_derivative, zeta_taylor, EvalRequest};
use zplab_core::{parse_expression, Complex64, Error, FExpression, Result};

const TEST_EXPRS: [&str; 5] = ["z0", "z1", "z1^2", "z1^2 + z0^3", "z0*z2 - 2*z1^2"];

/// Bypasses libtest capture so the lines reach the log.
fn say(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        let note = note.into();
        self.notes.push(if ok { note } else { format!("FAILED {note}") });
        self.ok &= ok;
    }
}

fn run(n: u32, name: &str, failures: &mut Vec<u32>, f: impl FnOnce(&mut Outcome) -> Result<()>) {
    let started = Instant::now();
    let mut o = Outcome::new();
    if let Err(e) = f(&mut o) {
        o.check(false, format!("error: {e}"));
    }
    let tag = if o.ok { "PASS" } else { "FAIL" };
    say(format!("[{tag}] criterion {n:>2} {name} ({:.1} s)", started.elapsed().as_secs_f64()));
    for note in &o.notes {
        say(format!("         {note}"));
    }
    if !o.ok {
        failures.push(n);
    }
}

fn expr(s: &str) -> FExpression {
    parse_expression(s).unwrap()
}

/// Zero lists shared across criteria, each checked against the winding count
/// of its own region when first computed.
struct Cache {
    z0: Pipeline,
    z1: Pipeline,
    z0_500: Option<ZeroSet>,
    z1_400: Option<ZeroSet>,
}

impl Cache {
    fn agree(p: &Pipeline, zs: &ZeroSet) -> Result<bool> {
        let n = ZeroFinder::with_config(p.expr(), p.finder).winding_count(&zs.region)?;
        Ok(n == total_multiplicity(&zs.zeros))
    }

    fn z0_500(&mut self, o: &mut Outcome) -> Result<&ZeroSet> {
        if self.z0_500.is_none() {
            let zs = self.z0.zeros(1.0, 500.0)?;
            o.check(Self::agree(&self.z0, &zs)?, format!("z0 zeros to 500: {} located, agrees with winding count", zs.zeros.len()));
            self.z0_500 = Some(zs);
        }
        Ok(self.z0_500.as_ref().unwrap())
    }

    fn z1_400(&mut self, o: &mut Outcome) -> Result<&ZeroSet> {
        if self.z1_400.is_none() {
            let zs = self.z1.zeros(1.0, 400.0)?;
            o.check(Self::agree(&self.z1, &zs)?, format!("z1 zeros to 400: {} located, agrees with winding count", zs.zeros.len()));
            self.z1_400 = Some(zs);
        }
        Ok(self.z1_400.as_ref().unwrap())
    }
}

fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let p = (2..=n).find(|p| n % p == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m == 1 {
        (p as f64).ln()
    } else {
        0.0
    }
}

fn engine_accuracy(o: &mut Outcome) -> Result<()> {
    let started = Instant::now();
    let pts = [
        ("zeta(2) - pi^2/6", zeta(c(2.0, 0.0))? - PI * PI / 6.0, 1e-12),
        ("zeta(0) + 1/2", zeta(c(0.0, 0.0))? + 0.5, 1e-12),
        ("zeta'(0) + log(2 pi)/2", zeta_derivative(&EvalRequest::new(c(0.0, 0.0), 1, 1e-12))? + 0.5 * TAU.ln(), 1e-11),
        ("zeta(-1) + 1/12", zeta(c(-1.0, 0.0))? + 1.0 / 12.0, 1e-11),
    ];
    for (name, err, tol) in pts {
        o.check(err.norm() <= tol, format!("|{name}| = {:.2e} <= {tol:e}", err.norm()));
    }
    let f = expr("z0");
    let zs = ZeroFinder::new(&f).locate_zeros(&Rectangle::new(-1.0, 2.0, 10.0, 26.0)?)?;
    o.check(zs.len() == 3, format!("{} zeros in [-1, 2] x [10, 26]", zs.len()));
    for (z, g) in zs.iter().zip(ZETA_ZERO_ORDINATES) {
        let d = (z.gamma() - g).abs();
        o.check(d <= 1e-8, format!("gamma = {:.15} (reference {g:.15}), diff {d:.1e}", z.gamma()));
    }
    let elapsed = started.elapsed();
    o.check(elapsed < Duration::from_secs(5), format!("runtime {:.3} s < 5 s", elapsed.as_secs_f64()));
    Ok(())
}

fn counting(o: &mut Outcome, cache: &Cache) -> Result<()> {
    for (t, want) in &ZERO_COUNTS[..3] {
        let started = Instant::now();
        let r = cache.z0.verify_count(*t, 3.0)?;
        o.check(
            r.zero_count == *want && r.verdict == Verdict::Pass,
            format!(
                "z0 T = {t}: measured {} (table {want}), predicted {:.3}, |diff| {:.3} <= {:.3}, {:.2} s",
                r.zero_count,
                r.predicted.re(),
                r.discrepancy,
                r.tolerance,
                started.elapsed().as_secs_f64()
            ),
        );
        if *t == 200.0 {
            o.check(started.elapsed() < Duration::from_secs(600), "z0 at T = 200 within 10 min");
        }
    }
    for e in ["z1", "z1^2 + z0^3"] {
        let p = Pipeline::new(&expr(e))?;
        let r = p.verify_count(100.0, 3.0)?;
        o.check(
            r.verdict == Verdict::Pass,
            format!("{e} T = 100: measured {}, predicted {:.3}, |diff| {:.3} <= {:.3}", r.zero_count, r.predicted.re(), r.discrepancy, r.tolerance),
        );
        let started = Instant::now();
        let n = p.count(1.0, 200.0)?;
        o.check(
            started.elapsed() < Duration::from_secs(600),
            format!("{e} T = 200: count {n} in {:.2} s", started.elapsed().as_secs_f64()),
        );
    }
    Ok(())
}

fn trivial_clusters(o: &mut Outcome) -> Result<()> {
    let f = expr("z1^2 + z0^3");
    for n in [20, 25, 30] {
        let k = trivial_cluster_count(&f, n, 0.5)?;
        o.check(k == 3, format!("z1^2 + z0^3, n = {n}: {k} zeros in |s + 2n| < 0.5 (deg1 = 3)"));
    }
    let z0 = expr("z0");
    let counts = (1..=10).map(|n| trivial_cluster_count(&z0, n, 0.5)).collect::<Result<Vec<_>>>()?;
    o.check(counts.iter().all(|&k| k == 1), format!("z0, n = 1..10: {counts:?}"));
    Ok(())
}

fn power_sums(o: &mut Outcome, cache: &mut Cache) -> Result<()> {
    let t = 500.0;
    let zs = cache.z0_500(o)?.clone();
    let r = cache.z0.verify_power_sum(&zs, 2.0, t, 5.0)?;
    let expected = -LN_2 * t / TAU;
    o.check(
        (r.predicted.re() - expected).abs() < 1e-9 && r.verdict == Verdict::Pass,
        format!("z0, x = 2: measured {:.4}, predicted {expected:.4}, |diff| {:.3} <= {:.3}", r.measured, r.discrepancy, r.tolerance),
    );
    let r = cache.z0.verify_power_sum(&zs, 6.0, t, 5.0)?;
    o.check(
        r.discrepancy <= r.tolerance && r.predicted.re().abs() < 1e-12,
        format!("z0, x = 6: |measured| {:.3} <= {:.3}", r.discrepancy, r.tolerance),
    );
    let lattice = log_derivative_coefficients(&expr("z1"), 2.0)?;
    let a = lattice.alpha(Rational::new(3, 2)).unwrap_or_default();
    let closed = -(3f64.ln()) * 1.5f64.ln() / LN_2;
    o.check(
        (a.re - closed).abs() <= 1e-10 && a.im == 0.0,
        format!("alpha(3/2) = {:.15} from the lattice, closed form {closed:.15}, reference {ALPHA_3_2_Z1:.15}", a.re),
    );
    let zs1 = cache.z1_400(o)?.clone();
    let r = cache.z1.verify_power_sum(&zs1, 1.5, 300.0, 10.0)?;
    o.check(
        r.verdict == Verdict::Pass,
        format!("z1, x = 3/2, T = 300: measured {:.4}, predicted {:.4}, |diff| {:.3} <= {:.3}", r.measured, r.predicted, r.discrepancy, r.tolerance),
    );
    Ok(())
}

fn lattice_fidelity(o: &mut Outcome) -> Result<()> {
    let refs = [("z0", LOGDERIV_30_Z0), ("z1", LOGDERIV_30_Z1), ("z1^2 + z0^3", LOGDERIV_30_Z1SQ_PLUS_Z0CUBE)];
    for e in TEST_EXPRS {
        let f = expr(e);
        let l = log_derivative_coefficients(&f, 100.0)?;
        if l.leading_index() > 4 {
            continue;
        }
        let series = l.evaluate(c(30.0, 0.0));
        let direct = eval_point(&f, c(30.0, 0.0))?.log_derivative();
        let mut gap = (series - direct).norm();
        if let Some((_, r)) = refs.iter().find(|(n, _)| *n == e) {
            gap = gap.max((series - r).norm());
        }
        o.check(gap <= 1e-8, format!("{e} (n_F = {}): |F'/F(30) - sum| = {gap:.2e}", l.leading_index()));
    }
    let l = log_derivative_coefficients(&expr("z0"), 50.0)?;
    let worst = (1..=50u64)
        .map(|d| (l.alpha(Rational::new(d as u128, 1)).unwrap_or_default() + von_mangoldt(d)).norm())
        .fold(0.0, f64::max);
    o.check(worst <= 1e-12, format!("z0: max |alpha(d) + Lambda(d)| over d <= 50 is {worst:.2e}"));
    Ok(())
}

fn beta_sums(o: &mut Outcome, cache: &mut Cache) -> Result<()> {
    let (t, u) = (200.0, 200.0);
    let zs = cache.z0_500(o)?.clone();
    let r = cache.z0.verify_beta_sum(&zs, t, u, 10.0)?;
    o.check(
        r.measured.re().abs() <= 10.0 * u / t.ln(),
        format!("z0: |2 pi sum(beta - 1/2)| = {:.2e} <= {:.3} over {} zeros", r.measured.re().abs(), 10.0 * u / t.ln(), r.zero_count),
    );
    let zs1 = cache.z1_400(o)?.clone();
    let r = cache.z1.verify_beta_sum(&zs1, t, u, 10.0)?;
    let per_u = (r.measured.re() - u * t.ln().ln()) / u;
    let target = (2f64.sqrt() / LN_2).ln();
    o.check(
        (per_u - target).abs() <= 0.5,
        format!("z1: per-U constant {per_u:.5}, expected {target:.5} +- 0.5 ({} zeros)", r.zero_count),
    );
    Ok(())
}

fn clustering(o: &mut Outcome, cache: &mut Cache) -> Result<()> {
    let zs = cache.z1_400(o)?.clone();
    let r = cache.z1.verify_clustering(&zs, 100.0, 100.0, 0.05, 5.0)?;
    o.check(r.measured.re() <= 5.0, format!("z1, delta = 0.05: ratio {:.5} <= 5 ({} zeros beyond delta)", r.measured.re(), r.zero_count));
    let counts = [0.02, 0.05, 0.1, 0.2]
        .iter()
        .map(|&d| cache.z1.verify_clustering(&zs, 100.0, 100.0, d, 5.0).map(|r| r.zero_count))
        .collect::<Result<Vec<_>>>()?;
    o.check(counts.windows(2).all(|w| w[1] <= w[0]), format!("counts for delta = 0.02, 0.05, 0.1, 0.2: {counts:?}"));
    Ok(())
}

fn equidistribution(o: &mut Outcome, cache: &mut Cache) -> Result<()> {
    let zs = cache.z0_500(o)?;
    let alpha = LN_2 / TAU;
    let points: Vec<f64> = zs
        .zeros
        .iter()
        .flat_map(|z| std::iter::repeat((alpha * z.gamma()).rem_euclid(1.0)).take(z.multiplicity as usize))
        .collect();
    let d: Vec<f64> = [50, 100, points.len()].iter().map(|&n| star_discrepancy(&points[..n])).collect();
    o.check(
        d[0] > d[1] && d[1] > d[2],
        format!("D* for N = 50, 100, {}: {:.5}, {:.5}, {:.5}", points.len(), d[0], d[1], d[2]),
    );
    let w = weyl_statistics(&zs.zeros, alpha, 1)?;
    let s1 = w.weyl_sums[0].norm();
    o.check(s1 < 0.2 && (w.star_discrepancy - d[2]).abs() < 1e-15, format!("|S_1| = {s1:.5} < 0.2"));
    Ok(())
}

fn property_suites(o: &mut Outcome) -> Result<()> {
    let config = ProptestConfig::with_cases(50);
    let exprs = ["z0", "z1", "z1^2 + z0^3", "z0*z2 - 2*z1^2"];
    for e in exprs {
        let f = expr(e);
        let finder = ZeroFinder::new(&f);
        let rects = (-6.0f64..0.0, 1.0f64..6.0, 1.0f64..60.0, 1.0f64..20.0, 0.1f64..0.9, any::<bool>());
        let mut runner = TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm));
        let res = runner.run(&rects, |(s, w, t, h, frac, vertical)| {
            let r = Rectangle::new(s, s + w, t, t + h).unwrap();
            let (a, b) = if vertical { r.split_sigma(frac) } else { r.split_t(frac) };
            let counts = [r, a, b].map(|x| finder.winding_exact(&x));
            if counts.iter().any(|c| matches!(c, Err(Error::BoundaryZeroSuspected { .. }))) {
                return Err(TestCaseError::reject("zero on a contour"));
            }
            let [n, na, nb] = counts.map(|c| c.unwrap());
            prop_assert_eq!(n, na + nb);
            Ok(())
        });
        o.check(res.is_ok(), format!("winding additivity, 50 splits of {e}: {}", res.err().map_or("no failures".into(), |e| e.to_string())));
    }

    for e in exprs {
        let f = expr(e);
        let finder = ZeroFinder::new(&f);
        let (n, rect) = finder.winding_count_nudged(&Rectangle::new(-3.0, 4.0, 1.0, 40.0)?)?;
        let zs = finder.locate_zeros(&rect)?;
        let certified = zs.iter().all(|z| finder.circle_winding(z.rho, z.box_radius).ok() == Some(z.multiplicity as i64));
        o.check(
            total_multiplicity(&zs) == n && certified,
            format!("count/locate agreement for {e}: {n} zeros, each certified by its circle"),
        );
    }

    let mut worst_partial: f64 = 0.0;
    for e in TEST_EXPRS {
        let f = expr(e);
        let co = coefficients(&f, 200)?;
        for t in [0.0, 7.0, 100.0] {
            let s = c(30.0, t);
            let (v, err) = evaluate_with_error(&f, s)?;
            let excess = (co.partial_sum(s) - v).norm() - co.tail_bound(30.0) - err;
            worst_partial = worst_partial.max(excess);
        }
    }
    o.check(worst_partial <= 0.0, "partial sums within tail bound at sigma = 30 for every test expression");

    let mut worst_conj: f64 = 0.0;
    for (sigma, t) in [(0.5, 14.0), (-7.0, 3.0), (2.5, 123.0), (-0.3, 45.0)] {
        let a = zeta_taylor(c(sigma, t), 4)?;
        let b = zeta_taylor(c(sigma, -t), 4)?;
        for k in 0..=4 {
            let (x, y) = (a.derivative(k)?, b.derivative(k)?);
            worst_conj = worst_conj.max((x - y.conj()).norm() / x.norm().max(1.0));
        }
    }
    o.check(worst_conj <= 1e-12, format!("conjugation: worst relative gap {worst_conj:.1e}"));

    let monomial = ((-5.0f64..5.0, -5.0f64..5.0), prop::collection::vec(0u32..4, 1..5))
        .prop_map(|((re, im), e)| Monomial::new(Complex64::new(re, im), e));
    let strategy = prop::collection::vec(monomial, 1..6).prop_filter_map("constant", |m| FExpression::new(m).ok());
    let config = ProptestConfig::with_cases(500);
    let mut runner = TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm));
    let res = runner.run(&strategy, |f| {
        let d = f.degrees();
        let ms = f.monomials();
        prop_assert_eq!(d.deg1, ms.iter().map(Monomial::total_degree).max().unwrap());
        for (i, m) in ms.iter().enumerate() {
            let top = m.total_degree() == d.deg1;
            prop_assert!(!top || m.weighted_degree() <= d.deg2);
            prop_assert_eq!(top && m.weighted_degree() == d.deg2, d.j.contains(&i));
        }
        prop_assert_eq!(d.sum_j, d.j.iter().map(|&i| ms[i].coeff).sum::<Complex64>());
        let g = f.scaled(Complex64::new(0.0, 2.0)).unwrap().degrees();
        prop_assert_eq!((d.deg1, d.deg2, &d.j), (g.deg1, g.deg2, &g.j));
        Ok(())
    });
    o.check(res.is_ok(), format!("degree invariants over 500 random expressions: {}", res.err().map_or("no failures".into(), |e| e.to_string())));
    Ok(())
}

fn zero_free(o: &mut Outcome, cache: &mut Cache) -> Result<()> {
    let z1 = expr("z1");
    let e2 = zero_free_right(&z1)?;
    let co = coefficients(&z1, 20000)?;
    let n_f = co.leading_index();
    let rest: f64 = (n_f + 1..=co.len()).map(|n| co.eta(n).norm() * (n as f64).powf(-e2)).sum();
    let lead = co.leading().norm() * (n_f as f64).powf(-e2);
    let tail = co.tail_bound(e2);
    o.check(
        e2 <= 4.0 && lead > rest + tail,
        format!("z1: E2 = {e2}, leading {lead:.4e} > rest {rest:.4e} + tail {tail:.2e}"),
    );
    let mut lists: Vec<(String, f64, Vec<f64>)> = Vec::new();
    let z0_e2 = cache.z0.e2f();
    lists.push(("z0".into(), z0_e2, cache.z0_500(o)?.zeros.iter().map(|z| z.beta()).collect()));
    let z1_e2 = cache.z1.e2f();
    lists.push(("z1".into(), z1_e2, cache.z1_400(o)?.zeros.iter().map(|z| z.beta()).collect()));
    for e in ["z1^2", "z1^2 + z0^3", "z0*z2 - 2*z1^2"] {
        let f = expr(e);
        let e2 = zero_free_right(&f)?;
        let zs = ZeroFinder::new(&f).locate_zeros(&Rectangle::new(-20.0, e2 + 2.0, 1.0, 100.0)?)?;
        lists.push((e.into(), e2, zs.iter().map(|z| z.beta()).collect()));
    }
    for (e, e2, betas) in lists {
        let max = betas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        o.check(max < e2, format!("{e}: {} zeros, largest beta {max:.4} < E2 = {e2}", betas.len()));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut cache = Cache {
        z0: Pipeline::new(&expr("z0")).unwrap(),
        z1: Pipeline::new(&expr("z1")).unwrap(),
        z0_500: None,
        z1_400: None,
    };
    run(1, "engine accuracy", &mut failures, engine_accuracy);
    run(2, "zero counts", &mut failures, |o| counting(o, &cache));
    run(3, "trivial clusters", &mut failures, trivial_clusters);
    run(4, "power sums", &mut failures, |o| power_sums(o, &mut cache));
    run(5, "lattice fidelity", &mut failures, lattice_fidelity);
    run(6, "beta sums", &mut failures, |o| beta_sums(o, &mut cache));
    run(7, "clustering", &mut failures, |o| clustering(o, &mut cache));
    run(8, "equidistribution", &mut failures, |o| equidistribution(o, &mut cache));
    run(9, "property suites", &mut failures, property_suites);
    run(10, "zero-free certification", &mut failures, |o| zero_free(o, &mut cache));
    say(format!("acceptance: {} of 10 criteria passed in {:.1} s", 10 - failures.len(), started.elapsed().as_secs_f64()));
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
