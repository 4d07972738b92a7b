//! Predicted versus measured zero statistics.
//!
//! A [`Pipeline`] fixes an expression together with its zero-free abscissae,
//! so that zero lists over `[E₁, E₂] × [t_lo, t_hi]` can be shared by several
//! checks. Every check yields a [`VerificationReport`].

mod weyl;

pub use weyl::{star_discrepancy, weyl_statistics, WeylStatistics};

use crate::dirichlet::{coefficients_covering, log_derivative_coefficients, zero_free_left_scan_window, zero_free_right};
use crate::error::{Error, Result};
use crate::expr::{DegreeReport, FExpression};
use crate::zeros::{trivial_cluster_count, FinderConfig, Rectangle, ZeroFinder, ZeroRecord};
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::f64::consts::{E, PI, TAU};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub const DEFAULT_COUNT_TOL: f64 = 3.0;
pub const DEFAULT_BETA_TOL: f64 = 10.0;
pub const DEFAULT_CLUSTER_TOL: f64 = 5.0;
pub const DEFAULT_POWER_TOL: f64 = 5.0;
pub const DEFAULT_WEYL_TOL: f64 = 0.2;
/// Width of the strips beside the zero-free abscissae checked for zeros.
const ZERO_FREE_PROBE: f64 = 4.0;
/// Left scans start here and move further left while inconclusive.
const SCAN_STARTS: [f64; 5] = [-20.0, -40.0, -80.0, -160.0, -200.0];
pub const DEFAULT_SCAN_EPSILON: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    C7,
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "T1" => TheoremId::T1,
            "T2" => TheoremId::T2,
            "T3" => TheoremId::T3,
            "T4" => TheoremId::T4,
            "T5" => TheoremId::T5,
            "T6" => TheoremId::T6,
            "C7" => TheoremId::C7,
            _ => return Err(Error::InvalidRequest(format!("unknown theorem '{s}' (T1..T6, C7)"))),
        })
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Real(f64),
    Complex(Complex64),
}

impl Quantity {
    fn as_complex(self) -> Complex64 {
        match self {
            Quantity::Real(x) => Complex64::new(x, 0.0),
            Quantity::Complex(z) => z,
        }
    }

    pub fn re(self) -> f64 {
        self.as_complex().re
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Real(x) => fmt::Display::fmt(x, f),
            Quantity::Complex(z) => fmt::Display::fmt(z, f),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Quantity::Real(x) => s.serialize_f64(x),
            Quantity::Complex(z) => [z.re, z.im].serialize(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub params: BTreeMap<String, f64>,
    pub predicted: Quantity,
    pub measured: Quantity,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub zero_count: i64,
    pub runtime_ms: u64,
}

impl VerificationReport {
    fn new(
        theorem_id: TheoremId,
        params: &[(&str, f64)],
        predicted: Quantity,
        measured: Quantity,
        tolerance: f64,
        zero_count: i64,
        started: Instant,
    ) -> Self {
        let discrepancy = (predicted.as_complex() - measured.as_complex()).norm();
        VerificationReport {
            theorem_id,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            predicted,
            measured,
            discrepancy,
            tolerance,
            verdict: if discrepancy <= tolerance { Verdict::Pass } else { Verdict::Fail },
            zero_count,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }
}

/// Zeros of `F` in a region `[E₁, E₂] × [t_lo, t_hi]`.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub region: Rectangle,
    pub zeros: Vec<ZeroRecord>,
}

impl ZeroSet {
    /// Zeros with `lo < γ < hi`, as `(ρ, multiplicity)` pairs.
    pub fn window(&self, lo: f64, hi: f64) -> impl Iterator<Item = &ZeroRecord> + '_ {
        self.zeros.iter().filter(move |z| z.rho.im > lo && z.rho.im < hi)
    }

    fn covers(&self, lo: f64, hi: f64) -> Result<()> {
        if self.region.t_lo <= lo && self.region.t_hi >= hi {
            Ok(())
        } else {
            Err(Error::InvalidRequest(format!(
                "zero list covers [{}, {}], not [{lo}, {hi}]",
                self.region.t_lo, self.region.t_hi
            )))
        }
    }
}

fn check_height(t: f64) -> Result<()> {
    if !(t >= 10.0 && t <= crate::zeta::MAX_HEIGHT / 2.0) {
        return Err(Error::InvalidRequest(format!("T = {t} outside [10, {}]", crate::zeta::MAX_HEIGHT / 2.0)));
    }
    Ok(())
}

pub struct Pipeline {
    expr: FExpression,
    degrees: DegreeReport,
    n_f: usize,
    eta_lead: Complex64,
    e2f: f64,
    pub scan_epsilon: f64,
    pub finder: FinderConfig,
}

impl Pipeline {
    /// Fails with `ConditionViolated` when `Σ_J c_j` vanishes.
    pub fn new(expr: &FExpression) -> Result<Self> {
        let degrees = expr.degrees();
        degrees.require_condition()?;
        let c = coefficients_covering(expr, 2, 1)?;
        Ok(Pipeline {
            expr: expr.clone(),
            n_f: c.leading_index(),
            eta_lead: c.leading(),
            e2f: zero_free_right(expr)?,
            degrees,
            scan_epsilon: DEFAULT_SCAN_EPSILON,
            finder: FinderConfig::default(),
        })
    }

    pub fn expr(&self) -> &FExpression {
        &self.expr
    }

    pub fn degrees(&self) -> &DegreeReport {
        &self.degrees
    }

    pub fn leading_index(&self) -> usize {
        self.n_f
    }

    pub fn e2f(&self) -> f64 {
        self.e2f
    }

    fn finder(&self) -> ZeroFinder<'_> {
        ZeroFinder::with_config(&self.expr, self.finder)
    }

    /// Empirical left abscissa for heights in `[t_lo, t_hi]`.
    pub fn left_abscissa(&self, t_lo: f64, t_hi: f64) -> Result<f64> {
        let mut last = None;
        for start in SCAN_STARTS {
            match zero_free_left_scan_window(&self.expr, start, self.scan_epsilon, t_lo, t_hi) {
                Ok(e1) => return Ok(e1),
                Err(e @ Error::ScanInconclusive(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.unwrap_or(Error::NotCertifiable))
    }

    /// `[E₁, E₂] × [t_lo, t_hi]`
    pub fn region(&self, t_lo: f64, t_hi: f64) -> Result<Rectangle> {
        let e1 = self.left_abscissa(t_lo, t_hi)?;
        Rectangle::new(e1, self.e2f, t_lo, t_hi)
    }

    pub fn zeros(&self, t_lo: f64, t_hi: f64) -> Result<ZeroSet> {
        let region = self.region(t_lo, t_hi)?;
        let zeros = self.finder().locate_zeros(&region)?;
        Ok(ZeroSet { region, zeros })
    }

    /// Zeros with `t_lo < γ < t_hi` by winding number over the region.
    pub fn count(&self, t_lo: f64, t_hi: f64) -> Result<i64> {
        let region = self.region(t_lo, t_hi)?;
        self.finder().winding_count(&region)
    }

    /// `deg₁ (T/2π) log(T/2πe) − (T/2π) log n_F`
    pub fn predict_count(&self, t: f64) -> f64 {
        let u = t / TAU;
        self.degrees.deg1 as f64 * u * (t / (TAU * E)).ln() - u * (self.n_f as f64).ln()
    }

    /// No zeros in the strips of width 4 just right of `E₂` and just left of `E₁`.
    pub fn verify_zero_free(&self, t: f64) -> Result<VerificationReport> {
        check_height(t)?;
        let started = Instant::now();
        let e1 = self.left_abscissa(1.0, t)?;
        let right = Rectangle::new(self.e2f, self.e2f + ZERO_FREE_PROBE, 1.0, t)?;
        let left = Rectangle::new(e1 - ZERO_FREE_PROBE, e1, 1.0, t)?;
        let n = self.finder().winding_count(&right)? + self.finder().winding_count(&left)?;
        Ok(VerificationReport::new(
            TheoremId::T1,
            &[("T", t), ("E1", e1), ("E2", self.e2f), ("epsilon", self.scan_epsilon)],
            Quantity::Real(0.0),
            Quantity::Real(n as f64),
            0.0,
            n,
            started,
        ))
    }

    /// Zeros in `|s + 2n| < ε` against `deg₁`. A mismatch is inconclusive
    /// because the threshold beyond which the count must agree is unknown.
    pub fn verify_trivial_cluster(&self, n: u32, epsilon: f64) -> Result<VerificationReport> {
        let started = Instant::now();
        let count = trivial_cluster_count(&self.expr, n, epsilon)?;
        let mut r = VerificationReport::new(
            TheoremId::T2,
            &[("n", n as f64), ("epsilon", epsilon)],
            Quantity::Real(self.degrees.deg1 as f64),
            Quantity::Real(count as f64),
            0.0,
            count,
            started,
        );
        if r.verdict == Verdict::Fail {
            r.verdict = Verdict::Inconclusive;
        }
        Ok(r)
    }

    pub fn verify_count(&self, t: f64, c_tol: f64) -> Result<VerificationReport> {
        check_height(t)?;
        let started = Instant::now();
        let region = self.region(1.0, t)?;
        let n = self.finder().winding_count(&region)?;
        Ok(VerificationReport::new(
            TheoremId::T3,
            &[("T", t), ("C_tol", c_tol), ("E1", region.sigma_lo), ("E2", region.sigma_hi)],
            Quantity::Real(self.predict_count(t)),
            Quantity::Real(n as f64),
            c_tol * t.ln(),
            n,
            started,
        ))
    }

    /// `deg₂ U log log T + U log|Σ_J c_j / (η_{n_F} n_F^{-1/2})|`
    pub fn predict_beta_sum(&self, t: f64, u: f64) -> f64 {
        let ratio = self.degrees.sum_j / (self.eta_lead / (self.n_f as f64).sqrt());
        self.degrees.deg2 as f64 * u * t.ln().ln() + u * ratio.norm().ln()
    }

    /// `2π Σ_{T<γ<T+U} (β − 1/2)` against its prediction.
    pub fn verify_beta_sum(&self, zeros: &ZeroSet, t: f64, u: f64, c_tol: f64) -> Result<VerificationReport> {
        check_height(t)?;
        zeros.covers(t, t + u)?;
        let started = Instant::now();
        let (sum, n) = zeros
            .window(t, t + u)
            .fold((0.0, 0), |(s, n), z| (s + z.multiplicity as f64 * (z.rho.re - 0.5), n + z.multiplicity as i64));
        Ok(VerificationReport::new(
            TheoremId::T4,
            &[("T", t), ("U", u), ("C_tol", c_tol)],
            Quantity::Real(self.predict_beta_sum(t, u)),
            Quantity::Real(TAU * sum),
            c_tol * u / t.ln(),
            n,
            started,
        ))
    }

    /// Zeros in `(T, T+U)` with `|β − 1/2| > δ`, reported as `m δ / (U log log T)`.
    pub fn verify_clustering(&self, zeros: &ZeroSet, t: f64, u: f64, delta: f64, c_tol: f64) -> Result<VerificationReport> {
        check_height(t)?;
        if !(delta > 0.0) {
            return Err(Error::InvalidRequest("delta must be positive".into()));
        }
        zeros.covers(t, t + u)?;
        let started = Instant::now();
        let m: i64 = zeros
            .window(t, t + u)
            .filter(|z| (z.rho.re - 0.5).abs() > delta)
            .map(|z| z.multiplicity as i64)
            .sum();
        let ratio = m as f64 * delta / (u * t.ln().ln());
        Ok(VerificationReport::new(
            TheoremId::T5,
            &[("T", t), ("U", u), ("delta", delta), ("C_tol", c_tol), ("count", m as f64)],
            Quantity::Real(0.0),
            Quantity::Real(ratio),
            c_tol,
            m,
            started,
        ))
    }

    /// `Σ_{1<γ<T} x^ρ` against `α(x) T / 2π`.
    pub fn verify_power_sum(&self, zeros: &ZeroSet, x: f64, t: f64, c_tol: f64) -> Result<VerificationReport> {
        check_height(t)?;
        if !(x > 1.0 && x <= crate::dirichlet::MAX_LATTICE_X) {
            return Err(Error::InvalidRequest(format!("x must lie in (1, {}]", crate::dirichlet::MAX_LATTICE_X)));
        }
        zeros.covers(1.0, t)?;
        let started = Instant::now();
        let alpha = log_derivative_coefficients(&self.expr, x)?
            .alpha_real(x)
            .unwrap_or_default();
        let lx = x.ln();
        let (sum, n) = zeros.window(1.0, t).fold((Complex64::new(0.0, 0.0), 0), |(s, n), z| {
            (s + (z.rho * lx).exp() * z.multiplicity as f64, n + z.multiplicity as i64)
        });
        Ok(VerificationReport::new(
            TheoremId::T6,
            &[("x", x), ("T", t), ("C_tol", c_tol), ("alpha_re", alpha.re), ("alpha_im", alpha.im)],
            Quantity::Complex(alpha * (t / TAU)),
            Quantity::Complex(sum),
            c_tol * t.ln(),
            n,
            started,
        ))
    }

    /// Largest `|S_m|` of `{α γ}` for `1 ≤ m ≤ m_max`, which should be small.
    pub fn verify_equidistribution(
        &self,
        zeros: &ZeroSet,
        t: f64,
        alpha: f64,
        m_max: u32,
        tol: f64,
    ) -> Result<(VerificationReport, WeylStatistics)> {
        check_height(t)?;
        zeros.covers(1.0, t)?;
        let started = Instant::now();
        let list: Vec<ZeroRecord> = zeros.window(1.0, t).copied().collect();
        let w = weyl_statistics(&list, alpha, m_max)?;
        let worst = w.weyl_sums.iter().map(|s| s.norm()).fold(0.0, f64::max);
        let r = VerificationReport::new(
            TheoremId::C7,
            &[("T", t), ("alpha", alpha), ("m_max", m_max as f64), ("star_discrepancy", w.star_discrepancy)],
            Quantity::Real(0.0),
            Quantity::Real(worst),
            tol,
            w.zero_count as i64,
            started,
        );
        Ok((r, w))
    }
}

/// `deg₁ (T/2π) log(T/2πe) − (T/2π) log n_F` straight from the expression.
pub fn predict_count(expr: &FExpression, t: f64) -> Result<f64> {
    check_height(t)?;
    let c = coefficients_covering(expr, 2, 1)?;
    let u = t / (2.0 * PI);
    Ok(expr.degrees().deg1 as f64 * u * (t / (TAU * E)).ln() - u * (c.leading_index() as f64).ln())
}
