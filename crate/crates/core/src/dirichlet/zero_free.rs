//! Zero-free half-planes: a certified one on the right, a grid scan on the left.

use super::coefficients_covering;
use crate::error::{Error, Result};
use crate::eval::eval_scaled;
use crate::expr::FExpression;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

const RIGHT_START: f64 = 1.75;
const RIGHT_LIMIT: f64 = 60.0;
const GRID: f64 = 0.25;
/// Truncation used for the right bound when `4 n_F` is smaller.
const RIGHT_MIN_TERMS: usize = 4096;
pub const MIN_SCAN_SIGMA: f64 = -200.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroFreeBounds {
    /// No zeros with `Re s ≥ e2f` (certified under the stored coefficient bound).
    pub e2f: f64,
    /// No zeros found with `Re s ≤ e1f_scan` outside the disks `|s + 2n| < epsilon`
    /// on the scanned grid; empirical.
    pub e1f_scan: f64,
    pub epsilon: f64,
}

/// Smallest `σ₀` on the grid `1.75, 2, 2.25, …` where the leading Dirichlet
/// term dominates the rest of the series for all `Re s ≥ σ₀`.
pub fn zero_free_right(expr: &FExpression) -> Result<f64> {
    let c = coefficients_covering(expr, RIGHT_MIN_TERMS, 4)?;
    let n_f = c.leading_index();
    let lead = c.leading().norm();
    let b = c.growth_bound();
    let n = c.len();
    let ln_nf = (n_f as f64).ln();
    let ln_n = (n as f64).ln();
    let rest: Vec<(f64, f64)> = (n_f + 1..=n)
        .map(|m| (c.eta(m).norm(), ln_nf - (m as f64).ln()))
        .filter(|&(a, _)| a > 0.0)
        .collect();
    let mut i = 0;
    loop {
        let sigma = RIGHT_START + GRID * i as f64;
        if sigma > RIGHT_LIMIT {
            return Err(Error::NotCertifiable);
        }
        // both sides multiplied by n_F^σ
        let sum: f64 = rest.iter().rev().map(|&(a, l)| a * (sigma * l).exp()).sum();
        let tail = b * (1.5 * ln_n + sigma * (ln_nf - ln_n)).exp() / (sigma - 1.5);
        if sum + tail < lead {
            return Ok(sigma);
        }
        i += 1;
    }
}

/// Left scan over `|Im s| ≤ t_max`.
pub fn zero_free_left_scan(expr: &FExpression, sigma_min: f64, epsilon: f64, t_max: f64) -> Result<f64> {
    if !(t_max > 0.0) {
        return Err(Error::InvalidRequest("t_max must be positive".into()));
    }
    zero_free_left_scan_window(expr, sigma_min, epsilon, -t_max, t_max)
}

/// Columns `σ = sigma_min, sigma_min + 1/4, …, 0` are tested left to right on
/// the grid `t_lo, t_lo + 1/4, …, t_hi`. A grid point passes when
/// `|F - A₁| < |A₁|`, `A₁` being the leading asymptotic term. Returns the
/// last column before the first failing one, or 0 if all pass.
pub fn zero_free_left_scan_window(
    expr: &FExpression,
    sigma_min: f64,
    epsilon: f64,
    t_lo: f64,
    t_hi: f64,
) -> Result<f64> {
    if !(MIN_SCAN_SIGMA..0.0).contains(&sigma_min) {
        return Err(Error::InvalidRequest(format!("sigma_min must lie in [{MIN_SCAN_SIGMA}, 0)")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidRequest("epsilon must lie in (0, 1)".into()));
    }
    if !(t_hi > t_lo) {
        return Err(Error::InvalidRequest("empty t window".into()));
    }
    let degrees = expr.degrees();
    degrees.require_condition()?;
    let n_t = ((t_hi - t_lo) / GRID).ceil() as usize;
    let ts: Vec<f64> = (0..=n_t).map(|j| (t_lo + GRID * j as f64).min(t_hi)).collect();
    let n_sigma = (-sigma_min / GRID).floor() as usize;
    let mut last_good: Option<f64> = None;
    for i in 0..=n_sigma {
        let sigma = sigma_min + GRID * i as f64;
        let failure = ts
            .par_iter()
            .map(|&t| {
                let s = Complex64::new(sigma, t);
                let n = (-sigma / 2.0).round().max(1.0);
                if (s + 2.0 * n).norm() < epsilon {
                    return Ok(None);
                }
                let p = eval_scaled(expr, &degrees, s)?;
                Ok(((p.f - p.leading).norm() >= p.leading.norm()).then_some(s))
            })
            .collect::<Result<Vec<Option<Complex64>>>>()?
            .into_iter()
            .flatten()
            .next();
        match (failure, last_good) {
            (Some(s), None) => return Err(Error::ScanInconclusive(s)),
            (Some(_), Some(g)) => return Ok(g),
            (None, _) => last_good = Some(sigma),
        }
    }
    Ok(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    fn p(s: &str) -> FExpression {
        parse_expression(s).unwrap()
    }

    #[test]
    fn right_bounds() {
        assert_eq!(zero_free_right(&p("z0")).unwrap(), 2.0);
        let z1 = zero_free_right(&p("z1")).unwrap();
        assert!(z1 <= 4.0, "{z1}");
        assert_eq!(zero_free_right(&p("7*z1")).unwrap(), z1);
    }

    #[test]
    fn zeta_left_scan_passes_everywhere() {
        assert_eq!(zero_free_left_scan(&p("z0"), -20.0, 0.5, 50.0).unwrap(), 0.0);
    }

    #[test]
    fn scan_rejects_bad_input() {
        assert!(matches!(
            zero_free_left_scan(&p("z0"), -300.0, 0.5, 10.0),
            Err(Error::InvalidRequest(_))
        ));
        assert!(matches!(
            zero_free_left_scan(&p("z0*z2 - z1^2"), -20.0, 0.5, 10.0),
            Err(Error::ConditionViolated(_))
        ));
    }
}
