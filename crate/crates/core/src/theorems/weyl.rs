use crate::error::{Error, Result};
use crate::zeros::ZeroRecord;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

pub const MIN_WEYL_ZEROS: usize = 50;

#[derive(Debug, Clone, Serialize)]
pub struct WeylStatistics {
    pub alpha: f64,
    pub m_max: u32,
    /// `S_m` for `m = 1, …, m_max`; `S_{-m}` is the conjugate.
    pub weyl_sums: Vec<Complex64>,
    pub star_discrepancy: f64,
    /// Number of points, multiplicities included.
    pub zero_count: usize,
}

/// `D*` of points in `[0, 1)`.
pub fn star_discrepancy(points: &[f64]) -> f64 {
    let mut x = points.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &xi)| ((i + 1) as f64 / n - xi).max(xi - i as f64 / n))
        .fold(0.0, f64::max)
}

/// Weyl sums and star discrepancy of `{α γ}` over `zeros`, each repeated by
/// its multiplicity.
pub fn weyl_statistics(zeros: &[ZeroRecord], alpha: f64, m_max: u32) -> Result<WeylStatistics> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidRequest("alpha must be a non-zero real".into()));
    }
    if m_max == 0 {
        return Err(Error::InvalidRequest("m_max must be at least 1".into()));
    }
    let gammas: Vec<f64> = zeros
        .iter()
        .flat_map(|z| std::iter::repeat(z.rho.im).take(z.multiplicity as usize))
        .collect();
    if gammas.len() < MIN_WEYL_ZEROS {
        return Err(Error::TooFewZeros { need: MIN_WEYL_ZEROS, got: gammas.len() });
    }
    let n = gammas.len() as f64;
    let weyl_sums = (1..=m_max)
        .map(|m| {
            gammas
                .iter()
                .map(|g| Complex64::from_polar(1.0, TAU * (m as f64 * alpha * g).rem_euclid(1.0)))
                .sum::<Complex64>()
                / n
        })
        .collect();
    let points: Vec<f64> = gammas.iter().map(|g| (alpha * g).rem_euclid(1.0)).collect();
    Ok(WeylStatistics { alpha, m_max, weyl_sums, star_discrepancy: star_discrepancy(&points), zero_count: gammas.len() })
}
