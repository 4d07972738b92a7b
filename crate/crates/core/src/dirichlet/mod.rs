//! Dirichlet-series data attached to `F`.
//!
//! `F(s) = Σ_{n ≥ n_F} η_n n^{-s}` where `η` is the sum over monomials of
//! Dirichlet convolutions of the sequences `(-log n)^l`. From it come the
//! coefficients `α(d)` of `F'/F`, supported on rationals `d = n / n_F^m`, and
//! explicit zero-free abscissae on either side of the critical strip.

mod lattice;
mod zero_free;

pub use lattice::{log_derivative_coefficients, LatticeSeries, Rational, MAX_LATTICE_X};
pub use zero_free::{zero_free_left_scan, zero_free_left_scan_window, zero_free_right, ZeroFreeBounds, MIN_SCAN_SIGMA};

use crate::error::{Error, Result};
use crate::expr::FExpression;
use num_complex::Complex64;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Relative size under which `η_n` is treated as zero.
pub const ZERO_THRESHOLD_REL: f64 = 1e-12;
/// Largest truncation the automatic search for `n_F` will try.
const MAX_AUTO_N: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct DirichletCoefficients {
    /// `eta[n - 1] = η_n`
    eta: Vec<Complex64>,
    n_f: usize,
    zero_threshold: f64,
}

impl DirichletCoefficients {
    /// Truncation length `N`.
    pub fn len(&self) -> usize {
        self.eta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta.is_empty()
    }

    /// `η_n` for `1 ≤ n ≤ N`.
    pub fn eta(&self, n: usize) -> Complex64 {
        self.eta[n - 1]
    }

    pub fn etas(&self) -> &[Complex64] {
        &self.eta
    }

    pub fn leading_index(&self) -> usize {
        self.n_f
    }

    pub fn leading(&self) -> Complex64 {
        self.eta(self.n_f)
    }

    pub fn zero_threshold(&self) -> f64 {
        self.zero_threshold
    }

    pub fn is_zero(&self, n: usize) -> bool {
        self.eta(n).norm() <= self.zero_threshold
    }

    /// `B = max_n |η_n| / √n`, the constant in the empirical bound `|η_n| ≤ B √n`.
    pub fn growth_bound(&self) -> f64 {
        self.eta
            .iter()
            .enumerate()
            .map(|(i, e)| e.norm() / ((i + 1) as f64).sqrt())
            .fold(0.0, f64::max)
    }

    /// `B ∫_N^∞ x^{1/2-σ} dx`, bounding the omitted tail at real `σ > 3/2`.
    pub fn tail_bound(&self, sigma: f64) -> f64 {
        assert!(sigma > 1.5);
        let n = self.len() as f64;
        self.growth_bound() * n.powf(1.5 - sigma) / (sigma - 1.5)
    }

    /// `Σ_{n ≤ N} η_n n^{-s}`
    pub fn partial_sum(&self, s: Complex64) -> Complex64 {
        self.eta
            .iter()
            .enumerate()
            .rev()
            .map(|(i, e)| e * Complex64::new((i + 1) as f64, 0.0).powc(-s))
            .sum()
    }

    /// Rows `n,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im\n");
        for (i, e) in self.eta.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", i + 1, crate::export::fmt_f64(e.re), crate::export::fmt_f64(e.im));
        }
        out
    }
}

/// Dirichlet product of two sequences indexed from 1 (slot `i` holds `n = i + 1`).
fn dirichlet_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = vec![0.0; n];
    for i in 1..=n {
        let x = a[i - 1];
        if x == 0.0 {
            continue;
        }
        let mut j = 1;
        while i * j <= n {
            out[i * j - 1] += x * b[j - 1];
            j += 1;
        }
    }
    out
}

fn monomial_sequence(exponents: &[u32], n: usize) -> Vec<f64> {
    let mut acc = vec![0.0; n];
    acc[0] = 1.0;
    for (l, &d) in exponents.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let base: Vec<f64> = (1..=n).map(|m| (-(m as f64).ln()).powi(l as i32)).collect();
        for _ in 0..d {
            acc = dirichlet_mul(&acc, &base);
        }
    }
    acc
}

/// `η_1, …, η_N` and the leading index `n_F`.
pub fn coefficients(expr: &FExpression, n: usize) -> Result<DirichletCoefficients> {
    if n < 2 {
        return Err(Error::InvalidRequest("N must be at least 2".into()));
    }
    let parts: Vec<Vec<f64>> = expr
        .monomials()
        .par_iter()
        .map(|m| monomial_sequence(&m.exponents, n))
        .collect();
    // summed in monomial order so the result does not depend on scheduling
    let mut eta = vec![Complex64::new(0.0, 0.0); n];
    for (m, part) in expr.monomials().iter().zip(parts) {
        for (e, x) in eta.iter_mut().zip(part) {
            *e += m.coeff * x;
        }
    }
    let max = eta.iter().map(|e| e.norm()).fold(0.0, f64::max);
    let zero_threshold = ZERO_THRESHOLD_REL * max;
    let n_f = eta
        .iter()
        .position(|e| e.norm() > zero_threshold && max > 0.0)
        .map(|i| i + 1)
        .ok_or(Error::LeadingIndexNotFound(n))?;
    Ok(DirichletCoefficients { eta, n_f, zero_threshold })
}

/// Coefficients with `N ≥ max(min_n, factor·n_F)`, growing `N` until `n_F` shows up.
pub fn coefficients_covering(expr: &FExpression, min_n: usize, factor: usize) -> Result<DirichletCoefficients> {
    let mut n = min_n.max(2);
    loop {
        match coefficients(expr, n) {
            Ok(c) if c.len() >= factor * c.leading_index() => return Ok(c),
            Ok(c) => n = factor * c.leading_index(),
            Err(Error::LeadingIndexNotFound(_)) if n < MAX_AUTO_N => n *= 4,
            Err(e) => return Err(e),
        }
    }
}
