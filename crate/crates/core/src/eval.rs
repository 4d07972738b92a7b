//! Evaluation of `F(s)` and `F'(s)` from one zeta jet.

use crate::error::{Error, Result};
use crate::expr::{DegreeReport, FExpression, Monomial};
use crate::zeta::{zeta_taylor, ZetaTaylor};
use num_complex::Complex64;

/// Multiplier applied to the first-order error propagation.
pub const SAFETY: f64 = 2.0;

const EPS: f64 = f64::EPSILON;

/// `F`, `F'` and the size of the largest contributions at one point, all
/// divided by `e^{log_scale}`.
#[derive(Debug, Clone, Copy)]
pub struct FPoint {
    pub s: Complex64,
    pub value: Complex64,
    pub derivative: Complex64,
    /// `Σ_j |c_j| Π_l |ζ^(l)(s)|^{d_lj}`, the natural scale for `|F|`.
    pub scale: f64,
    pub log_scale: f64,
}

impl FPoint {
    /// `F'/F`
    pub fn log_derivative(&self) -> Complex64 {
        self.derivative / self.value
    }
}

fn monomial_value(m: &Monomial, z: &[Complex64]) -> Complex64 {
    m.exponents
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .fold(m.coeff, |acc, (l, &d)| acc * z[l].powi(d as i32))
}

/// Derivative of one monomial by the product rule; `z` must reach index `k + 1`.
fn monomial_derivative(m: &Monomial, z: &[Complex64]) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (l, &d) in m.exponents.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let mut term = m.coeff * d as f64 * z[l].powi(d as i32 - 1) * z[l + 1];
        for (q, &e) in m.exponents.iter().enumerate() {
            if q != l && e > 0 {
                term *= z[q].powi(e as i32);
            }
        }
        total += term;
    }
    total
}

fn values(tay: &ZetaTaylor) -> Result<Vec<Complex64>> {
    tay.derivatives()
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `F(s)` and `F'(s)` in scaled form; finite wherever the zeta jet is.
pub fn eval_point_scaled(expr: &FExpression, s: Complex64) -> Result<FPoint> {
    let tay = zeta_taylor(s, expr.max_order() + 1)?;
    let z = tay.scaled_derivatives();
    let l = tay.log_scale;
    let deg1 = expr.monomials().iter().map(Monomial::total_degree).max().unwrap_or(0) as i32;
    let mut value = Complex64::new(0.0, 0.0);
    let mut derivative = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for m in expr.monomials() {
        let w = if l == 0.0 { 1.0 } else { ((m.total_degree() as i32 - deg1) as f64 * l).exp() };
        value += monomial_value(m, &z) * w;
        derivative += monomial_derivative(m, &z) * w;
        scale += w * m
            .exponents
            .iter()
            .enumerate()
            .fold(m.coeff.norm(), |acc, (l, &d)| acc * z[l].norm().powi(d as i32));
    }
    if !(finite(value) && finite(derivative)) {
        return Err(Error::Overflow(s));
    }
    Ok(FPoint { s, value, derivative, scale, log_scale: deg1 as f64 * l })
}

/// `F(s)` and `F'(s)` together, for Newton steps and residuals.
pub fn eval_point(expr: &FExpression, s: Complex64) -> Result<FPoint> {
    let p = eval_point_scaled(expr, s)?;
    if p.log_scale == 0.0 {
        return Ok(p);
    }
    let f = p.log_scale.exp();
    let out = FPoint {
        s,
        value: p.value * f,
        derivative: p.derivative * f,
        scale: p.scale * f,
        log_scale: 0.0,
    };
    if !(finite(out.value) && finite(out.derivative) && out.scale.is_finite()) {
        return Err(Error::Overflow(s));
    }
    Ok(out)
}

/// Value of `F` and its propagated absolute error bound.
pub fn evaluate_with_error(expr: &FExpression, s: Complex64) -> Result<(Complex64, f64)> {
    let tay = zeta_taylor(s, expr.max_order())?;
    let z = values(&tay)?;
    let dz: Vec<f64> = (0..z.len()).map(|i| tay.derivative_error(i)).collect();
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for m in expr.monomials() {
        value += monomial_value(m, &z);
        let abs: Vec<f64> = z.iter().map(|v| v.norm()).collect();
        let size = m
            .exponents
            .iter()
            .enumerate()
            .fold(m.coeff.norm(), |acc, (l, &d)| acc * abs[l].powi(d as i32));
        // first-order product rule on |c| Π |ζ_l|^{d_l}
        let mut prop = 0.0;
        for (l, &d) in m.exponents.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let mut term = m.coeff.norm() * d as f64 * abs[l].powi(d as i32 - 1) * dz[l];
            for (q, &e) in m.exponents.iter().enumerate() {
                if q != l {
                    term *= abs[q].powi(e as i32);
                }
            }
            prop += term;
        }
        err += prop + EPS * (m.total_degree() as f64 + 2.0) * size;
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow(s));
    }
    Ok((value, SAFETY * err))
}

/// `F(s)` within `target_abs_err`.
pub fn evaluate_f(expr: &FExpression, s: Complex64, target_abs_err: f64) -> Result<Complex64> {
    if !(target_abs_err > 0.0) {
        return Err(Error::InvalidRequest("target_abs_err must be positive".into()));
    }
    let (v, err) = evaluate_with_error(expr, s)?;
    if err > target_abs_err {
        return Err(Error::PrecisionUnreachable { target: target_abs_err, achieved: err });
    }
    Ok(v)
}

/// `F'(s)` within `target_abs_err`, through the symbolic derivative.
pub fn evaluate_f_derivative(expr: &FExpression, s: Complex64, target_abs_err: f64) -> Result<Complex64> {
    evaluate_f(&expr.differentiate(), s, target_abs_err)
}

/// `F` and its leading asymptotic term, both divided by `e^{deg1·L}` where
/// `ζ(s) = e^L · (mantissa)`. Stays finite far to the left where `F` overflows.
#[derive(Debug, Clone, Copy)]
pub struct ScaledPoint {
    pub log_scale: f64,
    pub f: Complex64,
    /// `Σ_J c_j · (-log(1 - s))^{deg2} · ζ(s)^{deg1}`, same scaling.
    pub leading: Complex64,
}

pub fn eval_scaled(expr: &FExpression, degrees: &DegreeReport, s: Complex64) -> Result<ScaledPoint> {
    let tay = zeta_taylor(s, expr.max_order())?;
    let m = tay.scaled_derivatives();
    let l = tay.log_scale;
    let deg1 = degrees.deg1 as i32;
    let mut f = Complex64::new(0.0, 0.0);
    for mono in expr.monomials() {
        let shift = (mono.total_degree() as i32 - deg1) as f64 * l;
        f += monomial_value(mono, &m) * shift.exp();
    }
    let log_factor = -(Complex64::new(1.0, 0.0) - s).ln();
    let leading = degrees.sum_j * log_factor.powi(degrees.deg2 as i32) * m[0].powi(deg1);
    Ok(ScaledPoint { log_scale: deg1 as f64 * l, f, leading })
}
