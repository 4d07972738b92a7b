//! Evaluation of `ζ^(k)(s)`, `Γ(s)` and `χ(s)` with explicit error bounds.
//!
//! Right of `Re s = -5` the engine sums the Euler–Maclaurin formula with 30
//! Bernoulli corrections, carrying every term as a Taylor jet so that all
//! derivatives come out analytically. Left of it, `ζ(s) = χ(s) ζ(1 - s)` is
//! applied with `χ` expanded through a Stirling jet for `ln Γ`. Results on
//! that side are returned with a real log-scale so that very large values can
//! still be compared in ratio form.

mod bernoulli;
mod gamma;

pub use gamma::{gamma, ln_gamma, ln_gamma_jet};

use crate::dd::{ln_table, reduced_phase, LN_TABLE_LEN};
use crate::error::{Error, Result};
use crate::jet::{factorial, Jet};
use bernoulli::bernoulli_2j_over_factorial;
use gamma::ln_sin_pi;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Highest derivative order accepted in an [`EvalRequest`].
pub const MAX_DERIVATIVE: usize = 20;
/// Highest jet order the engine builds (`F'` of a `z20` expression needs 21).
pub const MAX_ORDER: usize = 24;
/// Largest `|Im s|` the method is validated for.
pub const MAX_HEIGHT: f64 = 1.0e5;
/// Smallest accepted absolute error target.
pub const MIN_TARGET: f64 = 1.0e-13;
/// Left of this abscissa the functional equation is always used.
pub const REFLECTION_ABSCISSA: f64 = -5.0;
/// Below this height the functional equation is used for all `Re s < 0`;
/// direct summation there cancels `N^{1-σ}`-sized terms down to a tiny value.
const LOW_HEIGHT_REFLECTION: f64 = 30.0;

const EM_TERMS: usize = 30;
const CAUCHY_RADIUS: f64 = 0.5;
const EPS: f64 = f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRequest {
    pub s: Complex64,
    pub k: usize,
    pub target_abs_err: f64,
}

impl EvalRequest {
    pub fn new(s: Complex64, k: usize, target_abs_err: f64) -> Self {
        EvalRequest { s, k, target_abs_err }
    }

    fn validate(&self) -> Result<()> {
        if self.k > MAX_DERIVATIVE {
            return Err(Error::InvalidRequest(format!(
                "derivative order {} exceeds {MAX_DERIVATIVE}",
                self.k
            )));
        }
        if !(self.target_abs_err >= MIN_TARGET) {
            return Err(Error::InvalidRequest(format!(
                "target_abs_err must be >= {MIN_TARGET:e}"
            )));
        }
        Ok(())
    }
}

/// Taylor expansion `ζ(s + ε) = e^{log_scale} Σ coeffs[i] ε^i`.
#[derive(Debug, Clone)]
pub struct ZetaTaylor {
    pub s: Complex64,
    pub log_scale: f64,
    pub coeffs: Vec<Complex64>,
    /// Absolute error bound on each scaled coefficient.
    pub coeff_err: Vec<f64>,
    /// Euler–Maclaurin cut-off `N` used (for `1 - s` on the reflected side).
    pub terms: usize,
}

impl ZetaTaylor {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `ζ^{(i)}(s) / e^{log_scale}`.
    pub fn scaled_derivative(&self, i: usize) -> Complex64 {
        self.coeffs[i] * factorial(i)
    }

    pub fn scaled_derivatives(&self) -> Vec<Complex64> {
        (0..self.coeffs.len()).map(|i| self.scaled_derivative(i)).collect()
    }

    pub fn derivative(&self, i: usize) -> Result<Complex64> {
        let v = self.scaled_derivative(i) * self.log_scale.exp();
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(self.s))
        }
    }

    pub fn derivatives(&self) -> Result<Vec<Complex64>> {
        (0..self.coeffs.len()).map(|i| self.derivative(i)).collect()
    }

    /// Absolute error bound on `ζ^{(i)}(s)`.
    pub fn derivative_error(&self, i: usize) -> f64 {
        self.coeff_err[i] * factorial(i) * self.log_scale.exp()
    }
}

fn check_point(s: Complex64, order: usize) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::InvalidRequest(format!("non-finite argument {s}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAt1);
    }
    if s.im.abs() > MAX_HEIGHT {
        return Err(Error::RangeExceeded(s.im.abs()));
    }
    if order > MAX_ORDER {
        return Err(Error::InvalidRequest(format!("jet order {order} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

fn use_reflection(s: Complex64) -> bool {
    s.re < REFLECTION_ABSCISSA || (s.re < 0.0 && s.im.abs() < LOW_HEIGHT_REFLECTION)
}

/// Taylor jet of ζ about `s` up to `order`, with default accuracy settings.
pub fn zeta_taylor(s: Complex64, order: usize) -> Result<ZetaTaylor> {
    check_point(s, order)?;
    if use_reflection(s) {
        reflected(s, order)
    } else {
        euler_maclaurin(s, order, None)
    }
}

/// `ζ^{(k)}(s)` to within `target_abs_err`.
pub fn zeta_derivative(req: &EvalRequest) -> Result<Complex64> {
    req.validate()?;
    check_point(req.s, req.k)?;
    let tay = if use_reflection(req.s) {
        reflected(req.s, req.k)?
    } else {
        euler_maclaurin(req.s, req.k, Some(req.target_abs_err))?
    };
    let err = tay.derivative_error(req.k);
    if err > req.target_abs_err {
        return Err(Error::PrecisionUnreachable { target: req.target_abs_err, achieved: err });
    }
    tay.derivative(req.k)
}

/// `ζ(s)` with the engine's default accuracy.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    zeta_taylor(s, 0)?.derivative(0)
}

/// Natural log of the Euler–Maclaurin remainder bound for the jet about `s`
/// evaluated on the circle `|z - s| = r` (Cauchy estimate for derivatives).
fn log_remainder_bound(s: Complex64, n: usize, r: f64) -> f64 {
    let m = EM_TERMS;
    let b = bernoulli_2j_over_factorial(m + 1).abs().ln();
    let prod: f64 = (0..=2 * m).map(|i| ((s + i as f64).norm() + r).ln()).sum();
    let sig = s.re - r + (2 * m + 1) as f64;
    b + prod - sig * (n as f64).ln() + (s.norm() + (2 * m + 1) as f64 + r).ln() - sig.ln()
}

/// `n^{-s}` using the double-double logarithm table.
#[inline]
fn pow_neg(n: usize, s: Complex64) -> Complex64 {
    let l = ln_table()[n];
    let mag = (-s.re * l.hi).exp() * (1.0 - s.re * l.lo);
    let phase = reduced_phase(s.im, l);
    let (sn, cs) = phase.sin_cos();
    Complex64::new(mag * cs, -mag * sn)
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Default)]
struct Accum {
    sum: Complex64,
    comp: Complex64,
}

impl Accum {
    #[inline]
    fn add(&mut self, x: Complex64) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.comp.im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

#[inline]
fn neumaier(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

fn euler_maclaurin(s: Complex64, order: usize, target: Option<f64>) -> Result<ZetaTaylor> {
    let k = order;
    // Rough size of Σ|n^{-s}| to turn the target into a remainder tolerance.
    let start = 16usize.max((0.45 * s.im.abs()).ceil() as usize);
    let abs_scale = |n: usize| {
        let nf = n as f64;
        if (s.re - 1.0).abs() < 1e-9 {
            1.0 + nf.ln()
        } else {
            1.0 + (nf.powf(1.0 - s.re) - 1.0) / (1.0 - s.re)
        }
    };
    let mut n = start;
    loop {
        let tol = match target {
            Some(t) => 0.25 * t,
            None => 1e-3 * EPS * abs_scale(n).max(1.0),
        };
        let lb = log_remainder_bound(s, n, CAUCHY_RADIUS);
        let worst = lb - (k as f64) * CAUCHY_RADIUS.ln();
        if worst <= tol.ln() {
            break;
        }
        n = (n as f64 * 1.25).ceil() as usize + 1;
        if n >= LN_TABLE_LEN {
            return Err(Error::PrecisionUnreachable {
                target: target.unwrap_or(0.0),
                achieved: worst.exp(),
            });
        }
    }

    let mut acc = vec![Accum::default(); k + 1];
    let mut abs = vec![0.0f64; k + 1];
    let table = ln_table();
    for m in 1..n {
        let ln_m = table[m].hi;
        let mut p = pow_neg(m, s);
        for i in 0..=k {
            acc[i].add(p);
            abs[i] += p.norm();
            p *= -ln_m / (i + 1) as f64;
        }
    }
    let mut coeffs: Vec<Complex64> = acc.iter().map(Accum::total).collect();

    let ln_n = table[n].hi;
    let n_pow = pow_neg(n, s); // N^{-s}
    let nf = n as f64;
    // N^{-s-ε} as a jet
    let mut base = vec![n_pow; k + 1];
    for i in 1..=k {
        base[i] = base[i - 1] * (-ln_n / i as f64);
    }
    let base = Jet::from_coeffs(base);

    // N^{1-s-ε} / (s - 1 + ε)
    let u = s - 1.0;
    let inv_u: Vec<Complex64> = {
        let mut v = Vec::with_capacity(k + 1);
        let mut p = u.inv();
        for _ in 0..=k {
            v.push(p);
            p = -p / u;
        }
        v
    };
    let pole = &base.scale(Complex64::new(nf, 0.0)) * &Jet::from_coeffs(inv_u);
    let half = base.scale(Complex64::new(0.5, 0.0));

    let mut poly = Jet::variable(s, k);
    let mut corr = Jet::zero(k);
    let mut npow = 1.0 / nf; // N^{1-2j}
    for j in 1..=EM_TERMS {
        let coef = bernoulli_2j_over_factorial(j) * npow;
        corr = &corr + &(&poly * &base).scale(Complex64::new(coef, 0.0));
        poly = poly
            .mul_linear(s + (2 * j - 1) as f64)
            .mul_linear(s + (2 * j) as f64);
        npow /= nf * nf;
    }

    let mut tail_abs = vec![0.0; k + 1];
    for i in 0..=k {
        coeffs[i] += pole.coeffs()[i] + half.coeffs()[i] + corr.coeffs()[i];
        tail_abs[i] = pole.coeffs()[i].norm() + half.coeffs()[i].norm() + corr.coeffs()[i].norm();
    }

    let lb = log_remainder_bound(s, n, CAUCHY_RADIUS);
    let coeff_err = (0..=k)
        .map(|i| {
            let remainder = (lb - i as f64 * CAUCHY_RADIUS.ln()).exp();
            let rounding = 8.0 * EPS * (abs[i] + tail_abs[i]) * (1.0 + i as f64);
            remainder + rounding
        })
        .collect();
    Ok(ZetaTaylor { s, log_scale: 0.0, coeffs, coeff_err, terms: n })
}

/// `sin(z) e^{-|Im z|}`
fn sin_scaled(z: Complex64) -> Complex64 {
    let y = z.im;
    let e = (-2.0 * y.abs()).exp();
    let (sx, cx) = z.re.sin_cos();
    Complex64::new(sx * (1.0 + e) / 2.0, cx * y.signum() * (1.0 - e) / 2.0)
}

/// ζ(s+ε) = χ(s+ε) ζ(1-s-ε) for Re s < -5.
fn reflected(s: Complex64, order: usize) -> Result<ZetaTaylor> {
    let k = order;
    let w = Complex64::new(1.0, 0.0) - s;
    let z = euler_maclaurin(w, k, None)?;
    let z_jet = Jet::from_coeffs(z.coeffs.clone()).reflect();

    // ln of 2^{s+ε} π^{s-1+ε} Γ(1-s-ε)
    let arg = Jet::variable(w, k).reflect();
    let mut lg = ln_gamma_jet(&arg);
    let lin = {
        let mut c = vec![Complex64::new(0.0, 0.0); k + 1];
        c[0] = s * 2f64.ln() + (s - 1.0) * PI.ln();
        if k >= 1 {
            c[1] = Complex64::new(2f64.ln() + PI.ln(), 0.0);
        }
        Jet::from_coeffs(c)
    };
    lg = &lg + &lin;
    let l0 = lg.value();
    let mut shifted = lg.coeffs().to_vec();
    shifted[0] = Complex64::new(0.0, l0.im);
    let e = Jet::from_coeffs(shifted).exp();

    // sin(π(s+ε)/2) scaled by e^{-|Im πs/2|}
    let z0 = s * (PI / 2.0);
    let sin_coeffs: Vec<Complex64> = (0..=k)
        .map(|i| sin_scaled(z0 + i as f64 * PI / 2.0) * ((PI / 2.0).powi(i as i32) / factorial(i)))
        .collect();
    let sin_jet = Jet::from_coeffs(sin_coeffs);

    let chi = &e * &sin_jet;
    let mantissa = &chi * &z_jet;
    let log_scale = l0.re + z0.im.abs();

    // relative rounding from the size of the logarithms involved
    let rel = 32.0 * EPS * (1.0 + l0.norm() + z0.im.abs());
    let coeff_err = (0..=k)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let c = chi.coeffs()[j].norm();
                    c * (z.coeff_err[i - j] + rel * z_jet.coeffs()[i - j].norm())
                })
                .sum::<f64>()
        })
        .collect();
    Ok(ZetaTaylor { s, log_scale, coeffs: mantissa.coeffs().to_vec(), coeff_err, terms: z.terms })
}

/// `χ(s)` from `ζ(s) = χ(s) ζ(1 - s)`.
pub fn chi(s: Complex64) -> Result<Complex64> {
    ln_chi(s).map(|v| match v {
        Some(l) => l.exp(),
        None => Complex64::new(0.0, 0.0),
    })
}

/// `ln χ(s)`, or `None` where `χ` vanishes (non-positive even integers).
pub fn ln_chi(s: Complex64) -> Result<Option<Complex64>> {
    let is_int = s.im == 0.0 && s.re.fract() == 0.0;
    if is_int && s.re >= 1.0 && (s.re as i64) % 2 == 1 {
        return Err(Error::PoleHit(s.re));
    }
    if is_int && s.re <= 0.0 && (s.re as i64) % 2 == 0 {
        return Ok(None);
    }
    let ln2 = 2f64.ln();
    let lnpi = PI.ln();
    if s.re >= 0.5 {
        // χ(s) = (2π)^s / (2 cos(πs/2) Γ(s))
        let lcos = ln_sin_pi((s + 1.0) / 2.0).ok_or(Error::PoleHit(s.re))?;
        Ok(Some(s * (ln2 + lnpi) - ln2 - lcos - ln_gamma(s)?))
    } else {
        let lsin = ln_sin_pi(s / 2.0).ok_or(Error::PoleHit(s.re))?;
        let one_minus = Complex64::new(1.0, 0.0) - s;
        Ok(Some(s * ln2 + (s - 1.0) * lnpi + lsin + ln_gamma(one_minus)?))
    }
}
