use super::bernoulli::bernoulli_2j;
use crate::error::{Error, Result};
use crate::jet::Jet;
use num_complex::Complex64;
use std::f64::consts::PI;

const STIRLING_TERMS: usize = 12;
const STIRLING_MIN_ABS: f64 = 20.0;

/// `ln Γ` of a jet argument whose constant term has positive real part.
///
/// The argument is shifted until `|z| >= 20` and the Stirling series is summed
/// there; the shift is undone with `Σ ln(z + i)`, which keeps the constant
/// term on the branch that is continuous from the positive real axis.
pub fn ln_gamma_jet(z: &Jet) -> Jet {
    let z0 = z.value();
    debug_assert!(z0.re > 0.0);
    let mut shift = 0usize;
    while (z0 + shift as f64).norm() < STIRLING_MIN_ABS {
        shift += 1;
    }
    let order = z.order();
    let mut zs = z.clone();
    let mut correction = Jet::zero(order);
    for _ in 0..shift {
        correction = &correction + &zs.ln();
        zs = &zs + &Jet::constant(Complex64::new(1.0, 0.0), order);
    }
    let half = Jet::constant(Complex64::new(0.5, 0.0), order);
    let half_ln_2pi = Jet::constant(Complex64::new(0.5 * (2.0 * PI).ln(), 0.0), order);
    let mut out = &(&(&(&zs - &half) * &zs.ln()) - &zs) + &half_ln_2pi;
    let r = zs.recip();
    let r2 = &r * &r;
    let mut p = r;
    for j in 1..=STIRLING_TERMS {
        let k = bernoulli_2j(j) / ((2 * j) as f64 * (2 * j - 1) as f64);
        out = &out + &p.scale(Complex64::new(k, 0.0));
        p = &p * &r2;
    }
    &out - &correction
}

/// `ln sin(πz)` without overflow for large `|Im z|`.
pub(crate) fn ln_sin_pi(z: Complex64) -> Option<Complex64> {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).map(|v| v.conj());
    }
    // sin(πz) = e^{-iπz} (e^{2iπz} - 1) / (2i), with |e^{2iπz}| <= 1 here.
    let w = Complex64::new(0.0, 2.0 * PI) * z;
    let m1 = expm1(w);
    if m1 == Complex64::new(0.0, 0.0) {
        return None;
    }
    Some(-Complex64::new(0.0, PI) * z + (m1 / Complex64::new(0.0, 2.0)).ln())
}

fn expm1(w: Complex64) -> Complex64 {
    let (sb, cb) = w.im.sin_cos();
    let ea = w.re.exp();
    let half = (w.im / 2.0).sin();
    Complex64::new(w.re.exp_m1() * cb - 2.0 * half * half, ea * sb)
}

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// A logarithm of `Γ(s)`; the imaginary part is only defined modulo 2π
/// when the reflection formula is used (`Re s < 1/2`).
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::PoleAtNonPositiveInteger(s.re));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::InvalidRequest(format!("non-finite argument {s}")));
    }
    if s.re < 0.5 {
        let lsin = ln_sin_pi(s).ok_or(Error::PoleAtNonPositiveInteger(s.re))?;
        let other = ln_gamma_jet(&Jet::constant(Complex64::new(1.0, 0.0) - s, 0)).value();
        return Ok(Complex64::new(PI.ln(), 0.0) - lsin - other);
    }
    Ok(ln_gamma_jet(&Jet::constant(s, 0)).value())
}

/// `Γ(s)`, accurate to about 1e-13 relative for `|s| <= 200`.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    let v = ln_gamma(s)?.exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(s))
    }
}
