//! Coefficients of `F'/F` on the lattice `n_F^{-m} ℕ`.
//!
//! With `G(s) = F(s) n_F^s / η_{n_F} = 1 + Σ_{r > 1} b(r) r^{-s}` (`r = n / n_F`),
//! `F'/F = -log n_F + G'/G` and `h = G'/G` obeys
//! `h(d) = -log(d) b(d) - Σ_{r > 1} b(r) h(d / r)`.
//! Every frequency `d ≤ X` is a product of at most `m_max` factors `r`, so it
//! is stored exactly as the integer `K = d · n_F^{m_max}`.

use super::{coefficients, coefficients_covering};
use crate::error::{Error, Result};
use crate::expr::FExpression;
use num_complex::Complex64;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

pub const MAX_LATTICE_X: f64 = 1000.0;
const MAX_LATTICE_POINTS: usize = 4_000_000;

/// A positive rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational {
    pub p: u128,
    pub q: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(p: u128, q: u128) -> Self {
        assert!(q != 0);
        let g = gcd(p, q).max(1);
        Rational { p: p / g, q: q / g }
    }

    pub fn to_f64(self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRequest(format!("not a positive rational: '{s}'"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: u128 = p.parse().map_err(|_| bad())?;
        let q: u128 = q.parse().map_err(|_| bad())?;
        if p == 0 || q == 0 {
            return Err(bad());
        }
        Ok(Rational::new(p, q))
    }
}

#[derive(Debug, Clone)]
pub struct LatticeSeries {
    x: f64,
    n_f: u128,
    m_max: u32,
    /// `n_F^{m_max}`
    denom: u128,
    /// keyed by `d · denom`; lattice points absent from the map have `α = 0`
    entries: BTreeMap<u128, Complex64>,
}

impl LatticeSeries {
    pub fn truncation(&self) -> f64 {
        self.x
    }

    pub fn leading_index(&self) -> u128 {
        self.n_f
    }

    /// Largest number of factors `r > 1` in any stored frequency.
    pub fn depth(&self) -> u32 {
        self.m_max
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn key(&self, d: Rational) -> Option<u128> {
        if self.denom % d.q != 0 {
            return None;
        }
        d.p.checked_mul(self.denom / d.q)
    }

    /// `α(d)`; zero off the lattice, `None` outside `[1, X]`.
    pub fn alpha(&self, d: Rational) -> Option<Complex64> {
        let v = d.to_f64();
        if v < 1.0 || v > self.x {
            return None;
        }
        Some(match self.key(d) {
            Some(k) => self.entries.get(&k).copied().unwrap_or_default(),
            None => Complex64::new(0.0, 0.0),
        })
    }

    /// `α(x)` for real `x`, matched to the nearest lattice point within 1e-12 relative.
    pub fn alpha_real(&self, x: f64) -> Option<Complex64> {
        if !(1.0..=self.x).contains(&x) {
            return None;
        }
        let k = (x * self.denom as f64).round();
        if ((k / self.denom as f64) - x).abs() > 1e-12 * x {
            return Some(Complex64::new(0.0, 0.0));
        }
        self.alpha(Rational::new(k as u128, self.denom))
    }

    /// Stored `(d, α(d))` in increasing `d`.
    pub fn entries(&self) -> impl Iterator<Item = (Rational, Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (Rational::new(k, self.denom), v))
    }

    /// `Σ_{d ≤ X} α(d) d^{-s}`
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        let ln_den = (self.denom as f64).ln();
        self.entries
            .iter()
            .rev()
            .map(|(&k, &v)| v * (-s * ((k as f64).ln() - ln_den)).exp())
            .sum()
    }

    /// Rows `d,re,im` with `d` written `p/q`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,re,im\n");
        for (d, a) in self.entries() {
            let _ = writeln!(out, "{d},{},{}", crate::export::fmt_f64(a.re), crate::export::fmt_f64(a.im));
        }
        out
    }
}

/// `α(d)` for all lattice points `1 ≤ d ≤ X`.
pub fn log_derivative_coefficients(expr: &FExpression, x: f64) -> Result<LatticeSeries> {
    if !(1.0..=MAX_LATTICE_X).contains(&x) {
        return Err(Error::InvalidRequest(format!("X must lie in [1, {MAX_LATTICE_X}]")));
    }
    let base = coefficients_covering(expr, 2, 1)?;
    let n_f = base.leading_index();
    let n_max = ((n_f as f64 * x).floor() as usize).max(2);
    let c = if n_max > base.len() { coefficients(expr, n_max)? } else { base };
    let lead = c.leading();

    let mut b_of: HashMap<u128, Complex64> = HashMap::new();
    let mut factors: Vec<(u128, Complex64)> = Vec::new();
    for n in n_f + 1..=n_max.min(c.len()) {
        if !c.is_zero(n) {
            let b = c.eta(n) / lead;
            factors.push((n as u128, b));
            b_of.insert(n as u128, b);
        }
    }
    let n_f = n_f as u128;
    let ln_nf = (n_f as f64).ln();

    let m_max = match factors.first() {
        Some(&(n, _)) => {
            let f_min = n as f64 / n_f as f64;
            (x.ln() / f_min.ln() + 1e-9).floor().max(0.0) as u32
        }
        None => 0,
    };
    let bits = m_max as f64 * (n_f as f64).log2() + x.log2() + (n_max as f64).log2() + 2.0;
    if bits >= 127.0 {
        return Err(Error::TruncationUnstable(format!(
            "lattice depth {m_max} with n_F = {n_f} exceeds exact integer range"
        )));
    }
    let denom = n_f.pow(m_max);
    let limit = {
        let xi = x.floor();
        xi as u128 * denom + ((x - xi) * denom as f64).floor() as u128
    };

    let mut points = BTreeSet::from([denom]);
    let mut frontier = vec![denom];
    while let Some(k) = frontier.pop() {
        for &(n, _) in &factors {
            let prod = k * n;
            if prod > limit * n_f {
                break;
            }
            if prod % n_f != 0 {
                return Err(Error::TruncationUnstable(format!("lattice point {k}/{denom} deeper than {m_max}")));
            }
            let k2 = prod / n_f;
            if points.insert(k2) {
                frontier.push(k2);
                if points.len() > MAX_LATTICE_POINTS {
                    return Err(Error::TruncationUnstable(format!(
                        "more than {MAX_LATTICE_POINTS} lattice points below X = {x}"
                    )));
                }
            }
        }
    }

    let mut h: HashMap<u128, Complex64> = HashMap::with_capacity(points.len());
    let mut entries = BTreeMap::new();
    entries.insert(denom, Complex64::new(-ln_nf, 0.0));
    for &k in points.iter().skip(1) {
        let ln_d = (k as f64).ln() - m_max as f64 * ln_nf;
        let kn = k * n_f;
        let mut acc = Complex64::new(0.0, 0.0);
        if kn % denom == 0 {
            if let Some(b) = b_of.get(&(kn / denom)) {
                acc -= b * ln_d;
            }
        }
        for &(n, b) in &factors {
            // r = n / n_F must stay below d so that d / r > 1
            if n * denom >= kn {
                break;
            }
            if kn % n == 0 {
                if let Some(v) = h.get(&(kn / n)) {
                    acc -= b * v;
                }
            }
        }
        h.insert(k, acc);
        entries.insert(k, acc);
    }
    Ok(LatticeSeries { x, n_f, m_max, denom, entries })
}
