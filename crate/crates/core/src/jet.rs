//! Truncated Taylor series ("jets") with complex coefficients.
//!
//! A jet of order `K` stores `c_0..=c_K` with `f(s + ε) = Σ c_i ε^i + O(ε^{K+1})`,
//! so `c_i = f^{(i)}(s) / i!`. Arithmetic is exact up to truncation, which
//! gives analytic derivatives of every Euler–Maclaurin and Stirling term.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    c: Vec<Complex64>,
}

impl Jet {
    pub fn from_coeffs(c: Vec<Complex64>) -> Self {
        assert!(!c.is_empty(), "a jet needs at least one coefficient");
        Jet { c }
    }

    pub fn zero(order: usize) -> Self {
        Jet { c: vec![Complex64::new(0.0, 0.0); order + 1] }
    }

    pub fn constant(v: Complex64, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.c[0] = v;
        j
    }

    /// The identity jet `s + ε`.
    pub fn variable(s: Complex64, order: usize) -> Self {
        let mut j = Self::constant(s, order);
        if order >= 1 {
            j.c[1] = Complex64::new(1.0, 0.0);
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    /// `f^{(i)}(s)` recovered from the coefficient.
    pub fn derivative(&self, i: usize) -> Complex64 {
        self.c[i] * factorial(i)
    }

    pub fn derivatives(&self) -> Vec<Complex64> {
        (0..self.c.len()).map(|i| self.derivative(i)).collect()
    }

    pub fn scale(&self, k: Complex64) -> Jet {
        Jet { c: self.c.iter().map(|&x| x * k).collect() }
    }

    /// Substitute `ε → -ε`.
    pub fn reflect(&self) -> Jet {
        Jet {
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(i, &x)| if i % 2 == 1 { -x } else { x })
                .collect(),
        }
    }

    /// Multiply by the linear factor `(a + ε)`.
    pub fn mul_linear(&self, a: Complex64) -> Jet {
        let mut out = self.scale(a);
        for i in 1..self.c.len() {
            out.c[i] += self.c[i - 1];
        }
        out
    }

    pub fn recip(&self) -> Jet {
        let n = self.c.len();
        let inv0 = self.c[0].inv();
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = inv0;
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..=k {
                acc += self.c[i] * b[k - i];
            }
            b[k] = -acc * inv0;
        }
        Jet { c: b }
    }

    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..=k {
                acc += self.c[i] * e[k - i] * i as f64;
            }
            e[k] = acc / k as f64;
        }
        Jet { c: e }
    }

    /// Principal logarithm in the constant term.
    pub fn ln(&self) -> Jet {
        let n = self.c.len();
        let a0 = self.c[0];
        let mut l = vec![Complex64::new(0.0, 0.0); n];
        l[0] = a0.ln();
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..k {
                acc += l[i] * self.c[k - i] * i as f64;
            }
            l[k] = (self.c[k] - acc / k as f64) / a0;
        }
        Jet { c: l }
    }

    pub fn powi(&self, mut e: u32) -> Jet {
        let mut base = self.clone();
        let mut acc = Jet::constant(Complex64::new(1.0, 0.0), self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        debug_assert_eq!(self.c.len(), o.c.len());
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        debug_assert_eq!(self.c.len(), o.c.len());
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        debug_assert_eq!(self.c.len(), o.c.len());
        let n = self.c.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &a) in self.c.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in o.c[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Jet { c: out }
    }
}

pub fn factorial(i: usize) -> f64 {
    (1..=i).fold(1.0, |acc, k| acc * k as f64)
}
