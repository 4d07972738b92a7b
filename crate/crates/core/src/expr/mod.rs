//! Polynomials in `ζ(s), ζ'(s), …, ζ^(k)(s)`.
//!
//! `F(s) = Σ_j c_j Π_l ζ^(l)(s)^{d_lj}` is stored as a list of [`Monomial`]s in
//! first-appearance order, with like terms merged and vanishing terms dropped.

mod parse;

pub use parse::parse_expression;

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Largest derivative index `zK` accepted by the parser.
pub const MAX_VARIABLE: usize = crate::zeta::MAX_DERIVATIVE;

/// Relative size below which a merged coefficient counts as cancelled.
const MERGE_CANCEL_REL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: Complex64,
    /// `d_0, …, d_k`, trailing zeros trimmed.
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(coeff: Complex64, mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial { coeff, exponents }
    }

    /// `Σ_l d_l`
    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// `Σ_l l·d_l`
    pub fn weighted_degree(&self) -> u32 {
        self.exponents.iter().enumerate().map(|(l, &d)| l as u32 * d).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FExpression {
    monomials: Vec<Monomial>,
    k: usize,
}

impl FExpression {
    /// Canonicalize: trim exponents, merge like monomials into their first
    /// occurrence, drop vanishing coefficients.
    pub fn new(monomials: Vec<Monomial>) -> Result<Self> {
        let mut merged: Vec<(Monomial, f64)> = Vec::new();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        for m in monomials {
            let m = Monomial::new(m.coeff, m.exponents);
            match index.get(&m.exponents) {
                Some(&i) => {
                    merged[i].0.coeff += m.coeff;
                    merged[i].1 = merged[i].1.max(m.coeff.norm());
                }
                None => {
                    index.insert(m.exponents.clone(), merged.len());
                    let size = m.coeff.norm();
                    merged.push((m, size));
                }
            }
        }
        let monomials: Vec<Monomial> = merged
            .into_iter()
            .filter(|(m, size)| m.coeff.norm() > MERGE_CANCEL_REL * size)
            .map(|(m, _)| m)
            .collect();
        if monomials.iter().all(Monomial::is_constant) {
            return Err(Error::ConstantExpression);
        }
        let k = monomials.iter().map(|m| m.exponents.len().saturating_sub(1)).max().unwrap_or(0);
        if k > crate::zeta::MAX_ORDER - 1 {
            return Err(Error::InvalidRequest(format!("derivative order {k} too high")));
        }
        Ok(FExpression { monomials, k })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Highest derivative order present.
    pub fn max_order(&self) -> usize {
        self.k
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.monomials.iter().map(|m| m.coeff.norm()).fold(0.0, f64::max)
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.monomials.iter().all(|m| m.coeff.im == 0.0)
    }

    pub fn scaled(&self, c: Complex64) -> Result<Self> {
        FExpression::new(
            self.monomials
                .iter()
                .map(|m| Monomial::new(m.coeff * c, m.exponents.clone()))
                .collect(),
        )
    }

    pub fn degrees(&self) -> DegreeReport {
        let deg1 = self.monomials.iter().map(Monomial::total_degree).max().unwrap_or(0);
        let deg2 = self
            .monomials
            .iter()
            .filter(|m| m.total_degree() == deg1)
            .map(Monomial::weighted_degree)
            .max()
            .unwrap_or(0);
        let j: Vec<usize> = self
            .monomials
            .iter()
            .enumerate()
            .filter(|(_, m)| m.total_degree() == deg1 && m.weighted_degree() == deg2)
            .map(|(i, _)| i)
            .collect();
        let sum_j = j.iter().map(|&i| self.monomials[i].coeff).sum::<Complex64>();
        let condition_tolerance = 1e-12 * self.max_coeff_abs();
        DegreeReport {
            deg1,
            deg2,
            condition_holds: sum_j.norm() > condition_tolerance,
            j,
            sum_j,
            condition_tolerance,
        }
    }

    /// Symbolic `F'` by the product rule, `ζ^(l) ↦ ζ^(l+1)`.
    pub fn differentiate(&self) -> FExpression {
        let mut out = Vec::new();
        for m in &self.monomials {
            for (l, &d) in m.exponents.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let mut e = m.exponents.clone();
                e[l] -= 1;
                if e.len() == l + 1 {
                    e.push(0);
                }
                e[l + 1] += 1;
                out.push(Monomial::new(m.coeff * d as f64, e));
            }
        }
        // ζ is not differentially algebraic, so F' of a non-constant F is
        // never constant; the merge cannot empty the list.
        FExpression::new(out).expect("derivative of a non-constant expression")
    }
}

impl FromStr for FExpression {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expression(s)
    }
}

impl TryFrom<String> for FExpression {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        parse_expression(&s)
    }
}

impl From<FExpression> for String {
    fn from(e: FExpression) -> String {
        e.to_string()
    }
}

impl fmt::Display for FExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.monomials.iter().enumerate() {
            let c = m.coeff;
            let has_factors = !m.is_constant();
            if c.im == 0.0 {
                let neg = c.re < 0.0;
                match (i, neg) {
                    (0, true) => write!(f, "-")?,
                    (0, false) => {}
                    (_, true) => write!(f, " - ")?,
                    (_, false) => write!(f, " + ")?,
                }
                let a = c.re.abs();
                if a != 1.0 || !has_factors {
                    write!(f, "{a}")?;
                    if has_factors {
                        write!(f, "*")?;
                    }
                }
            } else {
                if i > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "({},{})", c.re, c.im)?;
                if has_factors {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (l, &d) in m.exponents.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if d == 1 {
                    write!(f, "z{l}")?;
                } else {
                    write!(f, "z{l}^{d}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeReport {
    pub deg1: u32,
    pub deg2: u32,
    /// Indices of monomials attaining both `deg1` and `deg2`.
    pub j: Vec<usize>,
    pub sum_j: Complex64,
    pub condition_tolerance: f64,
    pub condition_holds: bool,
}

impl DegreeReport {
    /// Exponent vectors of the `J` monomials, independent of term order.
    pub fn j_exponents(&self, expr: &FExpression) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = self.j.iter().map(|&i| expr.monomials[i].exponents.clone()).collect();
        v.sort();
        v
    }

    pub fn require_condition(&self) -> Result<()> {
        if self.condition_holds {
            Ok(())
        } else {
            Err(Error::ConditionViolated(self.sum_j.norm()))
        }
    }
}
