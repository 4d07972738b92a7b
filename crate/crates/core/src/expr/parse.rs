//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expression := sign? term (('+' | '-') term)*
//! term       := coeff? ('*'? factor)*
//! factor     := 'z' INT ('^' INT)?
//! coeff      := decimal | '(' decimal ',' decimal ')'
//! ```
//!
//! Whitespace is allowed between tokens; `−` (U+2212) is accepted as minus.

use super::{FExpression, Monomial, MAX_VARIABLE};
use crate::error::{Error, Result};
use num_complex::Complex64;

pub const MAX_INPUT_BYTES: usize = 64 * 1024;
const MAX_EXPONENT: u32 = 1000;

pub fn parse_expression(text: &str) -> Result<FExpression> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(Error::Syntax { pos: MAX_INPUT_BYTES, msg: "input longer than 64 KiB".into() });
    }
    let mut p = Parser { chars: text.chars().map(|c| if c == '−' { '-' } else { c }).collect(), pos: 0 };
    let monomials = p.expression()?;
    FExpression::new(monomials)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expression(&mut self) -> Result<Vec<Monomial>> {
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let mut sign = 1.0;
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = -1.0;
            }
        }
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let mut m = self.term()?;
            m.coeff *= sign;
            out.push(m);
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some('+') => sign = 1.0,
                Some('-') => sign = -1.0,
                Some(c) => return self.err(format!("unexpected '{c}'")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Monomial> {
        let start = self.pos;
        let coeff = match self.peek() {
            Some('(') => Some(self.complex()?),
            Some(c) if c.is_ascii_digit() || c == '.' => Some(Complex64::new(self.decimal()?, 0.0)),
            _ => None,
        };
        let mut exponents: Vec<u32> = Vec::new();
        loop {
            self.skip_ws();
            let save = self.pos;
            let had_star = if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
                true
            } else {
                false
            };
            if self.peek() == Some('z') {
                let (l, d) = self.factor()?;
                if exponents.len() <= l {
                    exponents.resize(l + 1, 0);
                }
                exponents[l] = exponents[l].saturating_add(d);
                if exponents[l] > MAX_EXPONENT {
                    return self.err(format!("exponent above {MAX_EXPONENT}"));
                }
            } else if had_star {
                return self.err("expected a factor z<k> after '*'");
            } else {
                self.pos = save;
                break;
            }
        }
        if coeff.is_none() && exponents.is_empty() {
            self.pos = start;
            return self.err("expected a coefficient or a factor z<k>");
        }
        Ok(Monomial::new(coeff.unwrap_or(Complex64::new(1.0, 0.0)), exponents))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.pos += 1; // 'z'
        let at = self.pos;
        let l = self.integer()?;
        if l > MAX_VARIABLE as u64 {
            self.pos = at;
            return self.err(format!("derivative index {l} exceeds z{MAX_VARIABLE}"));
        }
        self.skip_ws();
        let mut d = 1u64;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            d = self.integer()?;
            if d > MAX_EXPONENT as u64 {
                self.pos = at;
                return self.err(format!("exponent above {MAX_EXPONENT}"));
            }
        }
        Ok((l as usize, d as u32))
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn decimal(&mut self) -> Result<f64> {
        let start = self.pos;
        if let Some('+' | '-') = self.peek() {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some('.') {
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.pos == digits_start || (self.pos == digits_start + 1 && self.chars[digits_start] == '.') {
            self.pos = start;
            return self.err("expected a number");
        }
        if let Some('e' | 'E') = self.peek() {
            let save = self.pos;
            self.pos += 1;
            if let Some('+' | '-') = self.peek() {
                self.pos += 1;
            }
            let exp_start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if exp_start == self.pos {
                self.pos = save;
            }
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                self.err(format!("invalid number '{s}'"))
            }
        }
    }

    fn complex(&mut self) -> Result<Complex64> {
        self.pos += 1; // '('
        self.skip_ws();
        let re = self.decimal()?;
        self.skip_ws();
        if self.peek() != Some(',') {
            return self.err("expected ',' in complex coefficient");
        }
        self.pos += 1;
        self.skip_ws();
        let im = self.decimal()?;
        self.skip_ws();
        if self.peek() != Some(')') {
            return self.err("expected ')'");
        }
        self.pos += 1;
        Ok(Complex64::new(re, im))
    }
}
