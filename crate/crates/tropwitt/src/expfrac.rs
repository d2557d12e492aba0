//! Text and JSON forms of exponential sums and fractions.
//!
//! ```text
//! term     := FLOAT "*exp(-" FLOAT "/T)" | FLOAT
//! sum      := term (("+" | "-") term)*
//! fraction := sum ["/" "(" sum ")"]
//! ```

use serde::{Deserialize, Serialize};
use tropwitt_core::run_repr::{ExpFraction, ExpSum, RunError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("expected {expected} at byte {at} in {src:?}")]
    Expected { expected: &'static str, at: usize, src: String },
    #[error(transparent)]
    Run(#[from] RunError),
}

struct Cursor<'a> {
    s: &'a str,
    i: usize,
}

impl<'a> Cursor<'a> {
    fn ws(&mut self) {
        while self.s[self.i..].starts_with(char::is_whitespace) {
            self.i += self.s[self.i..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn fail<T>(&self, expected: &'static str) -> Result<T, ParseError> {
        Err(ParseError::Expected { expected, at: self.i, src: self.s.into() })
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(lit) {
            self.i += lit.len();
            true
        } else {
            false
        }
    }

    fn float(&mut self) -> Result<f64, ParseError> {
        self.ws();
        let b = self.s.as_bytes();
        let start = self.i;
        let mut j = self.i;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        let digits = |j: &mut usize| {
            let s = *j;
            while *j < b.len() && b[*j].is_ascii_digit() {
                *j += 1;
            }
            *j > s
        };
        let mut any = digits(&mut j);
        if j < b.len() && b[j] == b'.' {
            j += 1;
            any |= digits(&mut j);
        }
        if !any {
            return self.fail("a number");
        }
        if j < b.len() && (b[j] == b'e' || b[j] == b'E') {
            let mut k = j + 1;
            if k < b.len() && (b[k] == b'+' || b[k] == b'-') {
                k += 1;
            }
            if digits(&mut k) {
                j = k;
            }
        }
        match self.s[start..j].parse() {
            Ok(v) => {
                self.i = j;
                Ok(v)
            }
            Err(_) => self.fail("a number"),
        }
    }

    fn term(&mut self) -> Result<(f64, f64), ParseError> {
        let a = self.float()?;
        if !self.eat("*") {
            return Ok((0.0, a));
        }
        if !self.eat("exp(-") {
            return self.fail("\"exp(-\"");
        }
        let xi = self.float()?;
        if !self.eat("/T)") {
            return self.fail("\"/T)\"");
        }
        Ok((xi, a))
    }

    fn sum(&mut self) -> Result<ExpSum, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            let sign = if self.eat("+") {
                1.0
            } else if self.eat("-") {
                -1.0
            } else {
                break;
            };
            let (xi, a) = self.term()?;
            terms.push((xi, sign * a));
        }
        Ok(ExpSum::from_terms(terms)?)
    }

    fn done(&mut self) -> bool {
        self.ws();
        self.i == self.s.len()
    }
}

pub fn parse_sum(src: &str) -> Result<ExpSum, ParseError> {
    let mut c = Cursor { s: src, i: 0 };
    let s = c.sum()?;
    if !c.done() {
        return c.fail("end of input");
    }
    Ok(s)
}

pub fn parse_fraction(src: &str) -> Result<ExpFraction, ParseError> {
    let mut c = Cursor { s: src, i: 0 };
    let num = c.sum()?;
    let den = if c.eat("/") {
        if !c.eat("(") {
            return c.fail("'('");
        }
        let d = c.sum()?;
        if !c.eat(")") {
            return c.fail("')'");
        }
        d
    } else {
        ExpSum::constant(1.0)
    };
    if !c.done() {
        return c.fail("end of input");
    }
    Ok(ExpFraction::new(num, den)?)
}

pub fn format_fraction(f: &ExpFraction) -> String {
    if f.den().terms() == [(0.0, 1.0)] {
        f.num().to_string()
    } else {
        format!("{} / ({})", f.num(), f.den())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub xi: f64,
    pub a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionJson {
    pub num: SumJson,
    pub den: SumJson,
}

impl From<&ExpSum> for SumJson {
    fn from(s: &ExpSum) -> Self {
        Self { terms: s.terms().iter().map(|&(xi, a)| TermJson { xi, a }).collect() }
    }
}

impl From<&ExpFraction> for FractionJson {
    fn from(f: &ExpFraction) -> Self {
        Self { num: f.num().into(), den: f.den().into() }
    }
}

impl SumJson {
    pub fn to_sum(&self) -> Result<ExpSum, RunError> {
        ExpSum::from_terms(self.terms.iter().map(|t| (t.xi, t.a)))
    }
}

impl FractionJson {
    pub fn to_fraction(&self) -> Result<ExpFraction, RunError> {
        ExpFraction::new(self.num.to_sum()?, self.den.to_sum()?)
    }
}
