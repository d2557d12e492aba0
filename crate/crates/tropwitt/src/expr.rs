//! A small reader for polynomial expressions written the way they appear in
//! typeset tables: implicit multiplication, `^` powers, `(…)`,
//! `\left(…\right)` and `\frac{…}{…}` with a constant denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use tropwitt_core::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} at byte {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("unknown command \\{0}")]
    UnknownCommand(String),
    #[error("denominator must be a nonzero constant")]
    BadDenominator,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
    LBrace,
    RBrace,
    Frac,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, i)),
            '-' => out.push((Tok::Minus, i)),
            '*' => out.push((Tok::Star, i)),
            '^' => out.push((Tok::Caret, i)),
            '(' => out.push((Tok::Open, i)),
            ')' => out.push((Tok::Close, i)),
            '{' => out.push((Tok::LBrace, i)),
            '}' => out.push((Tok::RBrace, i)),
            '\\' => {
                i += 1;
                while i < b.len() && b[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let cmd = &s[start + 1..i];
                match cmd {
                    "left" | "right" => {}
                    "frac" => out.push((Tok::Frac, start)),
                    _ => return Err(ExprError::UnknownCommand(cmd.into())),
                }
                continue;
            }
            '0'..='9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(s[start..i].parse().expect("digits")), start));
                continue;
            }
            _ if c.is_ascii_alphabetic() => {
                i += 1;
                while i < b.len() && (b[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                // subscripts: x_1, S_{10}
                if i < b.len() && b[i] == b'_' {
                    i += 1;
                    if i < b.len() && b[i] == b'{' {
                        let close = s[i..].find('}').ok_or(ExprError::UnexpectedEnd)? + i;
                        i = close + 1;
                    } else {
                        while i < b.len() && b[i].is_ascii_alphanumeric() {
                            i += 1;
                        }
                    }
                }
                let name: String = s[start..i].chars().filter(|c| *c != '{' && *c != '}').collect();
                out.push((Tok::Ident(name), start));
                continue;
            }
            _ => return Err(ExprError::UnexpectedChar(c, i)),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [&'a str],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<(), ExprError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ExprError::Expected { expected: what, at: self.at() })
        }
    }

    fn sum(&mut self) -> Result<QPoly, ExprError> {
        let n = self.vars.len();
        let mut acc = QPoly::zero(n);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<QPoly, ExprError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Open | Tok::Frac | Tok::LBrace) => {}
                _ => return Ok(acc),
            }
            let f = self.power()?;
            acc = &acc * &f;
        }
    }

    fn power(&mut self) -> Result<QPoly, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let braced = self.peek() == Some(&Tok::LBrace);
        if braced {
            self.pos += 1;
        }
        let at = self.at();
        let Some((Tok::Num(e), _)) = self.toks.get(self.pos).cloned() else {
            return Err(ExprError::Expected { expected: "integer exponent", at });
        };
        self.pos += 1;
        if braced {
            self.expect(Tok::RBrace, "'}'")?;
        }
        let e: u64 = u64::try_from(&e).map_err(|_| ExprError::ExponentTooLarge(e.to_string()))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<QPoly, ExprError> {
        let n = self.vars.len();
        let at = self.at();
        let (tok, _) = self.toks.get(self.pos).cloned().ok_or(ExprError::UnexpectedEnd)?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(QPoly::constant(n, BigRational::from_integer(v))),
            Tok::Ident(name) => {
                let i = self.vars.iter().position(|v| *v == name).ok_or(ExprError::UnknownVariable(name))?;
                Ok(QPoly::var(n, i))
            }
            Tok::Open => {
                let e = self.sum()?;
                self.expect(Tok::Close, "')'")?;
                Ok(e)
            }
            Tok::LBrace => {
                let e = self.sum()?;
                self.expect(Tok::RBrace, "'}'")?;
                Ok(e)
            }
            Tok::Frac => {
                self.expect(Tok::LBrace, "'{'")?;
                let num = self.sum()?;
                self.expect(Tok::RBrace, "'}'")?;
                self.expect(Tok::LBrace, "'{'")?;
                let den = self.sum()?;
                self.expect(Tok::RBrace, "'}'")?;
                let c = constant_of(&den).ok_or(ExprError::BadDenominator)?;
                if c.is_zero() {
                    return Err(ExprError::BadDenominator);
                }
                Ok(num.scale(&c.recip()))
            }
            _ => Err(ExprError::Expected { expected: "a term", at }),
        }
    }
}

fn constant_of(p: &QPoly) -> Option<BigRational> {
    if p.is_zero() {
        return Some(BigRational::zero());
    }
    let mut it = p.terms();
    let (m, c) = it.next()?;
    (it.next().is_none() && m.iter().all(|&e| e == 0)).then(|| c.clone())
}

/// Parses `src` as a polynomial in the named variables.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<QPoly, ExprError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, vars, end: src.len() };
    let out = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(ExprError::Expected { expected: "end of input", at: p.at() });
    }
    Ok(out)
}

/// A rational constant such as `-3/4` or `5`.
pub fn parse_rational(src: &str) -> Result<BigRational, ExprError> {
    let s = src.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let bad = || ExprError::Expected { expected: "a rational p/q", at: 0 };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ExprError::BadDenominator);
    }
    Ok(BigRational::new(n, d))
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
