//! Sparse multivariate polynomials with exact coefficients.
//!
//! A polynomial is a map from exponent vectors to nonzero coefficients. The
//! coefficient type is generic; the integer case ([`ZPoly`]) carries the
//! universal polynomials `S_n`, the rational case ([`QPoly`]) is used for
//! symbolic coefficient identities.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, Zero};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Polynomial with integer coefficients.
pub type ZPoly = MultiPoly<BigInt>;
/// Polynomial with rational coefficients.
pub type QPoly = MultiPoly<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("exponent vector has length {found}, expected {expected}")]
    BadMonomial { expected: usize, found: usize },
    #[error("coefficient {coeff} is not divisible by {divisor}")]
    NotDivisible { coeff: BigInt, divisor: BigInt },
}

/// Sparse polynomial in `nvars` variables. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<C = BigInt> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Clone + Num> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, C::one());
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging repeats
    /// and dropping zero sums.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::BadMonomial { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    fn add_term(&mut self, e: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::NvarsMismatch { left: self.nvars, right: other.nvars })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), C::zero() - c.clone());
        }
        Ok(out)
    }

    /// Exact product with zero coefficients pruned.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    pub fn map_coeffs<D: Clone + Num>(&self, mut f: impl FnMut(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Swaps variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Evaluates at a point of any commutative ring `R`, mapping coefficients
    /// through `lift`.
    pub fn eval_with<R>(&self, point: &[R], mut lift: impl FnMut(&C) -> R) -> R
    where
        R: Clone + Num,
    {
        assert_eq!(point.len(), self.nvars);
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = lift(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Renders with the given variable names, e.g. `-x^2*y - x*y^2`.
    pub fn display_with(&self, names: &[&str]) -> String
    where
        C: fmt::Display + PartialOrd,
    {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        // highest degree first, ties in reverse lex order
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = *c < C::zero();
            let mag = if neg { C::zero() - c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let is_const = e.iter().all(|&k| k == 0);
            let mut first = true;
            if !mag.is_one() || is_const {
                let _ = write!(s, "{mag}");
                first = false;
            }
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                let name = names.get(v).copied().unwrap_or("x?");
                s.push_str(name);
                if k > 1 {
                    let _ = write!(s, "^{k}");
                }
            }
        }
        s
    }
}

impl MultiPoly<BigInt> {
    /// Divides every coefficient by `d`, failing if any division is inexact.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self, PolyError> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible { coeff: c.clone(), divisor: d.clone() });
            }
            out.add_term(e.clone(), q);
        }
        Ok(out)
    }

    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }
}

fn default_names(n: usize) -> Vec<String> {
    use alloc::format;
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

impl<C: Clone + Num + fmt::Display + PartialOrd> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl<C: Clone + Num> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.checked_add(rhs).expect("polynomial variable count mismatch")
    }
}

impl<C: Clone + Num> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.checked_sub(rhs).expect("polynomial variable count mismatch")
    }
}

impl<C: Clone + Num> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.checked_mul(rhs).expect("polynomial variable count mismatch")
    }
}

impl<C: Clone + Num> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.map_coeffs(|c| C::zero() - c.clone())
    }
}
