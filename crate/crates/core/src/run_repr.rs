//! Finite exponential sums `Σ a_j e^{-ξ_j/T}`, their fractions, and the
//! residue maps to `R_max` and to the tropical reals.

use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::char_one::MaxPlusElem;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error("temperature must be positive, got {0}")]
    BadTemperature(f64),
    #[error("scaling factor must be positive")]
    BadLambda,
    #[error("non-finite exponent or coefficient")]
    NotFinite,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("numerator is zero")]
    ZeroNumerator,
    #[error("residue needs positive coefficients")]
    NonPositiveCoefficient,
}

/// Exponent type of an [`ExpSum`].
pub trait Exponent: Copy + PartialOrd + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn is_positive(self) -> bool;
    fn is_finite(self) -> bool;
    /// Whether two exponents denote the same term.
    fn same(self, other: Self) -> bool;
    fn to_f64(self) -> f64;
}

/// Real exponents merge when within this distance.
pub const EXPONENT_TOL: f64 = 1e-12;

impl Exponent for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn is_positive(self) -> bool {
        self > 0.0
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn same(self, other: Self) -> bool {
        libm::fabs(self - other) <= EXPONENT_TOL
    }
    fn to_f64(self) -> f64 {
        self
    }
}

impl Exponent for Rational64 {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn is_positive(self) -> bool {
        Signed::is_positive(&self)
    }
    fn is_finite(self) -> bool {
        true
    }
    fn same(self, other: Self) -> bool {
        self == other
    }
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// `Σ a_j e^{-ξ_j/T}` with distinct exponents in ascending order and nonzero
/// coefficients. The empty sum is zero.
#[derive(Clone, Debug)]
pub struct ExpSum<E: Exponent = f64> {
    terms: Vec<(E, f64)>,
    fuzzy: bool,
}

impl<E: Exponent> PartialEq for ExpSum<E> {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| a.0.same(b.0) && a.1 == b.1)
    }
}

fn cancels(sum: f64, largest: f64) -> bool {
    sum == 0.0 || libm::fabs(sum) <= 1e-14 * largest
}

impl<E: Exponent> ExpSum<E> {
    pub fn zero() -> Self {
        Self { terms: Vec::new(), fuzzy: false }
    }

    /// The constant function `a`.
    pub fn constant(a: f64) -> Self {
        Self::canonical(alloc::vec![(E::zero(), a)])
    }

    /// The Teichmüller element `e_ξ = e^{-ξ/T}`.
    pub fn teichmuller(xi: E) -> Self {
        Self::canonical(alloc::vec![(xi, 1.0)])
    }

    /// Canonicalizes arbitrary `(ξ, a)` terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (E, f64)>) -> Result<Self, RunError> {
        let terms: Vec<(E, f64)> = terms.into_iter().collect();
        if terms.iter().any(|(x, a)| !x.is_finite() || !a.is_finite()) {
            return Err(RunError::NotFinite);
        }
        Ok(Self::canonical(terms))
    }

    fn canonical(mut terms: Vec<(E, f64)>) -> Self {
        terms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite exponents"));
        let mut out: Vec<(E, f64)> = Vec::with_capacity(terms.len());
        let mut fuzzy = false;
        let mut i = 0;
        while i < terms.len() {
            let (x0, mut sum) = terms[i];
            let mut largest = libm::fabs(sum);
            let mut j = i + 1;
            while j < terms.len() && terms[j].0.same(x0) {
                fuzzy |= terms[j].0 != x0;
                sum += terms[j].1;
                largest = largest.max(libm::fabs(terms[j].1));
                j += 1;
            }
            if !cancels(sum, largest) {
                out.push((x0, sum));
            }
            i = j;
        }
        Self { terms: out, fuzzy }
    }

    pub fn terms(&self) -> &[(E, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether distinct (but nearly equal) exponents were merged.
    pub fn fuzzy_merge(&self) -> bool {
        self.fuzzy
    }

    /// Leading term `(ξ_min, a)`.
    pub fn leading(&self) -> Option<(E, f64)> {
        self.terms.first().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = Self::canonical(self.terms.iter().chain(&other.terms).copied().collect());
        s.fuzzy |= self.fuzzy || other.fuzzy;
        s
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|&(x, a)| (x, -a)).collect(), fuzzy: self.fuzzy }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(x, a) in &self.terms {
            for &(y, b) in &other.terms {
                terms.push((x.add(y), a * b));
            }
        }
        let mut s = Self::canonical(terms);
        s.fuzzy |= self.fuzzy || other.fuzzy;
        s
    }

    /// `α_λ`: every exponent `ξ` becomes `λξ`.
    pub fn alpha_auto(&self, lambda: E) -> Result<Self, RunError> {
        if !lambda.is_positive() {
            return Err(RunError::BadLambda);
        }
        Ok(Self { terms: self.terms.iter().map(|&(x, a)| (x.mul(lambda), a)).collect(), fuzzy: self.fuzzy })
    }

    /// `(ξ_min, s)` with `f(T) = e^{-ξ_min/T} s`; `None` for the zero sum.
    pub fn eval_scaled(&self, t: f64) -> Result<Option<(f64, f64)>, RunError> {
        if t.is_nan() || t <= 0.0 || t.is_infinite() {
            return Err(RunError::BadTemperature(t));
        }
        let Some((x0, _)) = self.leading() else { return Ok(None) };
        let x0 = x0.to_f64();
        let s = self.terms.iter().map(|&(x, a)| a * libm::exp(-(x.to_f64() - x0) / t)).sum();
        Ok(Some((x0, s)))
    }
}

/// `Σ a_j e^{-ξ_j/T}` at a positive temperature.
pub fn exp_eval<E: Exponent>(f: &ExpSum<E>, t: f64) -> Result<f64, RunError> {
    Ok(match f.eval_scaled(t)? {
        None => 0.0,
        Some((x0, s)) => s * libm::exp(-x0 / t),
    })
}

impl<E: Exponent> fmt::Display for ExpSum<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(x, a)) in self.terms.iter().enumerate() {
            let mag = if i == 0 {
                a
            } else if a < 0.0 {
                f.write_str(" - ")?;
                -a
            } else {
                f.write_str(" + ")?;
                a
            };
            if x.to_f64() == 0.0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*exp(-{x}/T)")?;
            }
        }
        Ok(())
    }
}

/// `num / den` with a nonzero denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpFraction<E: Exponent = f64> {
    num: ExpSum<E>,
    den: ExpSum<E>,
}

impl<E: Exponent> ExpFraction<E> {
    pub fn new(num: ExpSum<E>, den: ExpSum<E>) -> Result<Self, RunError> {
        if den.is_zero() {
            return Err(RunError::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_sum(num: ExpSum<E>) -> Self {
        Self { num, den: ExpSum::constant(1.0) }
    }

    pub fn num(&self) -> &ExpSum<E> {
        &self.num
    }

    pub fn den(&self) -> &ExpSum<E> {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    /// `f(T)`, with the leading exponentials divided out before evaluating.
    pub fn eval(&self, t: f64) -> Result<f64, RunError> {
        let Some((xn, sn)) = self.num.eval_scaled(t)? else { return Ok(0.0) };
        let (xd, sd) = self.den.eval_scaled(t)?.expect("nonzero denominator");
        Ok(sn / sd * libm::exp(-(xn - xd) / t))
    }

    /// `sign(f) |f(T)|^T`, computed without forming `e^{-ξ/T}`.
    pub fn eval_powered(&self, t: f64) -> Result<f64, RunError> {
        let Some((xn, sn)) = self.num.eval_scaled(t)? else { return Ok(0.0) };
        let (xd, sd) = self.den.eval_scaled(t)?.expect("nonzero denominator");
        let q = sn / sd;
        let mag = libm::exp(-xn + xd + t * libm::log(libm::fabs(q)));
        Ok(if q < 0.0 { -mag } else { mag })
    }

    pub fn fuzzy_merge(&self) -> bool {
        self.num.fuzzy_merge() || self.den.fuzzy_merge()
    }
}

/// `ε(f) = e^{-min ξ + min η}` for positive fractions.
pub fn residue<E: Exponent>(f: &ExpFraction<E>) -> Result<MaxPlusElem, RunError> {
    let positive = |s: &ExpSum<E>| s.terms().iter().all(|&(_, a)| a > 0.0);
    if !positive(&f.num) || !positive(&f.den) {
        return Err(RunError::NonPositiveCoefficient);
    }
    let (xn, _) = f.num.leading().ok_or(RunError::ZeroNumerator)?;
    let (xd, _) = f.den.leading().expect("nonzero denominator");
    MaxPlusElem::from_log(-xn.to_f64() + xd.to_f64()).map_err(|_| RunError::NotFinite)
}

/// A signed real, viewed in Viro's hyperfield.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct TropicalReal(pub f64);

/// `ε̃(f) = sign(a_0/b_0) e^{-ξ_0 + η_0}` on the leading terms; `ε̃(0) = 0`.
/// Canonical sums already have nonzero leading coefficients.
pub fn residue_tilde<E: Exponent>(f: &ExpFraction<E>) -> TropicalReal {
    let Some((xn, a)) = f.num.leading() else { return TropicalReal(0.0) };
    let (xd, b) = f.den.leading().expect("nonzero denominator");
    let mag = libm::exp(-xn.to_f64() + xd.to_f64());
    TropicalReal(if (a < 0.0) != (b < 0.0) { -mag } else { mag })
}

/// Result of a hyperaddition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HyperValue {
    Single(TropicalReal),
    /// The interval `[-a, a]`.
    Interval(f64),
}

impl HyperValue {
    /// Membership, with `rel_tol` slack on magnitudes.
    pub fn contains(&self, x: TropicalReal, rel_tol: f64) -> bool {
        match *self {
            HyperValue::Single(v) => libm::fabs(x.0 - v.0) <= rel_tol * libm::fabs(v.0),
            HyperValue::Interval(a) => libm::fabs(x.0) <= a * (1.0 + rel_tol),
        }
    }
}

/// `a ⌣ b`: the larger magnitude wins, `a ⌣ a = a`, `a ⌣ (-a) = [-|a|, |a|]`.
pub fn hyper_add(a: TropicalReal, b: TropicalReal) -> HyperValue {
    hyper_add_tol(a, b, 0.0)
}

/// [`hyper_add`] treating magnitudes within relative `tol` as equal.
pub fn hyper_add_tol(a: TropicalReal, b: TropicalReal, tol: f64) -> HyperValue {
    let (ma, mb) = (libm::fabs(a.0), libm::fabs(b.0));
    let close = libm::fabs(ma - mb) <= tol * ma.max(mb);
    if close && (a.0 < 0.0) != (b.0 < 0.0) && ma > 0.0 {
        HyperValue::Interval(ma.max(mb))
    } else if close || ma > mb {
        HyperValue::Single(a)
    } else {
        HyperValue::Single(b)
    }
}

pub fn hyper_mul(a: TropicalReal, b: TropicalReal) -> TropicalReal {
    TropicalReal(a.0 * b.0)
}

/// Relative slack for comparing residues computed from float exponents.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// `ε̃(f + g) ∈ ε̃(f) ⌣ ε̃(g)`.
pub fn hyper_membership_check<E: Exponent>(f: &ExpFraction<E>, g: &ExpFraction<E>) -> bool {
    let s = residue_tilde(&f.add(g));
    hyper_add_tol(residue_tilde(f), residue_tilde(g), MEMBERSHIP_TOL).contains(s, MEMBERSHIP_TOL)
}

/// One row of a dequantization table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitRow {
    pub t: f64,
    pub value: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub limit: f64,
    pub rows: Vec<LimitRow>,
    pub fuzzy_merge: bool,
}

impl LimitReport {
    pub fn last(&self) -> &LimitRow {
        self.rows.last().expect("at least one row")
    }
}

/// `f(T)^T` along `T = 1, 1/2, …, 2^{-k_max}` against `ε̃(f)`.
pub fn limit_check<E: Exponent>(f: &ExpFraction<E>, k_max: u32) -> Result<LimitReport, RunError> {
    let limit = residue_tilde(f).0;
    let mut rows = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let t = libm::ldexp(1.0, -(k as i32));
        let value = f.eval_powered(t)?;
        let abs_error = libm::fabs(value - limit);
        let rel_error = if limit == 0.0 { abs_error } else { abs_error / libm::fabs(limit) };
        rows.push(LimitRow { t, value, abs_error, rel_error });
    }
    Ok(LimitReport { limit, rows, fuzzy_merge: f.fuzzy_merge() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_one::{deform_add, DeformContext};

    fn sum(terms: &[(f64, f64)]) -> ExpSum {
        ExpSum::from_terms(terms.iter().copied()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn canonical_merge() {
        let s = sum(&[(1.0, 1.0), (0.0, 2.0), (1.0, 1.0)]);
        assert_eq!(s.terms(), &[(0.0, 2.0), (1.0, 2.0)]);
        assert!(sum(&[(1.0, 1.0), (1.0, -1.0)]).is_zero());
        assert!(ExpSum::<f64>::from_terms([(f64::NAN, 1.0)]).is_err());
        let e1: ExpSum = ExpSum::teichmuller(1.0);
        let v = exp_eval(&e1.add(&e1), 0.5).unwrap();
        assert!((v - 2.0 * libm::exp(-2.0)).abs() < 1e-15);
        assert!(sum(&[(1.0, 1.0), (1.0 + 1e-13, 1.0)]).fuzzy_merge());
    }

    #[test]
    fn difference_of_squares_exact() {
        let e0 = ExpSum::<Rational64>::teichmuller(r(0, 1));
        let e1 = ExpSum::<Rational64>::teichmuller(r(1, 1));
        let p = e0.add(&e1).mul(&e0.sub(&e1));
        assert_eq!(p, e0.sub(&ExpSum::teichmuller(r(2, 1))));
    }

    #[test]
    fn evaluation() {
        let c: ExpSum = ExpSum::constant(3.5);
        for t in [0.1, 1.0, 10.0] {
            assert_eq!(exp_eval(&c, t).unwrap(), 3.5);
            let e = ExpSum::teichmuller(2.0);
            assert!((exp_eval(&e, t).unwrap() - libm::exp(-2.0 / t)).abs() < 1e-15);
        }
        assert!(exp_eval(&c, 0.0).is_err());
    }

    #[test]
    fn alpha_group() {
        let f = sum(&[(0.5, 1.0), (2.0, -3.0)]);
        assert_eq!(f.alpha_auto(1.0).unwrap(), f);
        assert_eq!(f.alpha_auto(2.0).unwrap().alpha_auto(3.0).unwrap(), f.alpha_auto(6.0).unwrap());
        let c: ExpSum = ExpSum::constant(4.0);
        assert_eq!(c.alpha_auto(7.0).unwrap(), c);
        assert!(f.alpha_auto(0.0).is_err());
        // χ(α_λ f)(T) = χ(f)(T/λ)
        let (l, t) = (2.5, 0.8);
        let lhs = exp_eval(&f.alpha_auto(l).unwrap(), t).unwrap();
        assert!((lhs - exp_eval(&f, t / l).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn residues() {
        let f = ExpFraction::from_sum(sum(&[(1.0, 2.0), (3.0, 1.0)]));
        assert!((residue(&f).unwrap().logval() + 1.0).abs() < 1e-15);
        assert_eq!(residue(&ExpFraction::from_sum(ExpSum::<f64>::constant(5.0))).unwrap(), MaxPlusElem::ONE);
        let g = ExpFraction::new(sum(&[(2.0, -3.0)]), sum(&[(1.0, 1.0)])).unwrap();
        assert!((residue_tilde(&g).0 + libm::exp(-1.0)).abs() < 1e-15);
        assert!(residue(&g).is_err());
        assert!(ExpFraction::new(sum(&[(0.0, 1.0)]), ExpSum::zero()).is_err());
    }

    #[test]
    fn hyperfield_rules() {
        let t = TropicalReal;
        assert_eq!(hyper_add(t(5.0), t(2.0)), HyperValue::Single(t(5.0)));
        assert_eq!(hyper_add(t(3.0), t(3.0)), HyperValue::Single(t(3.0)));
        assert_eq!(hyper_add(t(3.0), t(-3.0)), HyperValue::Interval(3.0));
        assert_eq!(hyper_add(t(-1.0), t(4.0)), HyperValue::Single(t(4.0)));
        assert_eq!(hyper_mul(t(-2.0), t(3.0)), t(-6.0));
        let f = ExpFraction::from_sum(ExpSum::teichmuller(1.0));
        let g = ExpFraction::from_sum(ExpSum::teichmuller(2.0));
        assert!(hyper_membership_check(&f, &g));
        assert!(hyper_membership_check(&f, &f.neg()));
        assert_eq!(residue_tilde(&f.add(&f.neg())).0, 0.0);
    }

    #[test]
    fn dequantization_limits() {
        let f = ExpFraction::from_sum(sum(&[(1.0, 2.0), (3.0, 1.0)]));
        let rep = limit_check(&f, 10).unwrap();
        assert!(rep.last().abs_error < 1e-3);
        let ones = ExpFraction::from_sum(ExpSum::<f64>::constant(5.0));
        let rep = limit_check(&ones, 10).unwrap();
        assert_eq!(rep.limit, 1.0);
        for row in &rep.rows {
            assert!((row.value - libm::pow(5.0, row.t)).abs() < 1e-14);
        }
    }

    #[test]
    fn bridge_to_deformed_addition() {
        for (xi, eta, t) in [(0.3, 1.7, 0.5), (-1.0, 2.0, 3.0), (0.0, 0.0, 1.0)] {
            let f = ExpFraction::from_sum(ExpSum::teichmuller(xi).add(&ExpSum::teichmuller(eta)));
            let lhs = libm::log(f.eval_powered(t).unwrap());
            let c = DeformContext::new(t).unwrap();
            let rhs = deform_add(MaxPlusElem::from_log(-xi).unwrap(), MaxPlusElem::from_log(-eta).unwrap(), c);
            assert!((lhs - rhs.logval()).abs() < 1e-12);
        }
    }

    #[test]
    fn display() {
        let f = sum(&[(0.0, 2.0), (1.5, -1.0), (3.0, 0.5)]);
        assert_eq!(alloc::format!("{f}"), "2 - 1*exp(-1.5/T) + 0.5*exp(-3/T)");
    }
}
