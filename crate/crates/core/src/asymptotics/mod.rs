//! Borel transforms and the expansion `g(T)^T ~ Σ a_n T^n`.
//!
//! The coefficient algebra is exact and generic over [`QAlgebra`], so the
//! same code runs on rational numbers and on rational polynomials in
//! symbolic `b_1, b_2, …`.

mod quadrature;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::QPoly;

pub use quadrature::{integrate, QuadResult};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AsymError {
    #[error("leading coefficient must be 1")]
    LeadingNotOne,
    #[error("a_1 must vanish after normalization")]
    NonzeroA1,
    #[error("a_0 must be positive")]
    NonPositiveA0,
    #[error("series is too short")]
    TooShort,
    #[error("quadrature parameters out of range: n = {n}, T = {t}")]
    OutOfRange { n: u32, t: f64 },
}

/// A commutative Q-algebra, enough to run the series recursions.
pub trait QAlgebra: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;
}

impl QAlgebra for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
}

impl QAlgebra for QPoly {
    fn zero_like(&self) -> Self {
        QPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        QPoly::one(self.nvars())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRational) -> Self {
        QPoly::scale(self, c)
    }
}

/// Coefficients `(c_0, c_1, …)` of a truncated series in `T`.
pub type CoeffSeries = Vec<BigRational>;

fn ratio(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `φ_n = b_{n+1} / n!`.
pub fn borel_transform(b: &[BigRational]) -> CoeffSeries {
    b.iter().skip(1).enumerate().map(|(n, c)| c / BigRational::from_integer(factorial(n))).collect()
}

/// `b_{n+1} = n! φ_n`, with `b_0` supplied.
pub fn borel_inverse(b0: BigRational, phi: &[BigRational]) -> CoeffSeries {
    let mut b = vec![b0];
    b.extend(phi.iter().enumerate().map(|(n, c)| c * BigRational::from_integer(factorial(n))));
    b
}

/// `log g` for `g_0 = 1`, from `n L_n = n g_n - Σ_{k<n} k L_k g_{n-k}`.
fn series_log<R: QAlgebra>(g: &[R]) -> Vec<R> {
    let zero = g[0].zero_like();
    let mut l = vec![zero.clone(); g.len()];
    for n in 1..g.len() {
        let mut acc = g[n].scale(&ratio(n));
        for k in 1..n {
            acc = acc.sub(&l[k].mul(&g[n - k]).scale(&ratio(k)));
        }
        l[n] = acc.scale(&ratio(n).recip());
    }
    l
}

/// `exp F` for `F_0 = 0`, from `n E_n = Σ_{k ≤ n} k F_k E_{n-k}`.
fn series_exp<R: QAlgebra>(f: &[R]) -> Vec<R> {
    let mut e = vec![f[0].one_like(); 1];
    for n in 1..f.len() {
        let mut acc = f[0].zero_like();
        for k in 1..=n {
            acc = acc.add(&f[k].mul(&e[n - k]).scale(&ratio(k)));
        }
        e.push(acc.scale(&ratio(n).recip()));
    }
    e
}

/// Coefficients `a_0, …, a_M` of `g(T)^T = exp(T log g(T))` for
/// `b = (b_0 = 1, b_1, …, b_{M-1})`; `a_M` is the last one fixed by `b`.
pub fn t_power_expand<R: QAlgebra>(b: &[R]) -> Result<Vec<R>, AsymError> {
    let first = b.first().ok_or(AsymError::TooShort)?;
    if *first != first.one_like() {
        return Err(AsymError::LeadingNotOne);
    }
    let l = series_log(b);
    let mut f = vec![first.zero_like()];
    f.extend(l);
    Ok(series_exp(&f))
}

/// Recovers `b_0, …, b_{N-1}` from `a_0 = 1, a_1 = 0, a_2, …, a_N`; since
/// `a_{n+1} = b_n + (terms in b_1..b_{n-1})`, this is a triangular solve.
pub fn invert_expansion(a: &[BigRational]) -> Result<CoeffSeries, AsymError> {
    if a.len() < 2 {
        return Err(AsymError::TooShort);
    }
    if !a[0].is_one() {
        return Err(AsymError::LeadingNotOne);
    }
    if !a[1].is_zero() {
        return Err(AsymError::NonzeroA1);
    }
    let mut b = vec![BigRational::one()];
    for n in 1..a.len() - 1 {
        b.push(BigRational::zero());
        let partial = t_power_expand(&b)?;
        b[n] = &a[n + 1] - &partial[n + 1];
    }
    debug_assert_eq!(t_power_expand(&b).ok().as_deref(), Some(a));
    Ok(b)
}

/// Prefactor `a e^{-ξ_0/T}` reducing `a_0 > 0` to `a_0 = 1`: returns
/// `(a, ξ_0) = (1, -log a_0)`.
pub fn normalize_a0(a0: f64) -> Result<(f64, f64), AsymError> {
    if a0.is_nan() || a0 <= 0.0 || a0.is_infinite() {
        return Err(AsymError::NonPositiveA0);
    }
    Ok((1.0, -libm::log(a0)))
}

/// A general target `a` realized as `(a_pre e^{-ξ_0/T} g(T))^T` with
/// `log a_pre = log_scale` and `g` given by `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralSolution {
    pub xi0: f64,
    pub log_scale: BigRational,
    pub b: CoeffSeries,
}

/// Solves for a target with any rational `a_0 > 0` and any `a_1`. The factor
/// `a_pre^T = exp(T log a_pre)` absorbs `a_1 / a_0`.
pub fn solve_general(a: &[BigRational]) -> Result<GeneralSolution, AsymError> {
    if a.len() < 2 {
        return Err(AsymError::TooShort);
    }
    let a0 = &a[0];
    if *a0 <= BigRational::zero() {
        return Err(AsymError::NonPositiveA0);
    }
    let (_, xi0) = normalize_a0(a0.to_f64().ok_or(AsymError::NonPositiveA0)?)?;
    let unit: Vec<BigRational> = a.iter().map(|c| c / a0).collect();
    let log_scale = unit[1].clone();
    let neg_shift = scale_power_series(&(-log_scale.clone()), a.len());
    let c = mul_series(&unit, &neg_shift);
    Ok(GeneralSolution { xi0, b: invert_expansion(&c)?, log_scale })
}

/// Coefficients of `a_0 · exp(T · log_scale) · g(T)^T`, the inverse of
/// [`solve_general`] with `a_0 = e^{-ξ_0}` given exactly.
pub fn general_expand(a0: &BigRational, log_scale: &BigRational, b: &[BigRational]) -> Result<CoeffSeries, AsymError> {
    let core = t_power_expand(b)?;
    let s = scale_power_series(log_scale, core.len());
    Ok(mul_series(&core, &s).into_iter().map(|c| c * a0).collect())
}

/// `exp(c T)` truncated to `len` coefficients.
fn scale_power_series(c: &BigRational, len: usize) -> CoeffSeries {
    let mut out = Vec::with_capacity(len);
    let mut term = BigRational::one();
    for n in 0..len {
        out.push(term.clone());
        term = term * c / ratio(n + 1);
    }
    out
}

fn mul_series(x: &[BigRational], y: &[BigRational]) -> CoeffSeries {
    let n = x.len().min(y.len());
    (0..n).map(|k| (0..=k).map(|i| &x[i] * &y[k - i]).sum()).collect()
}

/// Relative error of `∫_0^∞ e^{-ξ/T} ξ^n dξ` against `n! T^{n+1}`. The
/// integral is cut at `Ξ = T (60 + 2n)`, where the tail is below `10^{-20}`
/// relative.
pub fn laplace_quadrature_check(n: u32, t: f64) -> Result<f64, AsymError> {
    if n > 12 || !(0.05..=2.0).contains(&t) {
        return Err(AsymError::OutOfRange { n, t });
    }
    let exact = factorial(n as usize).to_f64().expect("small factorial") * libm::pow(t, n as f64 + 1.0);
    let cutoff = t * (60.0 + 2.0 * n as f64);
    let q = integrate(|x| libm::exp(-x / t) * libm::pow(x, n as f64), 0.0, cutoff, exact * 1e-13);
    Ok(libm::fabs(q.value - exact) / exact)
}

/// `b_0 + ∫_0^Ξ e^{-ξ/T} φ(ξ) dξ` with `φ(ξ) = Σ φ_n ξ^n`.
pub fn borel_sum_eval(b0: &BigRational, phi: &[BigRational], cutoff: f64, t: f64) -> f64 {
    let coeffs: Vec<f64> = phi.iter().map(|c| c.to_f64().expect("finite")).collect();
    let poly = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    let q = integrate(|x| libm::exp(-x / t) * poly(x), 0.0, cutoff, 1e-13);
    b0.to_f64().expect("finite") + q.value
}

/// `Σ b_n T^n`, for comparison with the Borel integral.
pub fn direct_sum(b: &[BigRational], t: f64) -> f64 {
    b.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().expect("finite"))
}
