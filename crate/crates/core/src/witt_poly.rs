//! The universal polynomials `S_n` and the coefficient series `w_p(α)`.
//!
//! `S_n(x_1..x_k)` is defined by
//!
//! ```text
//! ∏_j (1 - t x_j) = ∏_{n ≥ 1} (1 - S_n t^n)
//! ```
//!
//! Two independent routes compute them:
//!
//! * [`compute_witt_polys`] peels off one factor at a time from the residual
//!   series `∏(1 - t x_j) · ∏_{m<n} (1 - S_m t^m)^{-1}`; this yields every
//!   `S_n` up to a bound and is the route used for the printed tables and the
//!   power-sum identity check.
//! * [`prime_power_witt_polys`] only produces `S_{p^n}`, from the power-sum
//!   identity `Σ x_j^{p^m} = Σ_{i ≤ m} p^i S_{p^i}^{p^{m-i}}` restricted to the
//!   divisors of `p^m`. Its cost does not depend on the non-prime-power
//!   indices, which makes depths like `5^4` reachable.
//!
//! The coefficients `a(n, m)` of `S_{p^n}` reduced mod `p` assemble into the
//! series `w_p(α) ∈ F_p[[T]]`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::arith::{checked_pow, is_prime};
use crate::poly::{Monomial, PolyError, ZPoly};
use crate::series::{CoeffRing, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WittPolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{num}/{den} is not a fraction in [0,1] with denominator a power of {p}")]
    BadFraction { p: u64, num: u64, den: u64 },
    #[error("fractions do not sum to 1")]
    NotAPartition,
    #[error("order {order} needs S_(p^{need}) but the table stops at p^{have}")]
    DepthExceeded { order: usize, need: usize, have: usize },
    #[error("expected {expected} fractions, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("p^n overflows: p = {p}, n = {n}")]
    Overflow { p: u64, n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `S_1, …, S_{n_max}` in `k_vars` variables, by residual-series peeling.
pub fn compute_witt_polys(k_vars: usize, n_max: usize) -> Vec<ZPoly> {
    assert!(k_vars >= 1 && n_max >= 1);
    let len = n_max + 1;
    // R(t) = ∏ (1 - t x_j) mod t^{n_max+1}, stored as coefficient polynomials.
    let mut r = vec![ZPoly::zero(k_vars); len];
    r[0] = ZPoly::one(k_vars);
    for j in 0..k_vars {
        let xj = ZPoly::var(k_vars, j);
        for i in (1..len).rev() {
            let shifted = &r[i - 1] * &xj;
            r[i] = &r[i] - &shifted;
        }
    }
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let s_n = -&r[n];
        // R <- R / (1 - S_n t^n):  Q_i = R_i + S_n Q_{i-n}, ascending in i.
        if !s_n.is_zero() {
            for i in n..len {
                let add = &s_n * &r[i - n];
                r[i] = &r[i] + &add;
            }
        }
        debug_assert!(r[n].is_zero());
        out.push(s_n);
    }
    out
}

/// Coefficients of `t^1..t^{n_max}` in `∏(1 - t x_j) - ∏_{n ≤ n_max}(1 - S_n t^n)`.
/// All vanish exactly when `polys` are the universal polynomials.
pub fn product_defect(k_vars: usize, polys: &[ZPoly]) -> Vec<ZPoly> {
    let n_max = polys.len();
    let len = n_max + 1;
    let mut lhs = vec![ZPoly::zero(k_vars); len];
    lhs[0] = ZPoly::one(k_vars);
    for j in 0..k_vars {
        let xj = ZPoly::var(k_vars, j);
        for i in (1..len).rev() {
            let shifted = &lhs[i - 1] * &xj;
            lhs[i] = &lhs[i] - &shifted;
        }
    }
    let mut rhs = vec![ZPoly::zero(k_vars); len];
    rhs[0] = ZPoly::one(k_vars);
    for (idx, s) in polys.iter().enumerate() {
        let n = idx + 1;
        for i in (n..len).rev() {
            let term = &rhs[i - n] * s;
            rhs[i] = &rhs[i] - &term;
        }
    }
    (1..len).map(|i| &lhs[i] - &rhs[i]).collect()
}

fn power_sum(k_vars: usize, n: u64) -> ZPoly {
    let mut p = ZPoly::zero(k_vars);
    for j in 0..k_vars {
        p = &p + &ZPoly::var(k_vars, j).pow(n);
    }
    p
}

/// Checks `Σ_j x_j^n = Σ_{d | n} d · S_d^{n/d}` exactly, with `polys[d-1] = S_d`.
pub fn newton_identity_holds(polys: &[ZPoly], n: usize) -> bool {
    assert!(n >= 1 && n <= polys.len(), "S_d missing for some divisor of {n}");
    let k = polys[0].nvars();
    let mut rhs = ZPoly::zero(k);
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let term = polys[d - 1].pow((n / d) as u64).scale(&BigInt::from(d));
        rhs = &rhs + &term;
    }
    rhs == power_sum(k, n as u64)
}

/// Power-sum identity for the two-variable polynomials at index `n`.
pub fn verify_newton_identity(n: usize) -> bool {
    newton_identity_holds(&compute_witt_polys(2, n), n)
}

/// `S_{p^0}, S_{p^1}, …, S_{p^depth}` in `k_vars` variables.
pub fn prime_power_witt_polys(p: u64, k_vars: usize, depth: usize) -> Result<Vec<ZPoly>, WittPolyError> {
    if !is_prime(p) {
        return Err(WittPolyError::NotPrime(p));
    }
    checked_pow(p, depth as u32).ok_or(WittPolyError::Overflow { p, n: depth })?;
    let mut out: Vec<ZPoly> = Vec::with_capacity(depth + 1);
    for m in 0..=depth {
        let pm = p.pow(m as u32);
        let mut acc = power_sum(k_vars, pm);
        for (i, s) in out.iter().enumerate() {
            let e = p.pow((m - i) as u32);
            let term = s.pow(e).scale(&BigInt::from(p.pow(i as u32)));
            acc = &acc - &term;
        }
        out.push(acc.div_exact(&BigInt::from(pm))?);
    }
    Ok(out)
}

/// A number `num / p^den_exp ∈ [0,1]` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReducedFractionP {
    p: u64,
    num: u64,
    den_exp: u32,
}

impl ReducedFractionP {
    pub fn new(p: u64, num: u64, den_exp: u32) -> Result<Self, WittPolyError> {
        let den = checked_pow(p, den_exp).ok_or(WittPolyError::Overflow { p, n: den_exp as usize })?;
        if !is_prime(p) {
            return Err(WittPolyError::NotPrime(p));
        }
        if num > den {
            return Err(WittPolyError::BadFraction { p, num, den });
        }
        let (mut num, mut den_exp) = (num, den_exp);
        while den_exp > 0 && num % p == 0 {
            num /= p;
            den_exp -= 1;
        }
        Ok(Self { p, num, den_exp })
    }

    /// From an arbitrary `num/den`; fails unless the reduced denominator is a power of `p`.
    pub fn from_ratio(p: u64, num: u64, den: u64) -> Result<Self, WittPolyError> {
        let bad = WittPolyError::BadFraction { p, num, den };
        if den == 0 || num > den {
            return Err(bad);
        }
        let g = num.gcd(&den);
        let (num, mut den) = (num / g, den / g);
        let mut e = 0;
        while den % p == 0 {
            den /= p;
            e += 1;
        }
        if den != 1 {
            return Err(bad);
        }
        Self::new(p, num, e)
    }

    pub fn zero(p: u64) -> Self {
        Self { p, num: 0, den_exp: 0 }
    }

    pub fn one(p: u64) -> Self {
        Self { p, num: 1, den_exp: 0 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }

    pub fn denominator(&self) -> u64 {
        self.p.pow(self.den_exp)
    }

    pub fn one_minus(&self) -> Self {
        Self { p: self.p, num: self.denominator() - self.num, den_exp: self.den_exp }
    }

    pub fn to_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.num, self.denominator())
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.denominator() as f64
    }

    /// Numerator when the fraction is written over `p^n`, `n ≥ den_exp`.
    pub fn numerator_over(&self, n: u32) -> u64 {
        debug_assert!(n >= self.den_exp);
        self.num * self.p.pow(n - self.den_exp)
    }
}

impl PartialOrd for ReducedFractionP {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ReducedFractionP {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_ratio().cmp(&other.to_ratio()).then(self.p.cmp(&other.p))
    }
}

impl fmt::Display for ReducedFractionP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.denominator())
        }
    }
}

/// Expansion coefficients `a(n, m_1..m_k)` of `S_{p^n}` for `n ≤ depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittCoeffTable {
    p: u64,
    k_vars: usize,
    polys: Vec<ZPoly>,
}

impl WittCoeffTable {
    pub fn new(p: u64, k_vars: usize, depth: usize) -> Result<Self, WittPolyError> {
        let polys = prime_power_witt_polys(p, k_vars, depth)?;
        Ok(Self { p, k_vars, polys })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k_vars(&self) -> usize {
        self.k_vars
    }

    pub fn depth(&self) -> usize {
        self.polys.len() - 1
    }

    /// `S_{p^n}`.
    pub fn poly(&self, n: usize) -> &ZPoly {
        &self.polys[n]
    }

    /// `a(n, m)`; zero for exponent tuples outside the support.
    pub fn coeff(&self, n: usize, m: &[u32]) -> BigInt {
        self.polys[n].coeff(m)
    }

    /// `a(n, m) mod p` in `0..p`.
    pub fn coeff_mod_p(&self, n: usize, m: &[u32]) -> u64 {
        let c = self.coeff(n, m).mod_floor(&BigInt::from(self.p));
        c.to_u64().expect("residue fits")
    }

    /// All nonzero entries `((n, m), a(n, m))`, ascending in `n`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, &Monomial), &BigInt)> {
        self.polys.iter().enumerate().flat_map(|(n, s)| s.terms().map(move |(m, c)| ((n, m), c)))
    }

    fn check_depth(&self, order: usize) -> Result<(), WittPolyError> {
        if order > self.polys.len() {
            Err(WittPolyError::DepthExceeded { order, need: order - 1, have: self.depth() })
        } else {
            Ok(())
        }
    }

    /// `w_p(α) mod T^order` for the two-variable table.
    pub fn wp_series(&self, alpha: ReducedFractionP, order: usize) -> Result<TruncSeries, WittPolyError> {
        if self.k_vars != 2 {
            return Err(WittPolyError::ArityMismatch { expected: self.k_vars, found: 2 });
        }
        self.wp_multi_series(&[alpha, alpha.one_minus()], order)
    }

    /// `w_p(α_1, …, α_k) mod T^order`; the `α_j` must sum to one.
    pub fn wp_multi_series(&self, alphas: &[ReducedFractionP], order: usize) -> Result<TruncSeries, WittPolyError> {
        if alphas.len() != self.k_vars {
            return Err(WittPolyError::ArityMismatch { expected: self.k_vars, found: alphas.len() });
        }
        if let Some(a) = alphas.iter().find(|a| a.p != self.p) {
            return Err(WittPolyError::BadFraction { p: self.p, num: a.num, den: a.denominator() });
        }
        let total: Ratio<u64> = alphas.iter().map(|a| a.to_ratio()).sum();
        if total != Ratio::from_integer(1) {
            return Err(WittPolyError::NotAPartition);
        }
        self.check_depth(order)?;
        let n0 = alphas.iter().map(|a| a.den_exp).max().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); order];
        for (n, c) in coeffs.iter_mut().enumerate().skip(n0) {
            let m: Monomial = alphas.iter().map(|a| a.numerator_over(n as u32) as u32).collect();
            *c = BigRational::from_integer(self.coeff_mod_p(n, &m).into());
        }
        Ok(TruncSeries::new(CoeffRing::Fp(self.p), coeffs, order).expect("p is prime"))
    }

    /// Every α ∈ I_p with `w_p(α) ≢ 0 mod T^order`, ascending.
    pub fn wp_support(&self, order: usize) -> Result<Vec<ReducedFractionP>, WittPolyError> {
        self.check_depth(order)?;
        if order == 0 {
            return Ok(Vec::new());
        }
        let top = (order - 1) as u32;
        let den = self.p.pow(top);
        let mut out = Vec::new();
        for k in 0..=den {
            let a = ReducedFractionP::new(self.p, k, top)?;
            if !self.wp_series(a, order)?.is_zero() {
                out.push(a);
            }
        }
        Ok(out)
    }
}

/// Write-once store of computed tables, keyed by `(p, k_vars)` for prime-power
/// tables and by `k_vars` for the full `S_1..S_n` lists. A deeper request
/// replaces the stored entry; results are identical regardless of history.
#[derive(Clone, Debug, Default)]
pub struct WittPolyCache {
    prime_power: BTreeMap<(u64, usize), WittCoeffTable>,
    full: BTreeMap<usize, Vec<ZPoly>>,
}

impl WittPolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&mut self, p: u64, k_vars: usize, depth: usize) -> Result<&WittCoeffTable, WittPolyError> {
        let key = (p, k_vars);
        let stale = self.prime_power.get(&key).is_none_or(|t| t.depth() < depth);
        if stale {
            self.prime_power.insert(key, WittCoeffTable::new(p, k_vars, depth)?);
        }
        Ok(&self.prime_power[&key])
    }

    /// `S_1..S_{n_max}` (possibly a prefix of a longer cached list).
    pub fn witt_polys(&mut self, k_vars: usize, n_max: usize) -> &[ZPoly] {
        let stale = self.full.get(&k_vars).is_none_or(|v| v.len() < n_max);
        if stale {
            self.full.insert(k_vars, compute_witt_polys(k_vars, n_max));
        }
        &self.full[&k_vars][..n_max]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn int_poly(terms: &[(&[u32], i64)]) -> ZPoly {
        let k = terms[0].0.len();
        ZPoly::from_terms(k, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn first_polynomials() {
        let s = compute_witt_polys(2, 4);
        assert_eq!(s[0], int_poly(&[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(s[1], int_poly(&[(&[1, 1], -1)]));
        assert_eq!(s[2], int_poly(&[(&[2, 1], -1), (&[1, 2], -1)]));
        // -xy(x+y)^2
        assert_eq!(s[3], int_poly(&[(&[3, 1], -1), (&[2, 2], -2), (&[1, 3], -1)]));
    }

    #[test]
    fn single_variable_is_trivial() {
        let s = compute_witt_polys(1, 6);
        assert_eq!(s[0], ZPoly::var(1, 0));
        assert!(s[1..].iter().all(ZPoly::is_zero));
    }

    #[test]
    fn homogeneous_and_symmetric() {
        let s = compute_witt_polys(2, 12);
        for (i, p) in s.iter().enumerate() {
            assert!(p.is_homogeneous(i as u32 + 1));
            assert_eq!(p.swap_vars(0, 1), *p);
        }
    }

    #[test]
    fn product_identity_holds_on_prefix() {
        for k in 1..=3 {
            let s = compute_witt_polys(k, 7);
            assert!(product_defect(k, &s).iter().all(ZPoly::is_zero));
        }
        let mut s = compute_witt_polys(2, 5);
        s[3] = &s[3] + &ZPoly::var(2, 0).pow(4);
        assert!(!product_defect(2, &s).iter().all(ZPoly::is_zero));
    }

    #[test]
    fn newton_small_cases() {
        assert!(verify_newton_identity(1));
        assert!(verify_newton_identity(2));
        assert!(verify_newton_identity(12));
        let mut s = compute_witt_polys(2, 4);
        s[1] = s[1].scale(&BigInt::from(2));
        assert!(!newton_identity_holds(&s, 4));
    }

    #[test]
    fn prime_power_route_agrees_with_peeling() {
        for (p, k, depth) in [(2u64, 2usize, 5usize), (3, 2, 3), (5, 2, 2), (2, 3, 4), (3, 3, 2), (7, 2, 1)] {
            let full = compute_witt_polys(k, p.pow(depth as u32) as usize);
            let pp = prime_power_witt_polys(p, k, depth).unwrap();
            for (n, s) in pp.iter().enumerate() {
                assert_eq!(*s, full[p.pow(n as u32) as usize - 1], "p={p} k={k} n={n}");
            }
        }
    }

    #[test]
    fn table_vanishing_and_symmetry() {
        for p in [2u64, 3, 5] {
            let t = WittCoeffTable::new(p, 2, 3).unwrap();
            for n in 1..=3 {
                let pn = p.pow(n as u32) as u32;
                assert!(t.coeff(n, &[0, pn]).is_zero());
                assert!(t.coeff(n, &[pn, 0]).is_zero());
                for k in 0..=pn {
                    assert_eq!(t.coeff(n, &[k, pn - k]), t.coeff(n, &[pn - k, k]));
                }
            }
        }
    }

    fn fp(p: u64, c: &[i64], order: usize) -> TruncSeries {
        TruncSeries::from_ints(CoeffRing::Fp(p), c, order).unwrap()
    }

    #[test]
    fn endpoints_give_one() {
        for p in [2u64, 3, 5] {
            let t = WittCoeffTable::new(p, 2, 3).unwrap();
            let one = TruncSeries::one(CoeffRing::Fp(p), 4);
            assert_eq!(t.wp_series(ReducedFractionP::zero(p), 4).unwrap(), one);
            assert_eq!(t.wp_series(ReducedFractionP::one(p), 4).unwrap(), one);
        }
    }

    #[test]
    fn half_over_two() {
        let t = WittCoeffTable::new(2, 2, 1).unwrap();
        let half = ReducedFractionP::from_ratio(2, 1, 2).unwrap();
        // a(1,1) = -1 from S_2 = -xy
        assert_eq!(t.coeff(1, &[1, 1]), BigInt::from(-1));
        assert_eq!(t.wp_series(half, 2).unwrap(), fp(2, &[0, 1], 2));
    }

    #[test]
    fn fraction_validation() {
        assert!(ReducedFractionP::from_ratio(2, 1, 3).is_err());
        assert!(ReducedFractionP::from_ratio(3, 4, 3).is_err());
        let a = ReducedFractionP::new(3, 6, 2).unwrap();
        assert_eq!((a.numerator(), a.den_exp()), (2, 1));
        assert_eq!(a.to_string(), "2/3");
        assert_eq!(a.one_minus().to_string(), "1/3");
    }

    #[test]
    fn multi_reduces_to_two_variable() {
        let t = WittCoeffTable::new(3, 2, 3).unwrap();
        for k in 0..=27u64 {
            let a = ReducedFractionP::new(3, k, 3).unwrap();
            assert_eq!(t.wp_multi_series(&[a, a.one_minus()], 4).unwrap(), t.wp_series(a, 4).unwrap());
        }
    }

    #[test]
    fn multi_degenerate_partition() {
        let t = WittCoeffTable::new(2, 3, 3).unwrap();
        let (z, o) = (ReducedFractionP::zero(2), ReducedFractionP::one(2));
        let one = TruncSeries::one(CoeffRing::Fp(2), 4);
        for tuple in [[o, z, z], [z, o, z], [z, z, o]] {
            assert_eq!(t.wp_multi_series(&tuple, 4).unwrap(), one);
        }
        let q = ReducedFractionP::from_ratio(2, 1, 4).unwrap();
        assert_eq!(t.wp_multi_series(&[q, q, q], 3), Err(WittPolyError::NotAPartition));
    }

    #[test]
    fn support_small_orders() {
        let t = WittCoeffTable::new(2, 2, 2).unwrap();
        let s1: Vec<_> = t.wp_support(1).unwrap().iter().map(|a| a.to_ratio()).collect();
        assert_eq!(s1, [Ratio::from_integer(0), Ratio::one()]);
        for a in t.wp_support(2).unwrap() {
            assert!(a.den_exp() <= 1);
        }
        assert!(matches!(t.wp_support(4), Err(WittPolyError::DepthExceeded { .. })));
    }

    #[test]
    fn cache_reuses_and_extends() {
        let mut cache = WittPolyCache::new();
        assert_eq!(cache.table(2, 2, 2).unwrap().depth(), 2);
        assert_eq!(cache.table(2, 2, 1).unwrap().depth(), 2);
        assert_eq!(cache.table(2, 2, 4).unwrap().depth(), 4);
        let a = cache.witt_polys(2, 5).to_vec();
        assert_eq!(cache.witt_polys(2, 3), &a[..3]);
    }
}
