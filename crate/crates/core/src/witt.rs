//! Truncated `p`-typical Witt vectors `W_N(F_q)`.
//!
//! The addition, multiplication and negation laws are integer polynomials
//! obtained from the ghost components `w_n = Σ_i p^i X_i^{p^{n-i}}`. They are
//! solved once per `(p, N)` over Z, reduced mod `p`, and then evaluated on
//! field elements.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::fq::{FqContext, FqElement, FqError};
use crate::padic::{PadicError, PadicTrunc};
use crate::poly::{PolyError, ZPoly};
use crate::witt_poly::{ReducedFractionP, WittCoeffTable, WittPolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WittError {
    #[error("Witt vectors from different rings: ({p1}, {m1}, N={n1}) vs ({p2}, {m2}, N={n2})")]
    Mismatch { p1: u32, m1: u32, n1: usize, p2: u32, m2: u32, n2: usize },
    #[error("ghost equation {index} has a non-integral solution")]
    NonIntegral { index: usize },
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("operation needs the prime field, got degree {0}")]
    NotPrimeField(u32),
    #[error("expected {expected} components, got {found}")]
    Length { expected: usize, found: usize },
    #[error("empty list of summands")]
    Empty,
    #[error(transparent)]
    Field(#[from] FqError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    WittPoly(#[from] WittPolyError),
}

/// Ghost polynomial `w_n` in the components stored at `offset..offset+n+1`.
fn ghost(p: u64, nvars: usize, offset: usize, n: usize) -> ZPoly {
    let mut acc = ZPoly::zero(nvars);
    for i in 0..=n {
        let term = ZPoly::var(nvars, offset + i).pow(p.pow((n - i) as u32)).scale(&BigInt::from(p.pow(i as u32)));
        acc = &acc + &term;
    }
    acc
}

/// Solves `Σ_{i ≤ n} p^i F_i^{p^{n-i}} = target(n)` for `F_0, …, F_{len-1}`.
fn solve_ghost(p: u64, len: usize, mut target: impl FnMut(usize) -> ZPoly) -> Result<Vec<ZPoly>, WittError> {
    let mut out: Vec<ZPoly> = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = target(n);
        for (i, f) in out.iter().enumerate() {
            let term = f.pow(p.pow((n - i) as u32)).scale(&BigInt::from(p.pow(i as u32)));
            acc = &acc - &term;
        }
        let f = acc.div_exact(&BigInt::from(p.pow(n as u32))).map_err(|e| match e {
            PolyError::NotDivisible { .. } => WittError::NonIntegral { index: n },
            _ => unreachable!("division never changes arity"),
        })?;
        out.push(f);
    }
    Ok(out)
}

/// A polynomial law with coefficients reduced mod `p`, ready for evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ReducedLaw {
    terms: Vec<(Vec<u32>, u32)>,
    max_exp: Vec<u32>,
}

impl ReducedLaw {
    fn new(poly: &ZPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let mut max_exp = vec![0u32; poly.nvars()];
        let mut terms = Vec::new();
        for (m, c) in poly.terms() {
            let r = c.mod_floor(&pb).to_u32().expect("residue fits");
            if r == 0 {
                continue;
            }
            for (mx, &e) in max_exp.iter_mut().zip(m) {
                *mx = (*mx).max(e);
            }
            terms.push((m.clone(), r));
        }
        Self { terms, max_exp }
    }

    fn eval(&self, f: &FqContext, vals: &[FqElement]) -> FqElement {
        let pows: Vec<Vec<FqElement>> = vals
            .iter()
            .zip(&self.max_exp)
            .map(|(&x, &mx)| {
                let mut v = Vec::with_capacity(mx as usize + 1);
                v.push(f.one());
                for k in 1..=mx as usize {
                    v.push(f.mul(v[k - 1], x));
                }
                v
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = f.from_int(*c);
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, pows[v][e as usize]);
                    if t.is_zero() {
                        break;
                    }
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }
}

/// The integer polynomial laws of `W_N` for one prime.
///
/// Add and multiply use variables `X_0..X_{N-1}, Y_0..Y_{N-1}`; negation uses
/// `X_0..X_{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittLaws {
    p: u64,
    n: usize,
    add: Vec<ZPoly>,
    mul: Vec<ZPoly>,
    neg: Vec<ZPoly>,
    add_r: Vec<ReducedLaw>,
    mul_r: Vec<ReducedLaw>,
    neg_r: Vec<ReducedLaw>,
}

impl WittLaws {
    pub fn generate(p: u64, n: usize) -> Result<Self, WittError> {
        if n == 0 {
            return Err(WittError::ZeroPrecision);
        }
        if !crate::arith::is_prime(p) {
            return Err(WittError::WittPoly(WittPolyError::NotPrime(p)));
        }
        let v2 = 2 * n;
        let add = solve_ghost(p, n, |k| &ghost(p, v2, 0, k) + &ghost(p, v2, n, k))?;
        let mul = solve_ghost(p, n, |k| &ghost(p, v2, 0, k) * &ghost(p, v2, n, k))?;
        let neg = solve_ghost(p, n, |k| -&ghost(p, n, 0, k))?;
        let reduce = |v: &[ZPoly]| v.iter().map(|f| ReducedLaw::new(f, p)).collect();
        Ok(Self { p, n, add_r: reduce(&add), mul_r: reduce(&mul), neg_r: reduce(&neg), add, mul, neg })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.n
    }

    /// The `k`-th component of the sum law.
    pub fn add_poly(&self, k: usize) -> &ZPoly {
        &self.add[k]
    }

    pub fn mul_poly(&self, k: usize) -> &ZPoly {
        &self.mul[k]
    }

    pub fn neg_poly(&self, k: usize) -> &ZPoly {
        &self.neg[k]
    }
}

/// An element of `W_N(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittVector {
    p: u32,
    m: u32,
    comps: Vec<FqElement>,
}

impl WittVector {
    pub fn components(&self) -> &[FqElement] {
        &self.comps
    }

    pub fn precision(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }
}

/// `W_N(F_q)` for a fixed field and precision.
#[derive(Clone, Debug)]
pub struct WittRing {
    field: FqContext,
    laws: Arc<WittLaws>,
}

impl WittRing {
    pub fn new(field: FqContext, n: usize) -> Result<Self, WittError> {
        let laws = WittLaws::generate(field.p() as u64, n)?;
        Ok(Self { field, laws: Arc::new(laws) })
    }

    /// Shares already generated laws; their prime must match the field.
    pub fn with_laws(field: FqContext, laws: Arc<WittLaws>) -> Result<Self, WittError> {
        if laws.p != field.p() as u64 {
            return Err(WittError::Mismatch {
                p1: field.p(),
                m1: field.m(),
                n1: laws.n,
                p2: laws.p as u32,
                m2: field.m(),
                n2: laws.n,
            });
        }
        Ok(Self { field, laws })
    }

    pub fn field(&self) -> &FqContext {
        &self.field
    }

    pub fn laws(&self) -> &Arc<WittLaws> {
        &self.laws
    }

    pub fn precision(&self) -> usize {
        self.laws.n
    }

    pub fn vector(&self, comps: Vec<FqElement>) -> Result<WittVector, WittError> {
        if comps.len() != self.precision() {
            return Err(WittError::Length { expected: self.precision(), found: comps.len() });
        }
        Ok(WittVector { p: self.field.p(), m: self.field.m(), comps })
    }

    pub fn zero(&self) -> WittVector {
        self.teichmuller(self.field.zero())
    }

    pub fn one(&self) -> WittVector {
        self.teichmuller(self.field.one())
    }

    /// Teichmüller lift `(x, 0, …, 0)`.
    pub fn teichmuller(&self, x: FqElement) -> WittVector {
        let mut comps = vec![self.field.zero(); self.precision()];
        comps[0] = x;
        WittVector { p: self.field.p(), m: self.field.m(), comps }
    }

    fn check(&self, u: &WittVector) -> Result<(), WittError> {
        if u.p == self.field.p() && u.m == self.field.m() && u.comps.len() == self.precision() {
            Ok(())
        } else {
            Err(WittError::Mismatch {
                p1: self.field.p(),
                m1: self.field.m(),
                n1: self.precision(),
                p2: u.p,
                m2: u.m,
                n2: u.comps.len(),
            })
        }
    }

    fn apply2(&self, laws: &[ReducedLaw], u: &WittVector, v: &WittVector) -> Result<WittVector, WittError> {
        self.check(u)?;
        self.check(v)?;
        let vals: Vec<FqElement> = u.comps.iter().chain(&v.comps).copied().collect();
        let comps = laws.iter().map(|l| l.eval(&self.field, &vals)).collect();
        Ok(WittVector { comps, ..u.clone() })
    }

    pub fn add(&self, u: &WittVector, v: &WittVector) -> Result<WittVector, WittError> {
        self.apply2(&self.laws.add_r, u, v)
    }

    pub fn mul(&self, u: &WittVector, v: &WittVector) -> Result<WittVector, WittError> {
        self.apply2(&self.laws.mul_r, u, v)
    }

    pub fn neg(&self, u: &WittVector) -> Result<WittVector, WittError> {
        self.check(u)?;
        let comps = self.laws.neg_r.iter().map(|l| l.eval(&self.field, &u.comps)).collect();
        Ok(WittVector { comps, ..u.clone() })
    }

    pub fn sub(&self, u: &WittVector, v: &WittVector) -> Result<WittVector, WittError> {
        self.add(u, &self.neg(v)?)
    }

    /// `Σ u_i` by repeated addition.
    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a WittVector>) -> Result<WittVector, WittError> {
        items.into_iter().try_fold(self.zero(), |acc, u| self.add(&acc, u))
    }

    /// `p · u` as a `p`-fold sum.
    pub fn times_p(&self, u: &WittVector) -> Result<WittVector, WittError> {
        self.sum(core::iter::repeat_n(u, self.field.p() as usize))
    }

    /// `p · u = (0, u_0^p, u_1^p, …)`, valid because `F_q` is perfect.
    pub fn times_p_shift(&self, u: &WittVector) -> Result<WittVector, WittError> {
        self.check(u)?;
        let mut comps = vec![self.field.zero(); self.precision()];
        for (c, &x) in comps.iter_mut().skip(1).zip(&u.comps) {
            *c = self.field.frobenius(x);
        }
        Ok(WittVector { comps, ..u.clone() })
    }

    /// Ghost components of an `F_p`-vector lifted to `{0, …, p-1}`; the
    /// `n`-th one is only meaningful modulo `p^{n+1}`.
    pub fn ghost_of_lift(&self, u: &WittVector) -> Result<Vec<BigInt>, WittError> {
        self.check(u)?;
        if self.field.m() != 1 {
            return Err(WittError::NotPrimeField(self.field.m()));
        }
        let p = self.field.p() as u64;
        let lift: Vec<BigInt> = u.comps.iter().map(|c| BigInt::from(c.index())).collect();
        Ok((0..self.precision())
            .map(|n| {
                let mut acc = BigInt::zero();
                for (i, x) in lift.iter().enumerate().take(n + 1) {
                    acc += BigInt::from(p.pow(i as u32)) * num_traits::pow(x.clone(), p.pow((n - i) as u32) as usize);
                }
                acc
            })
            .collect())
    }

    /// Witt components of a residue mod `p^N` (prime field only).
    pub fn to_witt_coordinates(&self, z: &PadicTrunc) -> Result<WittVector, WittError> {
        self.require_prime_field(z)?;
        let comps = z.teichmuller_digits().into_iter().map(|d| self.field.from_int(d as u32)).collect();
        self.vector(comps)
    }

    pub fn from_witt_coordinates(&self, u: &WittVector) -> Result<PadicTrunc, WittError> {
        self.check(u)?;
        if self.field.m() != 1 {
            return Err(WittError::NotPrimeField(self.field.m()));
        }
        let digits: Vec<u64> = u.comps.iter().map(|c| c.index() as u64).collect();
        Ok(PadicTrunc::from_teichmuller_digits(&digits, self.field.p() as u64, self.precision() as u32)?)
    }

    fn require_prime_field(&self, z: &PadicTrunc) -> Result<(), WittError> {
        if self.field.m() != 1 {
            return Err(WittError::NotPrimeField(self.field.m()));
        }
        if z.p() != self.field.p() as u64 || z.precision() as usize != self.precision() {
            return Err(WittError::Mismatch {
                p1: self.field.p(),
                m1: 1,
                n1: self.precision(),
                p2: z.p() as u32,
                m2: 1,
                n2: z.precision() as usize,
            });
        }
        Ok(())
    }

    /// Componentwise image under an embedding of prime fields `F_p ↪ target`.
    pub fn embed_into(&self, target: &WittRing, u: &WittVector) -> Result<WittVector, WittError> {
        self.check(u)?;
        if self.field.m() != 1 || target.field.p() != self.field.p() || target.precision() != self.precision() {
            return Err(WittError::Mismatch {
                p1: self.field.p(),
                m1: self.field.m(),
                n1: self.precision(),
                p2: target.field.p(),
                m2: target.field.m(),
                n2: target.precision(),
            });
        }
        let comps = u.comps.iter().map(|c| target.field.embed_from_prime(c.index())).collect();
        target.vector(comps)
    }

    /// The series `s(T) = Σ_α w_p(α) ∏ x_j^{α_j}` modulo `T^N`, as its
    /// coefficients in `F_q`. The sum runs over all `α` with denominator
    /// `p^{N-1}`, which covers every term surviving the truncation.
    pub fn teich_sum_series(&self, xs: &[FqElement], table: &WittCoeffTable) -> Result<Vec<FqElement>, WittError> {
        if xs.is_empty() {
            return Err(WittError::Empty);
        }
        let n = self.precision();
        let p = self.field.p() as u64;
        let top = (n - 1) as u32;
        let den = p.pow(top);
        let k = xs.len();
        let mut s = vec![self.field.zero(); n];
        let mut parts = vec![0u64; k];
        compositions(den, k, &mut parts, &mut |parts| -> Result<(), WittError> {
            let alphas: Vec<ReducedFractionP> =
                parts.iter().map(|&a| ReducedFractionP::new(p, a, top)).collect::<Result<_, _>>()?;
            let series = table.wp_multi_series(&alphas, n)?;
            let mut mono = self.field.one();
            for (&x, &a) in xs.iter().zip(&alphas) {
                mono = self.field.mul(mono, self.field.fractional_power(x, a));
            }
            if mono.is_zero() {
                return Ok(());
            }
            for (i, c) in series.coeffs().iter().enumerate() {
                let c = c.to_integer().to_u32().expect("F_p residue");
                if c != 0 {
                    s[i] = self.field.add(s[i], self.field.mul(self.field.from_int(c), mono));
                }
            }
            Ok(())
        })?;
        Ok(s)
    }

    /// `Σ_n τ(s_n) p^n` for the series above. Multiplication by `p` is a
    /// `p`-fold sum unless `use_shift` selects the shift identity.
    pub fn teich_sum_rhs(&self, xs: &[FqElement], table: &WittCoeffTable, use_shift: bool) -> Result<WittVector, WittError> {
        let s = self.teich_sum_series(xs, table)?;
        let mut acc = self.zero();
        for (n, &sn) in s.iter().enumerate() {
            let mut t = self.teichmuller(sn);
            for _ in 0..n {
                t = if use_shift { self.times_p_shift(&t)? } else { self.times_p(&t)? };
            }
            acc = self.add(&acc, &t)?;
        }
        Ok(acc)
    }

    /// Compares `Σ τ(x_j)` with [`teich_sum_rhs`](Self::teich_sum_rhs)
    /// (computed both ways).
    pub fn verify_teich_sum(&self, xs: &[FqElement], table: &WittCoeffTable) -> Result<TeichSumReport, WittError> {
        let lhs = self.sum(xs.iter().map(|&x| self.teichmuller(x)).collect::<Vec<_>>().iter())?;
        let rhs = self.teich_sum_rhs(xs, table, false)?;
        let rhs_shift = self.teich_sum_rhs(xs, table, true)?;
        let shift_agrees = rhs == rhs_shift;
        let equal = lhs == rhs && shift_agrees;
        Ok(TeichSumReport { xs: xs.to_vec(), lhs, rhs, shift_agrees, equal })
    }
}

/// Both sides of a Teichmüller sum check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeichSumReport {
    pub xs: Vec<FqElement>,
    pub lhs: WittVector,
    pub rhs: WittVector,
    pub shift_agrees: bool,
    pub equal: bool,
}

/// Calls `f` on every `k`-tuple of non-negative integers summing to `total`.
fn compositions<E>(
    total: u64,
    k: usize,
    buf: &mut [u64],
    f: &mut impl FnMut(&[u64]) -> Result<(), E>,
) -> Result<(), E> {
    fn rec<E>(i: usize, left: u64, buf: &mut [u64], f: &mut impl FnMut(&[u64]) -> Result<(), E>) -> Result<(), E> {
        if i + 1 == buf.len() {
            buf[i] = left;
            return f(buf);
        }
        for a in 0..=left {
            buf[i] = a;
            rec(i + 1, left - a, buf, f)?;
        }
        Ok(())
    }
    debug_assert_eq!(buf.len(), k);
    rec(0, total, buf, f)
}
