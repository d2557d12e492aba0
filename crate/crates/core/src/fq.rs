//! Finite fields `F_{p^m}` in a polynomial basis.
//!
//! An element is packed into a `u32` as its base-`p` digit string: digit `i`
//! is the coefficient of `X^i` modulo the defining polynomial. The context
//! carries the arithmetic (and a multiplication table for small fields).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::is_prime;
use crate::witt_poly::ReducedFractionP;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FqError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus must be monic of degree {0}")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("field of order {p}^{m} is too large")]
    TooLarge { p: u32, m: u32 },
    #[error("no shipped modulus for F_{p}^{m}")]
    NoFixture { p: u32, m: u32 },
    #[error("coefficient vector has length {found}, expected {expected}")]
    BadCoeffs { expected: usize, found: usize },
}

/// An element of some `F_q`; only meaningful together with its [`FqContext`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElement(u32);

impl FqElement {
    pub const ZERO: FqElement = FqElement(0);

    /// Packed index in `0..q`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

const TABLE_LIMIT: u32 = 1024;

/// The field `F_p[X]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqContext {
    p: u32,
    m: u32,
    q: u32,
    /// Monic, lowest degree first, length `m + 1`.
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
}

/// Shipped irreducible moduli (lowest coefficient first).
fn fixture_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    Some(match (p, m) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (3, 2) => vec![1, 0, 1],
        (5, 2) => vec![2, 0, 1],
        (7, 2) => vec![1, 0, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (3, 3) => vec![1, 2, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        _ => return None,
    })
}

impl FqContext {
    /// Field with a caller-supplied modulus; irreducibility is verified.
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, FqError> {
        if !is_prime(p as u64) {
            return Err(FqError::NotPrime(p));
        }
        if m == 0 || modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FqError::BadModulus(m));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= u32::MAX as u64 / 2).ok_or(FqError::TooLarge { p, m })? as u32;
        if !irreducible(p, &modulus) {
            return Err(FqError::Reducible(p));
        }
        let mut ctx = Self { p, m, q, modulus, mul_table: None };
        if q <= TABLE_LIMIT {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let c = ctx.mul_slow(FqElement(a), FqElement(b)).0;
                    t[(a * q + b) as usize] = c;
                    t[(b * q + a) as usize] = c;
                }
            }
            ctx.mul_table = Some(t);
        }
        Ok(ctx)
    }

    /// Field using a shipped modulus.
    pub fn fixture(p: u32, m: u32) -> Result<Self, FqError> {
        let modulus = fixture_modulus(p, m).ok_or(FqError::NoFixture { p, m })?;
        Self::new(p, m, modulus)
    }

    pub fn prime_field(p: u32) -> Result<Self, FqError> {
        Self::fixture(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElement {
        FqElement(0)
    }

    pub fn one(&self) -> FqElement {
        FqElement(1)
    }

    /// The class of `X` (for `m = 1` this is `-modulus[0]`, i.e. 0).
    pub fn generator(&self) -> FqElement {
        if self.m == 1 {
            self.from_int((self.p - self.modulus[0]) % self.p)
        } else {
            FqElement(self.p)
        }
    }

    /// Image of an integer under `Z → F_p ⊂ F_q`.
    pub fn from_int(&self, c: u32) -> FqElement {
        FqElement(c % self.p)
    }

    /// Element with the given polynomial-basis coordinates (length `m`).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElement, FqError> {
        if coeffs.len() != self.m as usize {
            return Err(FqError::BadCoeffs { expected: self.m as usize, found: coeffs.len() });
        }
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        Ok(FqElement(idx))
    }

    pub fn coeffs(&self, x: FqElement) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.m as usize);
        let mut idx = x.0;
        for _ in 0..self.m {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.q).map(FqElement)
    }

    /// Returns the element if it lies in the prime field.
    pub fn as_prime(&self, x: FqElement) -> Option<u32> {
        (x.0 < self.p).then_some(x.0)
    }

    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.m == 1 {
            return FqElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FqElement(out)
    }

    pub fn neg(&self, a: FqElement) -> FqElement {
        let c: Vec<u32> = self.coeffs(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.from_coeffs(&c).expect("length m")
    }

    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        match &self.mul_table {
            Some(t) => FqElement(t[(a.0 * self.q + b.0) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: FqElement, b: FqElement) -> FqElement {
        let p = self.p as u64;
        let m = self.m as usize;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (k, &mk) in self.modulus.iter().enumerate().take(m) {
                let at = top - m + k;
                prod[at] = (prod[at] + (p - c) * mk as u64) % p;
            }
            prod[top] = 0;
        }
        let c: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.from_coeffs(&c).expect("length m")
    }

    /// Multiplies by an integer.
    pub fn scale(&self, a: FqElement, k: u64) -> FqElement {
        self.mul(a, self.from_int((k % self.p as u64) as u32))
    }

    pub fn pow(&self, a: FqElement, mut e: u64) -> FqElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^{-1}`; zero maps to zero.
    pub fn inv(&self, a: FqElement) -> FqElement {
        self.pow(a, self.q as u64 - 2)
    }

    /// Frobenius `x ↦ x^p`.
    pub fn frobenius(&self, x: FqElement) -> FqElement {
        self.pow(x, self.p as u64)
    }

    /// The unique `y` with `y^{p^n} = x`. Frobenius has order `m`, so this is
    /// `x^{p^{mn - n}}`, computed as `(m - n mod m) mod m` Frobenius steps.
    pub fn frob_inverse(&self, x: FqElement, n: u64) -> FqElement {
        let m = self.m as u64;
        let steps = (m - n % m) % m;
        (0..steps).fold(x, |y, _| self.frobenius(y))
    }

    /// `x^α` for `α = k/p^n`: `(x^{1/p^n})^k`, with `x^0 = 1` for every `x`.
    pub fn fractional_power(&self, x: FqElement, alpha: ReducedFractionP) -> FqElement {
        let root = self.frob_inverse(x, alpha.den_exp() as u64);
        self.pow(root, alpha.numerator())
    }

    /// Embeds `F_p` into this field (the inclusion of prime fields).
    pub fn embed_from_prime(&self, c: u32) -> FqElement {
        self.from_int(c)
    }

    /// Renders an element as its coefficient list.
    pub fn display(&self, x: FqElement) -> FqDisplay<'_> {
        FqDisplay { ctx: self, x }
    }
}

pub struct FqDisplay<'a> {
    ctx: &'a FqContext,
    x: FqElement,
}

impl fmt::Display for FqDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.m == 1 {
            return write!(f, "{}", self.x.0);
        }
        let c = self.ctx.coeffs(self.x);
        f.write_str("[")?;
        for (i, v) in c.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// `true` iff the monic polynomial has no monic factor of degree `1..=deg/2`.
fn irreducible(p: u32, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                f.push((k % p as u64) as u32);
                k /= p as u64;
            }
            f.push(1);
            if poly_rem_is_zero(p, modulus, &f) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, num: &[u32], monic_div: &[u32]) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let d = monic_div.len() - 1;
    for top in (d..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (k, &mk) in monic_div.iter().enumerate() {
            let at = top - d + k;
            r[at] = (r[at] + (p - c) * mk as u64 % p) % p;
        }
    }
    r[..d].iter().all(|&c| c == 0)
}
