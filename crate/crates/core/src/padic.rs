//! Integers modulo `p^N`, used as an independent model of `W_N(F_p)`.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::{checked_pow, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p}^{n} does not fit in 32 bits")]
    TooLarge { p: u64, n: u32 },
    #[error("precision mismatch: ({p}, {n}) vs ({q}, {m})")]
    Mismatch { p: u64, n: u32, q: u64, m: u32 },
}

/// `value mod p^n`, always stored in `0..p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicTrunc {
    value: u64,
    p: u64,
    n: u32,
}

impl PadicTrunc {
    /// Moduli are kept below `2^32` so products fit in `u64`.
    pub fn new(value: u64, p: u64, n: u32) -> Result<Self, PadicError> {
        let m = Self::modulus_of(p, n)?;
        Ok(Self { value: value % m, p, n })
    }

    pub fn from_i64(value: i64, p: u64, n: u32) -> Result<Self, PadicError> {
        let m = Self::modulus_of(p, n)?;
        Ok(Self { value: value.rem_euclid(m as i64) as u64, p, n })
    }

    fn modulus_of(p: u64, n: u32) -> Result<u64, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        checked_pow(p, n).filter(|&m| m <= u32::MAX as u64).ok_or(PadicError::TooLarge { p, n })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    fn with(&self, value: u64) -> Self {
        Self { value: value % self.modulus(), ..*self }
    }

    fn check(&self, other: &Self) -> Result<(), PadicError> {
        if self.p == other.p && self.n == other.n {
            Ok(())
        } else {
            Err(PadicError::Mismatch { p: self.p, n: self.n, q: other.p, m: other.n })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(self.with(self.value + other.value))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(self.with(self.value + self.modulus() - other.value))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(self.with(self.value * other.value))
    }

    pub fn neg(&self) -> Self {
        self.with(self.modulus() - self.value)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let m = self.modulus();
        let (mut base, mut acc) = (self.value, 1 % m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        self.with(acc)
    }

    /// Teichmüller representative of `x mod p`: the limit of `y ↦ y^p`
    /// starting from `x`, which is stationary after `n` steps.
    pub fn teichmuller(x: u64, p: u64, n: u32) -> Result<Self, PadicError> {
        let mut y = Self::new(x % p, p, n)?;
        for _ in 0..n {
            y = y.pow(p);
        }
        Ok(y)
    }

    /// Digits `d_0, d_1, …` with `self = Σ τ(d_i) p^i`. Over `F_p` these are
    /// exactly the Witt components.
    pub fn teichmuller_digits(&self) -> Vec<u64> {
        let mut digits = Vec::with_capacity(self.n as usize);
        let mut rest = *self;
        for _ in 0..self.n {
            let d = rest.value % self.p;
            digits.push(d);
            let t = Self::teichmuller(d, self.p, self.n).expect("valid precision");
            let diff = rest.sub(&t).expect("same precision");
            rest = self.with(diff.value / self.p);
        }
        digits
    }

    /// Inverse of [`teichmuller_digits`](Self::teichmuller_digits).
    pub fn from_teichmuller_digits(digits: &[u64], p: u64, n: u32) -> Result<Self, PadicError> {
        let mut acc = Self::new(0, p, n)?;
        let mut place = Self::new(1, p, n)?;
        let pp = Self::new(p, p, n)?;
        for &d in digits.iter().take(n as usize) {
            let t = Self::teichmuller(d, p, n)?;
            acc = acc.add(&t.mul(&place)?)?;
            place = place.mul(&pp)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for PadicTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.n)
    }
}
