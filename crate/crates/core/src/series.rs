//! Truncated univariate power series over Z, Q or F_p.
//!
//! Coefficients are stored as exact rationals normalized for the declared
//! ring: integers for Z, residues in `0..p` for F_p. The truncation order is
//! carried by every value and never grows implicitly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::is_prime;

/// Coefficient ring of a [`TruncSeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Z,
    Q,
    Fp(u64),
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Z => f.write_str("Z"),
            CoeffRing::Q => f.write_str("Q"),
            CoeffRing::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(CoeffRing, CoeffRing),
    #[error("constant term {0} is not a unit in {1}")]
    NonUnit(BigRational, CoeffRing),
    #[error("coefficient {0} does not belong to {1}")]
    NotInRing(BigRational, CoeffRing),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Power series `Σ c_i T^i` known modulo `T^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    ring: CoeffRing,
    coeffs: Vec<BigRational>,
}

fn reduce_mod(c: &BigRational, p: u64) -> Option<BigRational> {
    let p = BigInt::from(p);
    let num = c.numer().mod_floor(&p);
    let den = c.denom().mod_floor(&p);
    if den.is_zero() {
        return None;
    }
    let inv = den.modpow(&(&p - 2u32), &p);
    Some(BigRational::from_integer((num * inv).mod_floor(&p)))
}

impl TruncSeries {
    /// Builds a series of the given order; missing coefficients are zero and
    /// extra ones are dropped. Rational input is reduced into F_p when its
    /// denominator is prime to p.
    pub fn new(ring: CoeffRing, coeffs: Vec<BigRational>, order: usize) -> Result<Self, SeriesError> {
        if let CoeffRing::Fp(p) = ring {
            if !is_prime(p) {
                return Err(SeriesError::NotPrime(p));
            }
        }
        let mut out = Vec::with_capacity(order);
        for c in coeffs.into_iter().take(order) {
            out.push(Self::normalize(ring, c)?);
        }
        out.resize(order, BigRational::zero());
        Ok(Self { ring, coeffs: out })
    }

    pub fn from_ints(ring: CoeffRing, coeffs: &[i64], order: usize) -> Result<Self, SeriesError> {
        Self::new(ring, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), order)
    }

    fn normalize(ring: CoeffRing, c: BigRational) -> Result<BigRational, SeriesError> {
        match ring {
            CoeffRing::Q => Ok(c),
            CoeffRing::Z if c.is_integer() => Ok(c),
            CoeffRing::Z => Err(SeriesError::NotInRing(c, ring)),
            CoeffRing::Fp(p) => reduce_mod(&c, p).ok_or(SeriesError::NotInRing(c, ring)),
        }
    }

    pub fn zero(ring: CoeffRing, order: usize) -> Self {
        Self { ring, coeffs: vec![BigRational::zero(); order] }
    }

    /// The unit series truncated at `order`.
    pub fn one(ring: CoeffRing, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if order > 0 {
            s.coeffs[0] = BigRational::one();
        }
        s
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(order);
        s
    }

    fn same_ring(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(SeriesError::RingMismatch(self.ring, other.ring))
        }
    }

    fn fix(&self, c: BigRational) -> BigRational {
        match self.ring {
            CoeffRing::Fp(p) => reduce_mod(&c, p).expect("integral value"),
            _ => c,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..n).map(|i| self.fix(&self.coeffs[i] + &other.coeffs[i])).collect();
        Ok(Self { ring: self.ring, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..n).map(|i| self.fix(&self.coeffs[i] - &other.coeffs[i])).collect();
        Ok(Self { ring: self.ring, coeffs })
    }

    /// Product modulo `T^min(order)`.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_ring(other)?;
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += a * b;
            }
        }
        let coeffs = coeffs.into_iter().map(|c| self.fix(c)).collect();
        Ok(Self { ring: self.ring, coeffs })
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self, SeriesError> {
        let c = Self::normalize(self.ring, c.clone())?;
        let coeffs = self.coeffs.iter().map(|a| self.fix(a * &c)).collect();
        Ok(Self { ring: self.ring, coeffs })
    }

    /// Multiplicative inverse modulo `T^order`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0 = &self.coeffs[0];
        let unit = match self.ring {
            CoeffRing::Z => c0.is_integer() && c0.abs().is_one(),
            CoeffRing::Q | CoeffRing::Fp(_) => !c0.is_zero(),
        };
        if !unit {
            return Err(SeriesError::NonUnit(c0.clone(), self.ring));
        }
        let inv0 = self.fix(c0.recip());
        let mut out = vec![BigRational::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = self.fix(-(acc * &inv0));
        }
        Ok(Self { ring: self.ring, coeffs: out })
    }

    /// Reduces an integer series modulo a prime.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Self, SeriesError> {
        if self.ring != CoeffRing::Z {
            return Err(SeriesError::RingMismatch(self.ring, CoeffRing::Z));
        }
        Self::new(CoeffRing::Fp(p), self.coeffs.clone(), self.order())
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*T")?,
                _ => write!(f, "{c}*T^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(T^{})", self.order())
    }
}
