use core::cmp::Ordering;
use core::fmt;

use super::CharOneError;

/// An element of `R_max = ([0, ∞), max, ·)` stored as its logarithm.
/// `logval = -∞` is the zero element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxPlusElem {
    logval: f64,
}

#[allow(clippy::should_implement_trait)]
impl MaxPlusElem {
    pub const ZERO: MaxPlusElem = MaxPlusElem { logval: f64::NEG_INFINITY };
    pub const ONE: MaxPlusElem = MaxPlusElem { logval: 0.0 };

    pub fn from_log(logval: f64) -> Result<Self, CharOneError> {
        if logval.is_nan() || logval == f64::INFINITY {
            return Err(CharOneError::NotFinite(logval));
        }
        Ok(Self { logval })
    }

    pub fn from_value(x: f64) -> Result<Self, CharOneError> {
        if x.is_nan() || x < 0.0 || x.is_infinite() {
            return Err(CharOneError::NotFinite(x));
        }
        Ok(Self { logval: libm::log(x) })
    }

    pub fn logval(self) -> f64 {
        self.logval
    }

    pub fn value(self) -> f64 {
        libm::exp(self.logval)
    }

    pub fn is_zero(self) -> bool {
        self.logval == f64::NEG_INFINITY
    }

    /// Idempotent addition (max).
    pub fn add(self, other: Self) -> Self {
        Self { logval: self.logval.max(other.logval) }
    }

    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        Self { logval: self.logval + other.logval }
    }

    pub fn pow(self, n: u32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        if self.is_zero() {
            return Self::ZERO;
        }
        Self { logval: self.logval * n as f64 }
    }

    /// `x ≤ y` for the canonical order, i.e. `x + y = y`.
    pub fn leq(self, other: Self) -> bool {
        self.logval <= other.logval
    }

    /// Frobenius `θ_λ(x) = x^λ`, `λ > 0`.
    pub fn theta(self, lambda: f64) -> Result<Self, CharOneError> {
        if lambda.is_nan() || lambda <= 0.0 || lambda.is_infinite() {
            return Err(CharOneError::BadExponent(lambda));
        }
        if self.is_zero() {
            return Ok(Self::ZERO);
        }
        Ok(Self { logval: self.logval * lambda })
    }
}

impl PartialOrd for MaxPlusElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.logval.partial_cmp(&other.logval)
    }
}

impl fmt::Display for MaxPlusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "e^{}", self.logval)
        }
    }
}

/// `-α log α - (1-α) log(1-α)`, zero at the endpoints.
pub fn entropy(alpha: f64) -> Result<f64, CharOneError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CharOneError::AlphaOutOfRange(alpha));
    }
    Ok(xlogx_neg(alpha) + xlogx_neg(1.0 - alpha))
}

fn xlogx_neg(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        -x * libm::log(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(l: f64) -> MaxPlusElem {
        MaxPlusElem::from_log(l).unwrap()
    }

    #[test]
    fn entropy_values() {
        let ln2 = core::f64::consts::LN_2;
        assert!((entropy(0.5).unwrap() - ln2).abs() < 1e-15);
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert_eq!(entropy(1.0).unwrap(), 0.0);
        let third = 1.0 / 3.0;
        assert!((entropy(third).unwrap() - (libm::log(3.0) - 2.0 / 3.0 * ln2)).abs() < 1e-15);
        assert!(entropy(1.5).is_err());
        assert!(entropy(f64::NAN).is_err());
    }

    #[test]
    fn idempotent_and_zero_sum_free() {
        let a = e(0.7);
        assert_eq!(a.add(a), a);
        let z = MaxPlusElem::ZERO;
        assert!(z.add(z).is_zero());
        assert!(!a.add(z).is_zero());
        assert_eq!(a.add(z), a);
        assert!(a.mul(z).is_zero());
    }

    #[test]
    fn frobenius_and_theta() {
        let (x, y) = (e(1.25), e(-0.5));
        for n in 1..6 {
            assert_eq!(x.add(y).pow(n), x.pow(n).add(y.pow(n)));
        }
        let (l, m) = (0.5, 4.0);
        assert_eq!(x.mul(y).theta(l).unwrap(), x.theta(l).unwrap().mul(y.theta(l).unwrap()));
        assert_eq!(x.theta(l).unwrap().theta(m).unwrap(), x.theta(l * m).unwrap());
        assert!(x.theta(0.0).is_err());
        assert!(x.theta(-1.0).is_err());
    }

    #[test]
    fn order_is_least_upper_bound() {
        let (x, y) = (e(0.1), e(0.3));
        let s = x.add(y);
        assert!(x.leq(s) && y.leq(s));
        assert!(MaxPlusElem::ZERO.leq(x));
        assert!(MaxPlusElem::from_log(f64::NAN).is_err());
        assert!(MaxPlusElem::from_value(-1.0).is_err());
        assert!(MaxPlusElem::from_value(0.0).unwrap().is_zero());
    }
}
