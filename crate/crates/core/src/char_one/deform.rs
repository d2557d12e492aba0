use alloc::vec::Vec;

use super::maxplus::{entropy, MaxPlusElem};
use super::CharOneError;

/// Temperature `T ≥ 0`; the deformation parameter is `ρ = e^T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeformContext {
    t: f64,
}

impl DeformContext {
    pub fn new(t: f64) -> Result<Self, CharOneError> {
        if t.is_nan() || t < 0.0 || t.is_infinite() {
            return Err(CharOneError::BadTemperature(t));
        }
        Ok(Self { t })
    }

    pub fn temperature(self) -> f64 {
        self.t
    }

    pub fn rho(self) -> f64 {
        libm::exp(self.t)
    }

    /// `ρ^a`, i.e. the element with `logval = T a`.
    pub fn rho_pow(self, a: f64) -> MaxPlusElem {
        MaxPlusElem::from_log(self.t * a).expect("finite exponent")
    }

    /// Exponent `a` with `x = ρ^a`.
    pub fn rho_exponent(self, x: MaxPlusElem) -> f64 {
        x.logval() / self.t
    }
}

/// `T log(e^{a/T} + e^{b/T})` with the larger term factored out.
fn smooth_max(a: f64, b: f64, t: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if t == 0.0 {
        return hi;
    }
    hi + t * libm::log1p(libm::exp((lo - hi) / t))
}

/// `σ_n(x, y) = Sup_{α ∈ I(n)} ρ^{S(α)} x^α y^{1-α}`, where `x^1 y^0 = x` and
/// `x^0 y^1 = y` even when the other factor is zero.
pub fn deform_partial_sum(x: MaxPlusElem, y: MaxPlusElem, n: u32, ctx: DeformContext) -> Result<MaxPlusElem, CharOneError> {
    if n == 0 {
        return Err(CharOneError::ZeroTerms);
    }
    let (lx, ly) = (x.logval(), y.logval());
    let mut best = lx.max(ly);
    if !x.is_zero() && !y.is_zero() {
        for k in 1..n {
            let alpha = k as f64 / n as f64;
            let s = entropy(alpha).expect("alpha in range");
            let v = ctx.t * s + alpha * lx + (1.0 - alpha) * ly;
            best = best.max(v);
        }
    }
    MaxPlusElem::from_log(best)
}

/// `x +_w y = (x^{1/T} + y^{1/T})^T`, with `T = 0` giving `max`.
pub fn deform_add(x: MaxPlusElem, y: MaxPlusElem, ctx: DeformContext) -> MaxPlusElem {
    MaxPlusElem::from_log(smooth_max(x.logval(), y.logval(), ctx.t)).expect("finite")
}

/// Left fold of [`deform_add`]; the empty sum is zero.
pub fn deform_sum(items: impl IntoIterator<Item = MaxPlusElem>, ctx: DeformContext) -> MaxPlusElem {
    items.into_iter().fold(MaxPlusElem::ZERO, |acc, x| deform_add(acc, x, ctx))
}

/// `d(x, y) = |log x - log y| / T` on nonzero elements.
pub fn rho_metric(x: MaxPlusElem, y: MaxPlusElem, ctx: DeformContext) -> Result<f64, CharOneError> {
    if x.is_zero() || y.is_zero() {
        return Err(CharOneError::ZeroInMetric);
    }
    if ctx.t == 0.0 {
        return Err(CharOneError::BadTemperature(0.0));
    }
    Ok(libm::fabs(x.logval() - y.logval()) / ctx.t)
}

/// A positive function on a finite point set, or the adjoined zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FnSemiringElem {
    values: Option<Vec<f64>>,
}

impl FnSemiringElem {
    pub fn zero() -> Self {
        Self { values: None }
    }

    pub fn new(values: Vec<f64>) -> Result<Self, CharOneError> {
        if let Some(&v) = values.iter().find(|v| v.is_nan() || **v <= 0.0 || v.is_infinite()) {
            return Err(CharOneError::NotFinite(v));
        }
        Ok(Self { values: Some(values) })
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_none()
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    fn logs(&self) -> Option<Vec<f64>> {
        self.values.as_ref().map(|v| v.iter().map(|&x| libm::log(x)).collect())
    }
}

fn pointwise(
    f: &FnSemiringElem,
    g: &FnSemiringElem,
    temps: &[f64],
    mut op: impl FnMut(MaxPlusElem, MaxPlusElem, DeformContext) -> Result<MaxPlusElem, CharOneError>,
) -> Result<FnSemiringElem, CharOneError> {
    for &t in temps {
        DeformContext::new(t)?;
    }
    let (lf, lg) = match (f.logs(), g.logs()) {
        (None, _) => return Ok(g.clone()),
        (_, None) => return Ok(f.clone()),
        (Some(a), Some(b)) => (a, b),
    };
    if lf.len() != lg.len() || lf.len() != temps.len() {
        return Err(CharOneError::DomainMismatch { left: lf.len(), right: lg.len(), temps: temps.len() });
    }
    let mut out = Vec::with_capacity(lf.len());
    for ((&a, &b), &t) in lf.iter().zip(&lg).zip(temps) {
        let ctx = DeformContext::new(t)?;
        let r = op(MaxPlusElem::from_log(a)?, MaxPlusElem::from_log(b)?, ctx)?;
        out.push(r.value());
    }
    FnSemiringElem::new(out)
}

/// `(f +_w g)(x) = (f(x)^{1/T(x)} + g(x)^{1/T(x)})^{T(x)}`.
pub fn fn_semiring_deform_add(f: &FnSemiringElem, g: &FnSemiringElem, temps: &[f64]) -> Result<FnSemiringElem, CharOneError> {
    pointwise(f, g, temps, |a, b, ctx| Ok(deform_add(a, b, ctx)))
}

/// Pointwise partial sum `σ_n`.
pub fn fn_semiring_partial_sum(
    f: &FnSemiringElem,
    g: &FnSemiringElem,
    temps: &[f64],
    n: u32,
) -> Result<FnSemiringElem, CharOneError> {
    pointwise(f, g, temps, |a, b, ctx| deform_partial_sum(a, b, n, ctx))
}
