//! Symmetrization of `(R_max, +_w, ·)` into a ring.
//!
//! Pairs `(a, b)` stand for `a - b`. For `T > 0` the deformed semiring is
//! isomorphic to `([0, ∞), +, ·)` through `χ_T(x) = x^{1/T}`, so the class of
//! a pair is determined by the real number `χ_T(a) - χ_T(b)`.

use crate::char_one::{deform_add, DeformContext, MaxPlusElem};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymError {
    #[error("symmetrization needs T > 0")]
    ZeroTemperature,
    #[error("pairs built at different temperatures: {0} vs {1}")]
    ContextMismatch(f64, f64),
    #[error("{0} is not a finite real")]
    NotFinite(f64),
}

/// A pair `(pos, neg)` representing `pos - neg`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymPair {
    pos: MaxPlusElem,
    neg: MaxPlusElem,
    ctx: DeformContext,
}

/// Canonical representative of a class: a signed real.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct SignedValue(pub f64);

impl SignedValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `χ_T(x) = exp(log x / T)`, with `χ_T(0) = 0`.
pub fn chi_t(x: MaxPlusElem, ctx: DeformContext) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        libm::exp(x.logval() / ctx.temperature())
    }
}

fn nondegenerate(ctx: DeformContext) -> Result<(), SymError> {
    if ctx.temperature() > 0.0 {
        Ok(())
    } else {
        Err(SymError::ZeroTemperature)
    }
}

impl SymPair {
    pub fn new(pos: MaxPlusElem, neg: MaxPlusElem, ctx: DeformContext) -> Result<Self, SymError> {
        nondegenerate(ctx)?;
        Ok(Self { pos, neg, ctx })
    }

    pub fn zero(ctx: DeformContext) -> Result<Self, SymError> {
        Self::new(MaxPlusElem::ZERO, MaxPlusElem::ZERO, ctx)
    }

    pub fn one(ctx: DeformContext) -> Result<Self, SymError> {
        Self::new(MaxPlusElem::ONE, MaxPlusElem::ZERO, ctx)
    }

    pub fn pos(&self) -> MaxPlusElem {
        self.pos
    }

    pub fn neg_part(&self) -> MaxPlusElem {
        self.neg
    }

    pub fn ctx(&self) -> DeformContext {
        self.ctx
    }

    fn same_ctx(&self, other: &Self) -> Result<(), SymError> {
        let (a, b) = (self.ctx.temperature(), other.ctx.temperature());
        if a == b {
            Ok(())
        } else {
            Err(SymError::ContextMismatch(a, b))
        }
    }
}

/// `(a, b) + (c, d) = (a +_w c, b +_w d)`.
pub fn sym_add(p: &SymPair, q: &SymPair) -> Result<SymPair, SymError> {
    p.same_ctx(q)?;
    Ok(SymPair { pos: deform_add(p.pos, q.pos, p.ctx), neg: deform_add(p.neg, q.neg, p.ctx), ctx: p.ctx })
}

/// `(a, b)(c, d) = (ac +_w bd, ad +_w bc)`.
pub fn sym_mul(p: &SymPair, q: &SymPair) -> Result<SymPair, SymError> {
    p.same_ctx(q)?;
    let c = p.ctx;
    Ok(SymPair {
        pos: deform_add(p.pos.mul(q.pos), p.neg.mul(q.neg), c),
        neg: deform_add(p.pos.mul(q.neg), p.neg.mul(q.pos), c),
        ctx: c,
    })
}

pub fn sym_neg(p: &SymPair) -> SymPair {
    SymPair { pos: p.neg, neg: p.pos, ctx: p.ctx }
}

pub fn canonical(p: &SymPair) -> SignedValue {
    SignedValue(chi_t(p.pos, p.ctx) - chi_t(p.neg, p.ctx))
}

/// `r(s) = (ρ^{log s}, 0)` for `s ≥ 0` and `(0, ρ^{log |s|})` otherwise.
pub fn r_embed(s: f64, ctx: DeformContext) -> Result<SymPair, SymError> {
    nondegenerate(ctx)?;
    if !s.is_finite() {
        return Err(SymError::NotFinite(s));
    }
    let t = ctx.temperature();
    let part = if s == 0.0 {
        MaxPlusElem::ZERO
    } else {
        MaxPlusElem::from_log(t * libm::log(libm::fabs(s))).map_err(|_| SymError::NotFinite(s))?
    };
    if s >= 0.0 {
        SymPair::new(part, MaxPlusElem::ZERO, ctx)
    } else {
        SymPair::new(MaxPlusElem::ZERO, part, ctx)
    }
}

/// `||x|| = Inf{λ | x ≤ ρ^{log λ}} = χ_T(x)`.
pub fn seminorm(x: MaxPlusElem, ctx: DeformContext) -> Result<f64, SymError> {
    nondegenerate(ctx)?;
    Ok(chi_t(x, ctx))
}

/// `||(a, b)||_1 = ||a|| + ||b||`.
pub fn pair_norm(p: &SymPair) -> f64 {
    chi_t(p.pos, p.ctx) + chi_t(p.neg, p.ctx)
}

/// Infimum of `||·||_1` over the class, attained at `(|v|, 0)` or `(0, |v|)`.
pub fn quotient_norm(p: &SymPair) -> f64 {
    libm::fabs(canonical(p).0)
}

/// Margin `log(1 +_w x) - (T β + log x)` with `β = log(e^{-n} + 1)`; it is
/// non-negative whenever `x ≤ ρ^n`.
pub fn unit_shift_margin(x: MaxPlusElem, n: f64, ctx: DeformContext) -> Result<f64, SymError> {
    nondegenerate(ctx)?;
    let t = ctx.temperature();
    let beta = libm::log1p(libm::exp(-n));
    Ok(deform_add(MaxPlusElem::ONE, x, ctx).logval() - (t * beta + x.logval()))
}
