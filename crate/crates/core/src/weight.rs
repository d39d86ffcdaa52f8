//! Weight parameters shared by both families.

use crate::error::{Error, Result};
use crate::numeric_core::{PrecisionContext, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// x^λ e^{−x³/3+tx} on (0, ∞).
    GeneralisedAiry,
    /// |x|^{2λ+1} e^{−x⁶+tx²} on ℝ.
    SexticFreud,
}

impl Family {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Family::GeneralisedAiry => "airy",
            Family::SexticFreud => "freud6",
        }
    }
}

/// One weight instance: (t, λ, family) at a working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightParams {
    t: Real,
    lambda: Real,
    family: Family,
    ctx: PrecisionContext,
}

impl WeightParams {
    pub fn new(family: Family, t: Real, lambda: Real, ctx: PrecisionContext) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Domain("t must be finite".into()));
        }
        if !lambda.is_finite() || lambda <= -1 {
            return Err(Error::Domain(format!("lambda must exceed -1, got {}", lambda.to_f64())));
        }
        let prec = ctx.bits().max(t.prec()).max(lambda.prec());
        let w = ctx.with_bits(prec);
        Ok(Self { t: w.round(&t), lambda: w.round(&lambda), family, ctx })
    }

    pub fn airy(t: f64, lambda: f64, ctx: PrecisionContext) -> Result<Self> {
        Self::new(Family::GeneralisedAiry, ctx.real(t), ctx.real(lambda), ctx)
    }

    pub fn freud6(t: f64, lambda: f64, ctx: PrecisionContext) -> Result<Self> {
        Self::new(Family::SexticFreud, ctx.real(t), ctx.real(lambda), ctx)
    }

    #[must_use]
    pub fn t(&self) -> &Real {
        &self.t
    }

    #[must_use]
    pub fn lambda(&self) -> &Real {
        &self.lambda
    }

    #[must_use]
    pub fn family(&self) -> Family {
        self.family
    }

    #[must_use]
    pub fn ctx(&self) -> PrecisionContext {
        self.ctx
    }

    /// λ ↦ λ + s.
    #[must_use]
    pub fn with_lambda_shift(&self, s: u32) -> Self {
        let mut p = self.clone();
        p.lambda += s;
        p
    }

    /// λ ↦ λ + k for real k ≥ 0.
    pub fn with_lambda_offset(&self, k: &Real) -> Result<Self> {
        let lambda = Real::with_val(self.lambda.prec().max(k.prec()), &self.lambda + k);
        Self::new(self.family, self.t.clone(), lambda, self.ctx)
    }

    #[must_use]
    pub fn with_t(&self, t: &Real) -> Self {
        let mut p = self.clone();
        p.t = Real::with_val(self.t.prec().max(t.prec()), t);
        p
    }

    #[must_use]
    pub fn with_ctx(&self, ctx: PrecisionContext) -> Self {
        let mut p = self.clone();
        p.ctx = ctx;
        let prec = ctx.bits().max(p.t.prec()).max(p.lambda.prec());
        p.t.set_prec(prec);
        p.lambda.set_prec(prec);
        p
    }

    #[must_use]
    pub fn with_family(&self, family: Family) -> Self {
        let mut p = self.clone();
        p.family = family;
        p
    }
}
