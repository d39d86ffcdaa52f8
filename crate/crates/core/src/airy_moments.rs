//! Moments of x^λ e^{−x³/3+tx} on (0, ∞).
//!
//! μ_k(t;λ) = μ_0(t;λ+k) = d^kμ_0/dt^k, and μ_0 has a closed form as three
//! ₁F₂ series in z = t³/9. For t ≤ −40 the three series cancel too heavily
//! and quadrature takes over.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numeric_core::{airy_all, gamma_fn, hyp1f2, log2_abs, tanh_sinh_quad, PrecisionContext, Real, RealExt, UpperLimit};
use crate::residual::Residual;
use crate::weight::{Family, WeightParams};

/// Below this t the quadrature route is primary.
pub const QUADRATURE_CROSSOVER_T: f64 = -40.0;

fn check_lambda(lambda: &Real) -> Result<()> {
    if *lambda <= -1 {
        return Err(Error::Domain(format!("lambda must exceed -1, got {}", lambda.to_f64())));
    }
    Ok(())
}

/// μ_0(t;λ).
pub fn mu0_airy(p: &WeightParams) -> Result<Real> {
    check_lambda(p.lambda())?;
    if p.t().to_f64() <= QUADRATURE_CROSSOVER_T {
        return mu0_airy_quad(p.t(), p.lambda(), p.ctx());
    }
    mu0_airy_series(p.t(), p.lambda(), p.ctx())
}

/// μ_k(t;λ) = μ_0(t;λ+k).
pub fn mu_k_airy(p: &WeightParams, k: usize) -> Result<Real> {
    mu0_airy(&p.with_lambda_shift(k as u32))
}

/// The closed form, regardless of t.
pub fn mu0_airy_series(t: &Real, lambda: &Real, ctx: PrecisionContext) -> Result<Real> {
    check_lambda(lambda)?;
    let (sum, loss) = mu0_series_pass(t, lambda, ctx.widened(32))?;
    if loss <= 24.0 {
        return Ok(ctx.round(&sum));
    }
    let (sum, _) = mu0_series_pass(t, lambda, ctx.widened(48 + loss.ceil() as u32))?;
    Ok(ctx.round(&sum))
}

fn mu0_series_pass(t: &Real, lambda: &Real, w: PrecisionContext) -> Result<(Real, f64)> {
    let t = w.round(t);
    let l = w.round(lambda);
    let three = w.real(3);
    let z = Float::with_val(w.bits(), t.pow_ref(3u32)) / 9u32;
    let third = |num: &Real| Float::with_val(w.bits(), num / 3u32);

    let a1 = third(&Float::with_val(w.bits(), &l + 1u32));
    let a2 = third(&Float::with_val(w.bits(), &l + 2u32));
    let a3 = Float::with_val(w.bits(), third(&l) + 1u32);

    let f1 = hyp1f2(&a1, &w.ratio(1, 3), &w.ratio(2, 3), &z, w)?;
    let f2 = hyp1f2(&a2, &w.ratio(2, 3), &w.ratio(4, 3), &z, w)?;
    let f3 = hyp1f2(&a3, &w.ratio(4, 3), &w.ratio(5, 3), &z, w)?;

    let pow3 = |e: Real| Float::with_val(w.bits(), three.pow_ref(&e));
    let c1 = pow3(third(&Float::with_val(w.bits(), &l - 2u32))) * gamma_fn(&a1, w)?;
    let c2 = pow3(third(&Float::with_val(w.bits(), &l - 1u32))) * gamma_fn(&a2, w)? * &t;
    let c3 = pow3(third(&l)) * gamma_fn(&a3, w)? * Float::with_val(w.bits(), t.square_ref()) / 2u32;

    let terms = [c1 * f1, c2 * f2, c3 * f3];
    let mut sum = w.zero();
    let mut biggest = f64::NEG_INFINITY;
    for term in &terms {
        biggest = biggest.max(log2_abs(term));
        sum += term;
    }
    let loss = (biggest - log2_abs(&sum)).max(0.0);
    Ok((sum, loss))
}

/// ∫₀^∞ x^{λ} e^{−x³/3+tx} dx by exp-sinh quadrature.
pub fn mu0_airy_quad(t: &Real, lambda: &Real, ctx: PrecisionContext) -> Result<Real> {
    check_lambda(lambda)?;
    let w = ctx.widened(16);
    let t = w.round(t);
    let l = w.round(lambda);
    let v = tanh_sinh_quad(
        |x| {
            let bits = x.prec();
            let x3 = Float::with_val(bits, x.pow_ref(3u32)) / 3u32;
            let e = Float::with_val(bits, x.ln_ref()) * &l - x3 + Float::with_val(bits, &t * x);
            e.exp()
        },
        &w.zero(),
        &UpperLimit::Infinite,
        w,
    )?;
    Ok(ctx.round(&v))
}

/// μ_k by quadrature of the defining integral.
pub fn mu_k_airy_quad(p: &WeightParams, k: usize) -> Result<Real> {
    let q = p.with_lambda_shift(k as u32);
    mu0_airy_quad(q.t(), q.lambda(), q.ctx())
}

/// μ_0(t; −½) = π^{3/2} 2^{−1/3} (Ai² + Bi²)(2^{−2/3} t).
pub fn mu0_airy_halfint(t: &Real, ctx: PrecisionContext) -> Result<Real> {
    let w = ctx.widened(16);
    let tau = Float::with_val(w.bits(), w.real(2).pow(&w.ratio(-2, 3)) * t);
    let v = airy_all(&tau, w)?;
    let s = Float::with_val(w.bits(), v.ai.square_ref()) + Float::with_val(w.bits(), v.bi.square_ref());
    let pre = w.pi().pow(&w.ratio(3, 2)) * w.real(2).pow(&w.ratio(-1, 3));
    Ok(ctx.round(&(pre * s)))
}

/// μ_3 − tμ_1 − (λ+1)μ_0, judged against 2^{−bits+24}·μ_3.
pub fn moment_ode_residual(p: &WeightParams) -> Result<Residual> {
    let ctx = p.ctx();
    let w = ctx.widened(16);
    let q = p.with_ctx(w);
    let m0 = mu0_airy(&q)?;
    let m1 = mu_k_airy(&q, 1)?;
    let m3 = mu_k_airy(&q, 3)?;
    let lp1 = Float::with_val(w.bits(), q.lambda() + 1u32);
    let r = Float::with_val(w.bits(), &m3 - Float::with_val(w.bits(), q.t() * &m1)) - lp1 * &m0;
    Ok(Residual::new(ctx.round(&r), ctx.round(&m3), 24.0 - f64::from(ctx.bits())))
}

/// μ_0 … μ_{k_max} at one weight, built once.
///
/// For the Airy family the λ-ladder means index shifts reuse the table:
/// μ_k(λ+s) = μ_{k+s}(λ). For the sextic family the shift is two indices.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    params: WeightParams,
    values: Vec<Real>,
}

impl MomentTable {
    pub fn build(p: &WeightParams, k_max: usize) -> Result<Self> {
        let values = match p.family() {
            Family::GeneralisedAiry => (0..=k_max).map(|k| mu_k_airy(p, k)).collect::<Result<Vec<_>>>()?,
            Family::SexticFreud => {
                (0..=k_max).map(|j| crate::freud6::mu_freud6(p, j)).collect::<Result<Vec<_>>>()?
            }
        };
        Ok(Self { params: p.clone(), values })
    }

    pub(crate) fn from_values(params: WeightParams, values: Vec<Real>) -> Self {
        Self { params, values }
    }

    #[must_use]
    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    #[must_use]
    pub fn get(&self, k: usize) -> Option<&Real> {
        self.values.get(k)
    }

    #[must_use]
    pub fn values(&self) -> &[Real] {
        &self.values
    }

    #[must_use]
    pub fn k_max(&self) -> usize {
        self.values.len() - 1
    }

    /// The table for λ + s, sharing values; `None` if too short.
    #[must_use]
    pub fn shifted(&self, s: u32) -> Option<MomentTable> {
        let offset = match self.params.family() {
            Family::GeneralisedAiry => s as usize,
            Family::SexticFreud => 2 * s as usize,
        };
        if offset >= self.values.len() {
            return None;
        }
        Some(MomentTable {
            params: self.params.with_lambda_shift(s),
            values: self.values[offset..].to_vec(),
        })
    }
}
