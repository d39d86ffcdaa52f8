//! Double-exponential quadrature: tanh-sinh on [a, b], exp-sinh on [a, ∞).

use std::cmp::Ordering;

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric_core::precision::{log2_abs, PrecisionContext, Real, RealExt};

#[derive(Clone, Debug, PartialEq)]
pub enum UpperLimit {
    Finite(Real),
    Infinite,
}

const MAX_LEVEL: u32 = 12;
const SCAN_STEP_LOG2: i32 = -4;
const S_LIMIT: f64 = 12.0;

/// Abscissa and weight at parameter s.
fn node(s: &Real, a: &Real, b: &UpperLimit, w: PrecisionContext) -> (Real, Real) {
    let half_pi = Float::with_val(w.bits(), w.pi() / 2u32);
    let (sh, ch) = s.clone().sinh_cosh(Float::new(w.bits()));
    let u = Float::with_val(w.bits(), &half_pi * &sh);
    let du = Float::with_val(w.bits(), &half_pi * &ch);
    match b {
        UpperLimit::Infinite => {
            let e = u.exp();
            let x = Float::with_val(w.bits(), a + &e);
            (x, e * du)
        }
        UpperLimit::Finite(b) => {
            let len = Float::with_val(w.bits(), b - a);
            // σ(2u) written through e^{−2|u|} so neither endpoint loses digits.
            let y = Float::with_val(w.bits(), u.abs_val()) * 2u32;
            let em = Float::with_val(w.bits(), -y).exp();
            let denom = Float::with_val(w.bits(), &em + 1u32);
            let near = Float::with_val(w.bits(), &len * &em) / &denom;
            let x = if u.is_sign_negative() {
                Float::with_val(w.bits(), a + &near)
            } else {
                Float::with_val(w.bits(), b - &near)
            };
            // dx/ds = len · 2σ(1−σ) · du
            let sig = em / denom.square();
            let wt = len * sig * du * 2u32;
            (x, wt)
        }
    }
}

/// ∫_a^b f, b possibly +∞.
///
/// Steps halve from 1/2 until successive trapezoid sums agree to eps^{0.9},
/// measured against ∫|f| so that integrals near zero still terminate.
pub fn tanh_sinh_quad<F>(f: F, a: &Real, b: &UpperLimit, ctx: PrecisionContext) -> Result<Real>
where
    F: Fn(&Real) -> Real,
{
    if let UpperLimit::Finite(bv) = b {
        match bv.partial_cmp(a) {
            Some(Ordering::Equal) => return Ok(ctx.zero()),
            Some(Ordering::Less) => {
                let r = tanh_sinh_quad(f, bv, &UpperLimit::Finite(a.clone()), ctx)?;
                return Ok(-r);
            }
            _ => {}
        }
    }
    let w = ctx.widened(32);
    let a = w.round(a);
    let b = match b {
        UpperLimit::Finite(v) => UpperLimit::Finite(w.round(v)),
        UpperLimit::Infinite => UpperLimit::Infinite,
    };
    let term = |s: &Real| -> Real {
        let (x, wt) = node(s, &a, &b, w);
        if wt.is_zero() {
            return w.zero();
        }
        if let UpperLimit::Finite(bv) = &b {
            if x <= a || x >= *bv {
                return w.zero();
            }
        }
        let fx = f(&x);
        if !fx.is_finite() {
            return w.zero();
        }
        Float::with_val(w.bits(), fx * wt)
    };

    // Truncation window from a coarse scan.
    let cut = -f64::from(w.bits()) - 24.0;
    let h0 = 2f64.powi(SCAN_STEP_LOG2);
    let mut peak = f64::NEG_INFINITY;
    let mut samples: Vec<(i64, f64)> = Vec::new();
    let kmax = (S_LIMIT / h0) as i64;
    for k in -kmax..=kmax {
        let s = w.real(k as f64 * h0);
        let l = log2_abs(&term(&s));
        peak = peak.max(l);
        samples.push((k, l));
    }
    if peak == f64::NEG_INFINITY {
        return Ok(ctx.zero());
    }
    let live = |l: f64| l > peak + cut;
    let k_lo = samples.iter().find(|(_, l)| live(*l)).map_or(0, |(k, _)| *k) - 1;
    let k_hi = samples.iter().rev().find(|(_, l)| live(*l)).map_or(0, |(k, _)| *k) + 1;
    let s_lo = k_lo as f64 * h0;
    let s_hi = k_hi as f64 * h0;

    let tol = 0.9 * (1.0 - f64::from(ctx.bits()));
    let mut level = 0u32;
    let mut h_log2 = -1i32;
    let mut raw = w.zero(); // Σ term over the current lattice
    let mut raw_abs = w.zero(); // Σ |term|, the scale for cancelling integrands
    let first = (s_lo / 2f64.powi(h_log2)).ceil() as i64;
    let last = (s_hi / 2f64.powi(h_log2)).floor() as i64;
    for k in first..=last {
        let v = term(&(w.real(k) * w.pow2(h_log2)));
        raw_abs += v.abs_val();
        raw += v;
    }
    let mut prev = Float::with_val(w.bits(), &raw * w.pow2(h_log2));
    let mut log2_diff = f64::INFINITY;
    while level < MAX_LEVEL {
        level += 1;
        h_log2 -= 1;
        let step = 2f64.powi(h_log2);
        let first = (s_lo / step).ceil() as i64;
        let last = (s_hi / step).floor() as i64;
        for k in first..=last {
            if k.rem_euclid(2) == 1 {
                let v = term(&(w.real(k) * w.pow2(h_log2)));
                raw_abs += v.abs_val();
                raw += v;
            }
        }
        let cur = Float::with_val(w.bits(), &raw * w.pow2(h_log2));
        let diff = Float::with_val(w.bits(), &cur - &prev);
        log2_diff = log2_abs(&diff) - log2_abs(&raw_abs) - f64::from(h_log2);
        if level >= 3 && log2_diff <= tol {
            return Ok(ctx.round(&cur));
        }
        prev = cur;
    }
    Err(Error::QuadratureNonconvergence { log2_diff })
}
