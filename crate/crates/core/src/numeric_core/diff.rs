//! Central differences with Richardson extrapolation.
//!
//! Samples are taken at 2·bits + 64 so that the second difference at the
//! base step h = 2^{−bits/4}·max(1,|t|) keeps a full working precision.

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric_core::precision::{log2_abs, PrecisionContext, Real, RealExt};

const LEVELS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
}

/// Extrapolated derivative and its tableau error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivative {
    pub value: Real,
    pub error: Real,
}

/// First and second derivative of one component of a vector-valued map.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub value: Real,
    pub first: Derivative,
    pub second: Derivative,
}

/// Precision used for the function samples.
#[must_use]
pub fn sample_context(ctx: PrecisionContext) -> PrecisionContext {
    ctx.with_bits(2 * ctx.bits() + 64)
}

fn base_step(t: &Real, ctx: PrecisionContext) -> Real {
    let scale = if t.cmp_abs(&ctx.one()) == Some(std::cmp::Ordering::Greater) {
        Float::with_val(ctx.bits(), t.abs_val())
    } else {
        ctx.one()
    };
    scale * ctx.pow2(-(ctx.bits() as i32) / 4)
}

/// d/dt or d²/dt² of `f` at `t`.
///
/// `f` receives the sample point and the sampling precision.
pub fn richardson_diff<F>(f: F, t: &Real, order: DerivOrder, ctx: PrecisionContext) -> Result<Derivative>
where
    F: Fn(&Real, PrecisionContext) -> Result<Real>,
{
    let jets = richardson_jet(|x, c| Ok(vec![f(x, c)?]), t, ctx)?;
    let jet = jets.into_iter().next().expect("one component");
    Ok(match order {
        DerivOrder::First => jet.first,
        DerivOrder::Second => jet.second,
    })
}

/// Value, first and second derivative for every component of `f`, sharing samples.
pub fn richardson_jet<F>(f: F, t: &Real, ctx: PrecisionContext) -> Result<Vec<Jet>>
where
    F: Fn(&Real, PrecisionContext) -> Result<Vec<Real>>,
{
    let sc = sample_context(ctx);
    let t = sc.round(t);
    let h0 = base_step(&t, sc);
    let f0 = f(&t, sc)?;
    let m = f0.len();
    let mut d1: Vec<Vec<Real>> = vec![Vec::with_capacity(LEVELS); m];
    let mut d2: Vec<Vec<Real>> = vec![Vec::with_capacity(LEVELS); m];
    for k in 0..LEVELS {
        let h = Float::with_val(sc.bits(), &h0 * sc.pow2(-(k as i32)));
        let plus = f(&Float::with_val(sc.bits(), &t + &h), sc)?;
        let minus = f(&Float::with_val(sc.bits(), &t - &h), sc)?;
        if plus.len() != m || minus.len() != m {
            return Err(Error::Domain("component count changed between samples".into()));
        }
        let h2 = Float::with_val(sc.bits(), h.square_ref());
        for i in 0..m {
            let diff = Float::with_val(sc.bits(), &plus[i] - &minus[i]);
            d1[i].push(diff / Float::with_val(sc.bits(), &h * 2u32));
            let sum = Float::with_val(sc.bits(), &plus[i] + &minus[i]);
            let twice = Float::with_val(sc.bits(), &f0[i] * 2u32);
            d2[i].push((sum - twice) / &h2);
        }
    }
    (0..m)
        .map(|i| {
            Ok(Jet {
                value: ctx.round(&f0[i]),
                first: extrapolate(&d1[i], ctx)?,
                second: extrapolate(&d2[i], ctx)?,
            })
        })
        .collect()
}

/// Richardson tableau in h² with the best diagonal entry.
fn extrapolate(row0: &[Real], ctx: PrecisionContext) -> Result<Derivative> {
    let prec = row0[0].prec();
    let n = row0.len();
    let mut table: Vec<Vec<Real>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = vec![row0[k].clone()];
        for j in 1..=k {
            let factor = 4u64.pow(j as u32);
            let num = Float::with_val(prec, &row[j - 1] - &table[k - 1][j - 1]);
            row.push(Float::with_val(prec, &row[j - 1] + num / (factor - 1)));
        }
        table.push(row);
    }
    // Diagonal differences; the smallest marks the best estimate.
    let mut best: Option<(usize, f64)> = None;
    for k in 1..n {
        let gap = Float::with_val(prec, &table[k][k] - &table[k - 1][k - 1]);
        let l = log2_abs(&gap);
        if best.map_or(true, |(_, b)| l < b) {
            best = Some((k, l));
        }
    }
    let (k, gap) = best.expect("at least two levels");
    let value = table[k][k].clone();
    let scale = log2_abs(&value).max(0.0);
    // Even the best diagonal disagrees in the leading quarter of the digits: noise.
    if gap > scale - f64::from(ctx.bits()) / 4.0 {
        return Err(Error::UnreliableDerivative);
    }
    let floor = scale - f64::from(ctx.bits()) + 8.0;
    let err = gap.max(floor);
    Ok(Derivative { value: ctx.round(&value), error: ctx.round(&Float::with_val(64, err).exp2()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric_core::precision::rel_diff;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256).unwrap()
    }

    #[test]
    fn square_first_derivative() {
        let c = ctx();
        let d = richardson_diff(|x, p| Ok(p.round(&Float::with_val(p.bits(), x.square_ref()))), &c.real(3), DerivOrder::First, c)
            .unwrap();
        assert!(rel_diff(&d.value, &c.real(6)) < 1e-60);
        assert!(d.error.to_f64() < 1e-60);
    }

    #[test]
    fn cube_second_derivative() {
        let c = ctx();
        let d = richardson_diff(
            |x, p| Ok(Float::with_val(p.bits(), x.pow_ref(3u32))),
            &c.real(2),
            DerivOrder::Second,
            c,
        )
        .unwrap();
        assert!(rel_diff(&d.value, &c.real(12)) < 1e-60);
    }

    #[test]
    fn exponential_jet_error_estimates_cover_truth() {
        let c = ctx();
        let t = c.real(-1.5);
        let jets = richardson_jet(|x, p| Ok(vec![p.round(x).exp(), p.round(x).sin()]), &t, c).unwrap();
        let e = t.clone().exp();
        let (s, co) = t.clone().sin_cos(Float::new(256));
        for (jet, (d1, d2)) in jets.iter().zip([(e.clone(), e), (co, -s)]) {
            let err1 = Float::with_val(256, &jet.first.value - &d1).abs();
            let err2 = Float::with_val(256, &jet.second.value - &d2).abs();
            assert!(err1 <= jet.first.error);
            assert!(err2 <= jet.second.error);
            assert!(jet.second.error.to_f64() < 1e-40);
        }
    }

    #[test]
    fn noisy_function_is_flagged() {
        let c = ctx();
        // Additive noise of size 2^{-100} oscillating far faster than any step.
        let r = richardson_diff(
            |x, sc| {
                let fast = Float::with_val(sc.bits(), x * sc.pow2(150)).sin();
                Ok(Float::with_val(sc.bits(), x.exp_ref()) + fast * sc.pow2(-100))
            },
            &c.real(0.3),
            DerivOrder::Second,
            c,
        );
        assert_eq!(r, Err(Error::UnreliableDerivative));
    }
}
