//! Recurrence coefficients from moments, and residuals of the identities
//! they satisfy.
//!
//! Primary route: β_n = Δ_{n−1}Δ_{n+1}/Δ_n² and α_n = σ_{n+1}/Δ_{n+1} − σ_n/Δ_n,
//! where σ_n is Δ_n with its last column moved up one moment. The moment
//! recursion (Chebyshev algorithm) is the cross-check, and it is primary
//! for N > [`DETERMINANT_ROUTE_MAX`] where one LU per index is too slow.

use std::collections::BTreeMap;

use rug::Float;

use crate::airy_moments::MomentTable;
use crate::error::{Error, Result};
use crate::numeric_core::{det, log2_abs, log2_rel_diff, richardson_jet, Jet, PrecisionContext, Real, RealExt, RealMatrix};
use crate::residual::{Residual, TermSum};
use crate::weight::{Family, WeightParams};

pub const DETERMINANT_ROUTE_MAX: usize = 48;
pub const MAX_ESCALATIONS: u32 = 2;
/// Indices cross-checked by determinants when the moment recursion is primary.
const LARGE_N_CROSSCHECK: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Determinant,
    Chebyshev,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceDiagnostics {
    pub route: Route,
    pub working_bits: u32,
    pub log2_condition: f64,
    pub escalations: u32,
    /// log2 of the largest relative β disagreement between the two routes.
    pub log2_crosscheck: f64,
}

/// α_0..α_N, β_0..β_N (β_0 = 0) for one weight.
#[derive(Clone, Debug)]
pub struct RecurrenceCoeffs {
    params: WeightParams,
    ctx: PrecisionContext,
    alphas: Vec<Real>,
    betas: Vec<Real>,
    table: MomentTable,
    diagnostics: RecurrenceDiagnostics,
}

impl RecurrenceCoeffs {
    /// Coefficients from given values; no moments attached.
    pub fn from_values(params: WeightParams, alphas: Vec<Real>, betas: Vec<Real>) -> Result<Self> {
        if alphas.is_empty() || alphas.len() != betas.len() {
            return Err(Error::InvalidCoefficients("alpha/beta length mismatch".into()));
        }
        if !betas[0].is_zero() {
            return Err(Error::InvalidCoefficients("beta_0 must be 0".into()));
        }
        if let Some(k) = betas.iter().skip(1).position(|b| *b <= 0) {
            return Err(Error::InvalidCoefficients(format!("beta_{} is not positive", k + 1)));
        }
        let ctx = params.ctx();
        let table = MomentTable::from_values(params.clone(), Vec::new());
        Ok(Self {
            params,
            ctx,
            alphas,
            betas,
            table,
            diagnostics: RecurrenceDiagnostics {
                route: Route::Determinant,
                working_bits: ctx.bits(),
                log2_condition: 0.0,
                escalations: 0,
                log2_crosscheck: f64::NEG_INFINITY,
            },
        })
    }

    #[must_use]
    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    /// Precision the values were computed at.
    #[must_use]
    pub fn ctx(&self) -> PrecisionContext {
        self.ctx
    }

    #[must_use]
    pub fn n_max(&self) -> usize {
        self.alphas.len() - 1
    }

    #[must_use]
    pub fn alphas(&self) -> &[Real] {
        &self.alphas
    }

    #[must_use]
    pub fn betas(&self) -> &[Real] {
        &self.betas
    }

    pub fn alpha(&self, n: usize) -> Result<&Real> {
        self.alphas.get(n).ok_or(Error::IndexOutOfRange { index: n, max: self.n_max() })
    }

    pub fn beta(&self, n: usize) -> Result<&Real> {
        self.betas.get(n).ok_or(Error::IndexOutOfRange { index: n, max: self.n_max() })
    }

    #[must_use]
    pub fn table(&self) -> &MomentTable {
        &self.table
    }

    #[must_use]
    pub fn diagnostics(&self) -> &RecurrenceDiagnostics {
        &self.diagnostics
    }

    /// log2 of the condition-scaled relative tolerance eps·cond·2^extra.
    #[must_use]
    pub fn log2_tolerance(&self, extra_bits: f64) -> f64 {
        1.0 - f64::from(self.ctx.bits()) + self.diagnostics.log2_condition.max(0.0) + extra_bits
    }

    /// Truncated copy with indices ≤ n.
    #[must_use]
    pub fn truncated(&self, n: usize) -> Self {
        let mut c = self.clone();
        c.alphas.truncate(n + 1);
        c.betas.truncate(n + 1);
        c
    }
}

/// Moment matrix with entry (i, j) = μ_{i + off_i + j}, the last column
/// optionally moved up by one moment.
fn hankel_matrix(m: &[Real], n: usize, offsets: &[usize], shift_last: bool) -> Result<RealMatrix> {
    RealMatrix::from_fn(n, |i, j| {
        let extra = usize::from(shift_last && j + 1 == n);
        m[i + offsets[i] + j + extra].clone()
    })
}

fn needed_index(n: usize, offsets: &[usize], shift_last: bool) -> usize {
    (0..n).map(|i| i + offsets[i] + n - 1 + usize::from(shift_last)).max().unwrap_or(0)
}

/// det with the row offsets; rows that coincide give an exact zero.
fn offset_det(m: &[Real], n: usize, offsets: &[usize], shift_last: bool, ctx: PrecisionContext) -> Result<(Real, f64)> {
    if n == 0 {
        return Ok((ctx.one(), 0.0));
    }
    let need = needed_index(n, offsets, shift_last);
    if need >= m.len() {
        return Err(Error::IndexOutOfRange { index: need, max: m.len().saturating_sub(1) });
    }
    let starts: Vec<usize> = (0..n).map(|i| i + offsets[i]).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if starts[i] == starts[j] {
                return Ok((ctx.zero(), 0.0));
            }
        }
    }
    let d = det(&hankel_matrix(m, n, offsets, shift_last)?, ctx);
    Ok((d.value, d.log2_pivot_ratio))
}

/// Δ_n = det[μ_{i+j}]_{i,j<n}; Δ_0 = 1.
pub fn hankel_delta_from(moments: &[Real], n: usize, ctx: PrecisionContext) -> Result<Real> {
    let zeros = vec![0; n];
    let (v, _) = offset_det(moments, n, &zeros, false, ctx)?;
    if n > 0 && v <= 0 {
        return Err(Error::InvalidMeasure(format!("Delta_{n} is not positive")));
    }
    Ok(v)
}

/// Δ_n for the weight `p`.
pub fn hankel_delta(n: usize, p: &WeightParams) -> Result<Real> {
    if n == 0 {
        return Ok(p.ctx().one());
    }
    let table = MomentTable::build(p, 2 * n - 2)?;
    hankel_delta_from(table.values(), n, p.ctx())
}

/// d^order/dt^order Δ_n, summed exactly over row shifts (dμ_k/dt = μ_{k+1}).
pub fn hankel_delta_derivative(moments: &[Real], n: usize, order: usize, ctx: PrecisionContext) -> Result<Real> {
    let mut patterns: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    patterns.insert(vec![0; n], 1);
    for _ in 0..order {
        let mut next = BTreeMap::new();
        for (pat, count) in &patterns {
            for i in 0..n {
                let mut q = pat.clone();
                q[i] += 1;
                *next.entry(q).or_insert(0) += count;
            }
        }
        patterns = next;
    }
    let mut sum = ctx.zero();
    for (pat, count) in patterns {
        let (v, _) = offset_det(moments, n, &pat, false, ctx)?;
        sum += v * count;
    }
    Ok(sum)
}

/// Output of the moment recursion.
#[derive(Clone, Debug)]
pub struct ChebyshevOutput {
    pub alphas: Vec<Real>,
    pub betas: Vec<Real>,
    /// h_k = Δ_{k+1}/Δ_k, the Cholesky pivots of the moment matrix.
    pub pivots: Vec<Real>,
}

/// Chebyshev algorithm on raw moments μ_0..μ_{2N+1}.
pub fn chebyshev_recurrence(moments: &[Real], n_max: usize, ctx: PrecisionContext) -> Result<ChebyshevOutput> {
    let m = 2 * n_max + 2;
    if moments.len() < m {
        return Err(Error::IndexOutOfRange { index: m - 1, max: moments.len().saturating_sub(1) });
    }
    let mut prev2: Vec<Real> = vec![ctx.zero(); m];
    let mut prev: Vec<Real> = moments[..m].iter().map(|v| ctx.round(v)).collect();
    if prev[0] <= 0 {
        return Err(Error::InvalidMeasure("mu_0 is not positive".into()));
    }
    let mut alphas = vec![Float::with_val(ctx.bits(), &prev[1] / &prev[0])];
    let mut betas = vec![ctx.zero()];
    let mut pivots = vec![prev[0].clone()];
    for k in 1..=n_max {
        let mut cur: Vec<Real> = vec![ctx.zero(); m];
        for l in k..(m - k) {
            let mut v = prev[l + 1].clone();
            v -= Float::with_val(ctx.bits(), &alphas[k - 1] * &prev[l]);
            if k >= 2 {
                v -= Float::with_val(ctx.bits(), &betas[k - 1] * &prev2[l]);
            }
            cur[l] = v;
        }
        if cur[k] <= 0 {
            return Err(Error::InvalidMeasure(format!("moment recursion pivot {k} is not positive")));
        }
        let a = Float::with_val(ctx.bits(), &cur[k + 1] / &cur[k])
            - Float::with_val(ctx.bits(), &prev[k] / &prev[k - 1]);
        let b = Float::with_val(ctx.bits(), &cur[k] / &prev[k - 1]);
        alphas.push(a);
        betas.push(b);
        pivots.push(cur[k].clone());
        prev2 = std::mem::replace(&mut prev, cur);
    }
    Ok(ChebyshevOutput { alphas, betas, pivots })
}

/// Δ_0..Δ_{N+1} and σ_0..σ_{N+1} (σ_0 = 0).
#[derive(Clone, Debug)]
pub struct HankelCache {
    pub deltas: Vec<Real>,
    pub shifted: Vec<Real>,
    pub log2_condition: f64,
}

impl HankelCache {
    pub fn build(moments: &[Real], n_max: usize, ctx: PrecisionContext) -> Result<Self> {
        let mut deltas = vec![ctx.one()];
        let mut shifted = vec![ctx.zero()];
        let mut cond: f64 = 0.0;
        for n in 1..=n_max + 1 {
            let zeros = vec![0; n];
            let (d, c) = offset_det(moments, n, &zeros, false, ctx)?;
            if d <= 0 {
                return Err(Error::InvalidMeasure(format!("Delta_{n} is not positive")));
            }
            let (s, _) = offset_det(moments, n, &zeros, true, ctx)?;
            cond = cond.max(c);
            deltas.push(d);
            shifted.push(s);
        }
        Ok(Self { deltas, shifted, log2_condition: cond })
    }
}

struct Attempt {
    alphas: Vec<Real>,
    betas: Vec<Real>,
    log2_condition: f64,
    log2_crosscheck: f64,
    route: Route,
}

fn attempt(table: &MomentTable, n_max: usize, ctx: PrecisionContext) -> Result<Attempt> {
    let m = table.values();
    let cheb = chebyshev_recurrence(m, n_max, ctx)?;
    if n_max <= DETERMINANT_ROUTE_MAX {
        let cache = HankelCache::build(m, n_max, ctx)?;
        let mut alphas = Vec::with_capacity(n_max + 1);
        let mut betas = vec![ctx.zero()];
        for n in 0..=n_max {
            let a = Float::with_val(ctx.bits(), &cache.shifted[n + 1] / &cache.deltas[n + 1])
                - Float::with_val(ctx.bits(), &cache.shifted[n] / &cache.deltas[n]);
            alphas.push(a);
            if n >= 1 {
                let num = Float::with_val(ctx.bits(), &cache.deltas[n - 1] * &cache.deltas[n + 1]);
                betas.push(num / Float::with_val(ctx.bits(), cache.deltas[n].square_ref()));
            }
        }
        let cross = (1..=n_max)
            .map(|n| log2_rel_diff(&cheb.betas[n], &betas[n]))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Attempt { alphas, betas, log2_condition: cache.log2_condition, log2_crosscheck: cross, route: Route::Determinant })
    } else {
        let k = LARGE_N_CROSSCHECK.min(n_max);
        let cache = HankelCache::build(m, k, ctx)?;
        let cross = (1..=k)
            .map(|n| {
                let num = Float::with_val(ctx.bits(), &cache.deltas[n - 1] * &cache.deltas[n + 1]);
                let b = num / Float::with_val(ctx.bits(), cache.deltas[n].square_ref());
                log2_rel_diff(&cheb.betas[n], &b)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let big = (0..=n_max).map(|k| log2_abs(&m[2 * k])).fold(f64::NEG_INFINITY, f64::max);
        let small = cheb.pivots.iter().map(log2_abs).fold(f64::INFINITY, f64::min);
        Ok(Attempt {
            alphas: cheb.alphas,
            betas: cheb.betas,
            log2_condition: big - small,
            log2_crosscheck: cross,
            route: Route::Chebyshev,
        })
    }
}

/// α_0..α_N, β_0..β_N for `p`, starting at `p`'s precision and escalating
/// when the moment matrix is too ill-conditioned for it.
pub fn recurrence_from_moments(p: &WeightParams, n_max: usize) -> Result<RecurrenceCoeffs> {
    let floor = PrecisionContext::for_hankel(n_max + 1).bits();
    let mut w = p.ctx().with_bits(p.ctx().bits().max(floor));
    let mut last_cond = 0.0;
    for escalation in 0..=MAX_ESCALATIONS {
        let q = p.with_ctx(w);
        let table = MomentTable::build(&q, 2 * n_max + 1)?;
        let a = match attempt(&table, n_max, w) {
            Ok(a) => a,
            // A pivot lost to cancellation looks like an invalid measure.
            Err(Error::InvalidMeasure(_)) if escalation < MAX_ESCALATIONS => {
                w = w.with_bits(2 * w.bits());
                continue;
            }
            Err(e) => return Err(e),
        };
        let half = f64::from(w.bits()) / 2.0;
        last_cond = a.log2_condition;
        if a.log2_condition > half || a.log2_crosscheck > -half {
            let needed = (2.0 * a.log2_condition).ceil().max(0.0) as u32 + 64;
            w = w.with_bits((w.bits() + 64).max(needed));
            continue;
        }
        if let Some(k) = a.betas.iter().skip(1).position(|b| *b <= 0) {
            return Err(Error::InvalidMeasure(format!("beta_{} is not positive", k + 1)));
        }
        let mut alphas = a.alphas;
        if p.family() == Family::SexticFreud {
            // Odd moments vanish exactly; any residue is rounding.
            alphas = alphas.iter().map(|_| w.zero()).collect();
        }
        return Ok(RecurrenceCoeffs {
            params: p.clone(),
            ctx: w,
            alphas,
            betas: a.betas,
            table,
            diagnostics: RecurrenceDiagnostics {
                route: a.route,
                working_bits: w.bits(),
                log2_condition: a.log2_condition,
                escalations: escalation,
                log2_crosscheck: a.log2_crosscheck,
            },
        });
    }
    Err(Error::PrecisionExhausted { bits: w.bits(), log2_condition: last_cond })
}

/// Coefficient sets for λ, λ+1, …, λ+s_max from one moment table.
pub fn recurrence_ladder(p: &WeightParams, n_max: usize, s_max: u32) -> Result<Vec<RecurrenceCoeffs>> {
    (0..=s_max).map(|s| recurrence_from_moments(&p.with_lambda_shift(s), n_max)).collect()
}

fn pair_tolerance(c: &RecurrenceCoeffs, extra: f64) -> f64 {
    c.log2_tolerance(extra)
}

/// α_n − d/dt ln(Δ_{n+1}/Δ_n), derivatives by exact row shifts.
///
/// α_n here comes from the moment recursion, so the check is not a
/// restatement of the shifted-minor formula.
pub fn alpha_logderiv_check(n: usize, c: &RecurrenceCoeffs) -> Result<Residual> {
    let ctx = c.ctx();
    let m = c.table().values();
    let cheb = chebyshev_recurrence(m, n, ctx)?;
    let d0 = hankel_delta_from(m, n, ctx)?;
    let d1 = hankel_delta_from(m, n + 1, ctx)?;
    let dd0 = hankel_delta_derivative(m, n, 1, ctx)?;
    let dd1 = hankel_delta_derivative(m, n + 1, 1, ctx)?;
    let mut s = TermSum::new(ctx);
    s.add(cheb.alphas[n].clone());
    s.sub(dd1 / d1);
    s.add(dd0 / d0);
    let mut r = s.finish(pair_tolerance(c, 32.0));
    r.scale = Float::with_val(ctx.bits(), cheb.alphas[n].abs_val());
    Ok(r)
}

/// d²/dt² ln Δ_n − Δ_{n−1}Δ_{n+1}/Δ_n², all derivatives exact.
pub fn toda_equation_residual(n: usize, c: &RecurrenceCoeffs) -> Result<Residual> {
    if n == 0 {
        return Err(Error::Domain("toda equation needs n >= 1".into()));
    }
    let ctx = c.ctx();
    let m = c.table().values();
    let d = hankel_delta_from(m, n, ctx)?;
    let dm = hankel_delta_from(m, n - 1, ctx)?;
    let dp = hankel_delta_from(m, n + 1, ctx)?;
    let d1 = hankel_delta_derivative(m, n, 1, ctx)? / &d;
    let d2 = hankel_delta_derivative(m, n, 2, ctx)? / &d;
    let mut s = TermSum::new(ctx);
    s.add(d2);
    s.sub(Float::with_val(ctx.bits(), d1.square_ref()));
    s.sub(dm * dp / Float::with_val(ctx.bits(), d.square_ref()));
    Ok(s.finish(pair_tolerance(c, 32.0)))
}

fn string_scale(n: usize, c: &RecurrenceCoeffs) -> Real {
    let ctx = c.ctx();
    Float::with_val(ctx.bits(), c.params().lambda() + (2 * n + 1) as u32)
}

/// Both discrete (string) equations, left minus right.
pub fn string_system_residual(n: usize, c: &RecurrenceCoeffs) -> Result<(Residual, Residual)> {
    if n == 0 || n + 1 > c.n_max() {
        return Err(Error::IndexOutOfRange { index: n + 1, max: c.n_max() });
    }
    let ctx = c.ctx();
    let b = ctx.bits();
    let t = ctx.round(c.params().t());
    let l = ctx.round(c.params().lambda());
    let (am, a, ap) = (&c.alphas[n - 1], &c.alphas[n], &c.alphas[n + 1]);
    let (bm, bn, bp) = (&c.betas[n - 1], &c.betas[n], &c.betas[n + 1]);
    let f = |x: Real| x;
    let two_n_l = Float::with_val(b, &l + (2 * n) as u32);

    let mut s1 = TermSum::new(ctx);
    s1.add(f(Float::with_val(b, a * 2u32) + am) * bn);
    s1.add(f(Float::with_val(b, a * 2u32) + ap) * bp);
    s1.add(Float::with_val(b, a.pow_ref(3u32)));
    s1.sub(Float::with_val(b, &t * a));
    s1.sub(Float::with_val(b, &two_n_l + 1u32));
    let mut r1 = s1.finish(pair_tolerance(c, 40.0));
    r1.scale = string_scale(n, c);

    let b2 = Float::with_val(b, bn.square_ref());
    let mut s2 = TermSum::new(ctx);
    s2.add(Float::with_val(b, bn.pow_ref(3u32)));
    let lin = Float::with_val(b, bp + bm) - Float::with_val(b, a * am) * 2u32 - Float::with_val(b, &t * 2u32);
    s2.add(lin * &b2);
    let p1 = Float::with_val(b, a.square_ref()) + bp - &t;
    let p2 = Float::with_val(b, am.square_ref()) + bm - &t;
    s2.add(p1 * p2 * bn);
    s2.add(Float::with_val(b, a + am) * &two_n_l * bn);
    let nn = Float::with_val(b, &l + n as u32) * n as u32;
    s2.sub(nn);
    let mut r2 = s2.finish(pair_tolerance(c, 40.0));
    r2.scale = string_scale(n, c);
    Ok((r1, r2))
}

/// Values and t-derivatives of α_0..α_N and β_0..β_N.
#[derive(Clone, Debug)]
pub struct CoeffJet {
    params: WeightParams,
    alpha: Vec<Jet>,
    beta: Vec<Jet>,
}

impl CoeffJet {
    #[must_use]
    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    #[must_use]
    pub fn alpha(&self, n: usize) -> &Jet {
        &self.alpha[n]
    }

    #[must_use]
    pub fn beta(&self, n: usize) -> &Jet {
        &self.beta[n]
    }

    #[must_use]
    pub fn n_max(&self) -> usize {
        self.alpha.len() - 1
    }

    /// Largest relative Richardson error estimate over indices ≤ n.
    #[must_use]
    pub fn max_relative_estimate(&self, n: usize) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for j in self.alpha.iter().take(n + 1).chain(self.beta.iter().take(n + 1)) {
            for d in [&j.first, &j.second] {
                let scale = log2_abs(&d.value).max(log2_abs(&j.value)).max(0.0);
                worst = worst.max(log2_abs(&d.error) - scale);
            }
        }
        worst.exp2()
    }
}

/// Richardson jets of the coefficients in t, sampled through the full
/// moments-to-coefficients pipeline.
pub fn coefficient_jet(p: &WeightParams, n_max: usize) -> Result<CoeffJet> {
    let jets = richardson_jet(
        |t, sc| {
            let c = recurrence_from_moments(&p.with_t(t).with_ctx(sc), n_max)?;
            Ok(c.alphas.iter().chain(c.betas.iter()).cloned().collect())
        },
        p.t(),
        p.ctx(),
    )?;
    let (alpha, beta) = jets.split_at(n_max + 1);
    Ok(CoeffJet { params: p.clone(), alpha: alpha.to_vec(), beta: beta.to_vec() })
}

/// Absolute tolerance: propagated derivative errors + 2^{−bits/2}·scale.
fn richardson_residual(s: TermSum, propagated: Real, ctx: PrecisionContext) -> Residual {
    let mut r = s.finish(0.0);
    let floor = Float::with_val(ctx.bits(), &r.scale * ctx.pow2(-(ctx.bits() as i32) / 2));
    let tol = propagated + floor;
    // An empty sum (β_0 has no t-derivative term) is judged absolutely.
    r.log2_tolerance = if r.scale.is_zero() {
        -f64::from(ctx.bits() / 2)
    } else {
        log2_abs(&tol) - log2_abs(&r.scale)
    };
    r
}

/// dα_n/dt − (β_{n+1} − β_n) and dβ_n/dt − β_n(α_n − α_{n−1}).
pub fn toda_system_residual(n: usize, j: &CoeffJet) -> Result<(Residual, Residual)> {
    if n + 1 > j.n_max() {
        return Err(Error::IndexOutOfRange { index: n + 1, max: j.n_max() });
    }
    let ctx = j.params.ctx();
    let mut s1 = TermSum::new(ctx);
    s1.add(j.alpha[n].first.value.clone());
    s1.sub(j.beta[n + 1].value.clone());
    s1.add(j.beta[n].value.clone());
    let r1 = richardson_residual(s1, j.alpha[n].first.error.clone(), ctx);

    let mut s2 = TermSum::new(ctx);
    if n >= 1 {
        s2.add(j.beta[n].first.value.clone());
        let diff = Float::with_val(ctx.bits(), &j.alpha[n].value - &j.alpha[n - 1].value);
        s2.sub(diff * &j.beta[n].value);
    }
    let err = if n >= 1 { j.beta[n].first.error.clone() } else { ctx.zero() };
    let r2 = richardson_residual(s2, err, ctx);
    Ok((r1, r2))
}

/// The second-order differential system in t for (α_n, β_n).
pub fn diff_system_residual(n: usize, j: &CoeffJet) -> Result<(Residual, Residual)> {
    if n > j.n_max() {
        return Err(Error::IndexOutOfRange { index: n, max: j.n_max() });
    }
    let ctx = j.params.ctx();
    let b = ctx.bits();
    let t = ctx.round(j.params.t());
    let l = ctx.round(j.params.lambda());
    let a = &j.alpha[n].value;
    let a1 = &j.alpha[n].first.value;
    let a2 = &j.alpha[n].second.value;
    let be = &j.beta[n].value;
    let b1 = &j.beta[n].first.value;
    let b2 = &j.beta[n].second.value;
    let two_n_l = Float::with_val(b, &l + (2 * n) as u32);

    let mut s1 = TermSum::new(ctx);
    s1.add(a2.clone());
    s1.add(Float::with_val(b, a * a1) * 3u32);
    s1.add(Float::with_val(b, a.pow_ref(3u32)));
    s1.add((Float::with_val(b, be * 6u32) - &t) * a);
    s1.sub(Float::with_val(b, &two_n_l + 1u32));
    let prop1 = Float::with_val(b, &j.alpha[n].second.error)
        + Float::with_val(b, a.abs_val()) * &j.alpha[n].first.error * 3u32;
    let r1 = richardson_residual(s1, prop1, ctx);

    let a_sq = Float::with_val(b, a.square_ref());
    let coef_b2 = Float::with_val(b, a1 + &a_sq) + Float::with_val(b, be * 2u32) - &t;
    let coef_b1 = Float::with_val(b, a * a1) * 2u32 + Float::with_val(b, a.pow_ref(3u32)) * 2u32
        - Float::with_val(b, &t * a) * 2u32
        + &two_n_l;
    let mut s2 = TermSum::new(ctx);
    s2.add(Float::with_val(b, &coef_b2 * b2));
    s2.sub(Float::with_val(b, b1.square_ref()));
    s2.sub(Float::with_val(b, &coef_b1 * b1));
    s2.sub(Float::with_val(b, a1.square_ref()) * be);
    s2.add(Float::with_val(b, be.pow_ref(3u32)) * 4u32);
    s2.sub(Float::with_val(b, be.square_ref()) * &t * 4u32);
    let quartic = Float::with_val(b, a_sq.square_ref()) - Float::with_val(b, &t * &a_sq) * 2u32
        + Float::with_val(b, &two_n_l * a) * 2u32
        + Float::with_val(b, t.square_ref());
    s2.add(quartic * be);
    s2.sub(Float::with_val(b, &l + n as u32) * n as u32);
    // |∂/∂α′|, |∂/∂β′|, |∂/∂β″| times the derivative error estimates.
    let d_a1 = Float::with_val(b, b2 - Float::with_val(b, a * b1) * 2u32) - Float::with_val(b, be * a1) * 2u32;
    let d_b1 = Float::with_val(b, b1 * 2u32) + &coef_b1;
    let prop2 = d_a1.abs() * &j.alpha[n].first.error
        + d_b1.abs() * &j.beta[n].first.error
        + coef_b2.abs() * &j.beta[n].second.error;
    let r2 = richardson_residual(s2, prop2, ctx);
    Ok((r1, r2))
}

/// The competing system dα_n/dt = t − α_n² − 2β_n, dβ_n/dt = 2α_nβ_n − n − λ/2.
///
/// Returned with unit scale so `relative()` is the absolute residual.
pub fn wang_system_residual(n: usize, j: &CoeffJet) -> Result<(Residual, Residual)> {
    if n > j.n_max() {
        return Err(Error::IndexOutOfRange { index: n, max: j.n_max() });
    }
    let ctx = j.params.ctx();
    let b = ctx.bits();
    let t = ctx.round(j.params.t());
    let l = ctx.round(j.params.lambda());
    let a = &j.alpha[n].value;
    let be = &j.beta[n].value;
    let w1 = Float::with_val(b, &j.alpha[n].first.value - &t)
        + Float::with_val(b, a.square_ref())
        + Float::with_val(b, be * 2u32);
    let w2 = Float::with_val(b, &j.beta[n].first.value - Float::with_val(b, a * be) * 2u32)
        + n as u32
        + Float::with_val(b, &l / 2u32);
    Ok((Residual::new(w1, ctx.one(), -7.0), Residual::new(w2, ctx.one(), -7.0)))
}

/// The large-n expansions (α̂_n, β̂_n), κ = ∛10.
pub fn asympt_large_n(n: usize, p: &WeightParams) -> Result<(Real, Real)> {
    if n == 0 {
        return Err(Error::Domain("large-n expansion needs n >= 1".into()));
    }
    let ctx = p.ctx();
    let b = ctx.bits();
    let t = ctx.round(p.t());
    let l = ctx.round(p.lambda());
    let kappa = ctx.real(10).cbrt();
    let k2 = Float::with_val(b, kappa.square_ref());
    let n13 = ctx.real(n as u32).cbrt();
    let n23 = Float::with_val(b, n13.square_ref());
    let alpha = Float::with_val(b, &n13 * 2u32) / &kappa
        + Float::with_val(b, &kappa * &t) / Float::with_val(b, &n13 * 15u32)
        + Float::with_val(b, &k2 * Float::with_val(b, &l + 1u32)) / Float::with_val(b, &n23 * 30u32);
    let beta = Float::with_val(b, &n23 / &k2)
        + Float::with_val(b, &t / 15u32)
        + Float::with_val(b, &kappa * &l) / Float::with_val(b, &n13 * 30u32)
        + Float::with_val(b, &k2 * Float::with_val(b, t.square_ref())) / Float::with_val(b, &n23 * 900u32);
    Ok((alpha, beta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    PlusInfinity,
    MinusInfinity,
}

/// The large-|t| expansions (α̂_n, β̂_n) on the given side.
pub fn asympt_large_t(n: usize, p: &WeightParams, side: Side) -> Result<(Real, Real)> {
    let ctx = p.ctx();
    let b = ctx.bits();
    let t = ctx.round(p.t());
    if t.cmp_abs(&ctx.one()) == Some(std::cmp::Ordering::Less) {
        return Err(Error::Domain("large-t expansion needs |t| >= 1".into()));
    }
    let l = ctx.round(p.lambda());
    let nr = ctx.real(n as u32);
    match side {
        Side::PlusInfinity => {
            if t < 0 {
                return Err(Error::Domain("t must be positive on the +infinity side".into()));
            }
            let st = Float::with_val(b, t.sqrt_ref());
            let c = Float::with_val(b, &nr * 2u32) - Float::with_val(b, &l * 2u32) + 1u32;
            let alpha = Float::with_val(b, &st - c / Float::with_val(b, &t * 4u32));
            let beta = Float::with_val(b, &nr / Float::with_val(b, &st * 2u32))
                + Float::with_val(b, &nr * Float::with_val(b, &nr - Float::with_val(b, &l * 2u32)))
                    / Float::with_val(b, t.square_ref())
                    / 4u32;
            Ok((alpha, beta))
        }
        Side::MinusInfinity => {
            if t > 0 {
                return Err(Error::Domain("t must be negative on the -infinity side".into()));
            }
            let c = Float::with_val(b, &nr * 2u32) + &l + 1u32;
            let n2 = Float::with_val(b, nr.square_ref());
            let l2 = Float::with_val(b, l.square_ref());
            let nl = Float::with_val(b, &nr * &l);
            let poly = Float::with_val(b, &n2 * 10u32) + Float::with_val(b, &nl * 10u32) + &l2
                + Float::with_val(b, &nr * 10u32)
                + Float::with_val(b, &l * 5u32)
                + 6u32;
            let t4 = Float::with_val(b, t.pow_ref(4u32));
            let alpha = -Float::with_val(b, &c / &t) - Float::with_val(b, &c * &poly) / &t4;
            let nnl = Float::with_val(b, &nr + &l) * &nr;
            let poly_b = Float::with_val(b, &n2 * 5u32) + Float::with_val(b, &nl * 5u32) + &l2 + 1u32;
            let beta = Float::with_val(b, &nnl / Float::with_val(b, t.square_ref()))
                + Float::with_val(b, &nnl * &poly_b) * 4u32 / Float::with_val(b, t.pow_ref(5u32));
            Ok((alpha, beta))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;
    use crate::airy_moments::mu_k_airy;
    use crate::numeric_core::rel_diff;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256).unwrap()
    }

    /// μ_k(0;0) = 3^{(k−2)/3} Γ((k+1)/3).
    fn origin_moment(k: i64, c: PrecisionContext) -> Real {
        c.real(3).pow(&c.ratio(k - 2, 3)) * c.ratio(k + 1, 3).gamma()
    }

    #[test]
    fn delta_small_cases() {
        let c = ctx();
        let p = WeightParams::airy(0.0, 0.0, c).unwrap();
        assert_eq!(hankel_delta(0, &p).unwrap(), 1);
        let q = WeightParams::airy(0.0, 2.0, c).unwrap();
        assert!(rel_diff(&hankel_delta(1, &q).unwrap(), &c.one()) < 1e-75);
        let m: Vec<Real> = (0..3).map(|k| origin_moment(k, c)).collect();
        let expect = Float::with_val(256, &m[0] * &m[2]) - Float::with_val(256, m[1].square_ref());
        assert!(rel_diff(&hankel_delta(2, &p).unwrap(), &expect) < 1e-70);
    }

    #[test]
    fn first_coefficients_from_gamma_moments() {
        let c = ctx();
        let q = WeightParams::airy(0.0, 2.0, c).unwrap();
        let r = recurrence_from_moments(&q, 3).unwrap();
        assert_eq!(*r.beta(0).unwrap(), 0);
        let a0 = c.real(3).cbrt() * c.ratio(4, 3).gamma();
        assert!(rel_diff(r.alpha(0).unwrap(), &a0) < 1e-70);
        assert!((a0.to_f64() - 1.287_899).abs() < 1e-6);

        let p = WeightParams::airy(0.0, 0.0, c).unwrap();
        let r = recurrence_from_moments(&p, 3).unwrap();
        let m: Vec<Real> = (0..3).map(|k| origin_moment(k, c)).collect();
        let ratio = Float::with_val(256, &m[1] / &m[0]);
        let b1 = Float::with_val(256, &m[2] / &m[0]) - ratio.square();
        assert!(rel_diff(r.beta(1).unwrap(), &b1) < 1e-70);
    }

    #[test]
    fn routes_agree_and_coefficients_positive() {
        let c = PrecisionContext::for_hankel(12);
        for (t, l) in [(-8.0, -0.5), (0.0, 0.0), (3.0, 2.0), (8.0, 0.5)] {
            let p = WeightParams::airy(t, l, c).unwrap();
            let r = recurrence_from_moments(&p, 12).unwrap();
            assert!(r.diagnostics().log2_crosscheck < -f64::from(r.ctx().bits()) / 2.0);
            assert!(r.alphas().iter().all(|a| *a > 0));
            assert!(r.betas().iter().skip(1).all(|b| *b > 0));
        }
    }

    #[test]
    fn low_start_precision_is_raised_to_the_hankel_floor() {
        let c = PrecisionContext::new(64).unwrap();
        for (t, n) in [(1.0, 10), (8.0, 30)] {
            let p = WeightParams::airy(t, 0.0, c).unwrap();
            let r = recurrence_from_moments(&p, n).unwrap();
            let d = r.diagnostics();
            let floor = PrecisionContext::for_hankel(n + 1).bits();
            assert_eq!(d.working_bits, floor << d.escalations);
        }
    }

    #[test]
    fn chebyshev_matches_hermite_like_moments() {
        // Moments of e^{−x²}/√π: μ_{2k} = (2k−1)!!/2^k, giving α = 0, β_n = n/2.
        let c = ctx();
        let mut m = Vec::new();
        for j in 0..12u32 {
            if j % 2 == 1 {
                m.push(c.zero());
            } else {
                let mut v = c.one();
                for i in (1..j).step_by(2) {
                    v *= i;
                }
                m.push(v / c.pow2(-(j as i32) / 2).recip());
            }
        }
        let out = chebyshev_recurrence(&m, 5, c).unwrap();
        for n in 1..=5u32 {
            assert!(rel_diff(&out.betas[n as usize], &c.ratio(n as i64, 2)) < 1e-70);
            assert!(out.alphas[n as usize].to_f64().abs() < 1e-70);
        }
    }

    #[test]
    fn row_shift_first_derivative_is_shifted_minor() {
        let c = ctx();
        let p = WeightParams::airy(1.0, 0.5, c).unwrap();
        let t = MomentTable::build(&p, 12).unwrap();
        let cache = HankelCache::build(t.values(), 4, c).unwrap();
        for n in 1..=5 {
            let d1 = hankel_delta_derivative(t.values(), n, 1, c).unwrap();
            assert!(rel_diff(&d1, &cache.shifted[n]) < 1e-70);
        }
        // n = 1: Δ″_1 = μ_2
        let d2 = hankel_delta_derivative(t.values(), 1, 2, c).unwrap();
        assert!(rel_diff(&d2, &mu_k_airy(&p, 2).unwrap()) < 1e-70);
    }

    #[test]
    fn exact_derivative_identities() {
        let c = PrecisionContext::new(384).unwrap();
        for (t, l) in [(0.0, 0.0), (2.0, 0.5), (-2.0, 1.0)] {
            let p = WeightParams::airy(t, l, c).unwrap();
            let r = recurrence_from_moments(&p, 7).unwrap();
            for n in 0..=5 {
                let a = alpha_logderiv_check(n, &r).unwrap();
                assert!(a.passes(), "logderiv n={n}: {}", a.relative());
                if n >= 1 {
                    let e = toda_equation_residual(n, &r).unwrap();
                    assert!(e.passes(), "toda n={n}: {}", e.relative());
                }
            }
        }
    }

    #[test]
    fn string_equations_hold() {
        let c = PrecisionContext::for_hankel(11);
        for (t, l, n) in [(0.0, 0.0, 1), (3.0, 2.0, 5), (-5.0, 0.5, 10)] {
            let p = WeightParams::airy(t, l, c).unwrap();
            let r = recurrence_from_moments(&p, 11).unwrap();
            let (s1, s2) = string_system_residual(n, &r).unwrap();
            assert!(s1.passes() && s2.passes(), "n={n}: {} {}", s1.relative(), s2.relative());
        }
    }

    #[test]
    fn toda_and_differential_systems_hold_wang_does_not() {
        let c = ctx();
        let p = WeightParams::airy(1.0, 1.0, c).unwrap();
        let j = coefficient_jet(&p, 4).unwrap();
        for n in 0..=3 {
            let (a, b) = toda_system_residual(n, &j).unwrap();
            assert!(a.passes() && b.passes(), "toda n={n}: {a:?} {b:?}");
            let (a, b) = diff_system_residual(n, &j).unwrap();
            assert!(a.passes() && b.passes(), "diff n={n}: {} {}", a.relative(), b.relative());
        }
        let (w1, w2) = wang_system_residual(2, &j).unwrap();
        assert!(w1.relative() > 1e-2 && w2.relative() > 1e-2);
        assert!(j.max_relative_estimate(3) < 1e-15);
    }

    #[test]
    fn printed_expansion_spot_values() {
        let c = ctx();
        let p = WeightParams::airy(0.0, 0.0, c).unwrap();
        let (a, b) = asympt_large_n(1000, &p).unwrap();
        let lead_a = c.real(2) * c.real(100).cbrt();
        assert!(rel_diff(&a, &lead_a) < 1e-2);
        assert!(rel_diff(&b, &c.real(100).cbrt().square()) < 1e-2);

        let l = 0.3;
        let p = WeightParams::airy(100.0, l, c).unwrap();
        let (_, b1) = asympt_large_t(1, &p, Side::PlusInfinity).unwrap();
        let expect = c.real(0.05) + c.real(1.0 - 2.0 * l) / 40000u32;
        assert!(rel_diff(&b1, &expect) < 1e-15);
        let (_, b0) = asympt_large_t(0, &p, Side::PlusInfinity).unwrap();
        assert_eq!(b0, 0);

        let p = WeightParams::airy(-50.0, 0.0, c).unwrap();
        let (a2, _) = asympt_large_t(2, &p, Side::MinusInfinity).unwrap();
        let expect = c.real(5) / 50u32 - c.real(5 * 66) / c.real(50).pow(4u32);
        assert!(rel_diff(&a2, &expect) < 1e-70);
        assert!(asympt_large_t(1, &p, Side::PlusInfinity).is_err());
    }
}
