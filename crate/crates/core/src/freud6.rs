//! The symmetric weight |x|^{2λ+1} e^{−x⁶+tx²} on ℝ: moments, β_n, the
//! polynomials S_n, their ladder and ODE coefficients, mixed recurrence,
//! zero interlacing and bounds, and the Sturm convexity classifier.
//!
//! α_n ≡ 0. Odd polynomials are x·q(x²) with q orthogonal for the same
//! one-sided weight as the even polynomials at λ+1, so S_{2m+1}(x;λ) =
//! x·S_{2m}(x;λ+1) exactly.

use std::cmp::Ordering;

use rug::Float;

use crate::airy_moments::mu0_airy;
use crate::airy_polys::{compare, increasing_along, jacobi_zeros, poly_jet, MonotonicityReport, Separation, ZeroSet};
use crate::airy_recurrence::{hankel_delta_from, recurrence_from_moments, RecurrenceCoeffs};
use crate::error::{Error, Result};
use crate::numeric_core::{log2_rel_diff, tanh_sinh_quad, Enclosure, PrecisionContext, Real, RealExt, UpperLimit};
use crate::poly::Poly;
use crate::residual::{Residual, TermSum};
use crate::weight::{Family, WeightParams};

const RESIDUAL_SLACK_BITS: f64 = 48.0;

fn check_family(p: &WeightParams) -> Result<()> {
    if p.family() != Family::SexticFreud {
        return Err(Error::Domain("expected the sextic Freud family".into()));
    }
    Ok(())
}

/// μ_j; odd j gives exactly 0. Even j = 2k maps onto the one-sided engine:
/// μ_{2k} = 3^{−(λ+k+1)/3}·μ_0^{Airy}(3^{−1/3}t; λ+k).
pub fn mu_freud6(p: &WeightParams, j: usize) -> Result<Real> {
    let ctx = p.ctx();
    if *p.lambda() <= -1 {
        return Err(Error::Domain(format!("lambda must exceed -1, got {}", p.lambda().to_f64())));
    }
    if j % 2 == 1 {
        return Ok(ctx.zero());
    }
    let k = j / 2;
    let w = ctx.widened(16);
    let b = w.bits();
    let three = w.real(3);
    let cbrt3 = Float::with_val(b, three.cbrt_ref());
    let t = Float::with_val(b, p.t() / &cbrt3);
    let lk = Float::with_val(b, p.lambda() + k as u32);
    let q = WeightParams::new(Family::GeneralisedAiry, t, lk.clone(), w)?;
    let expo = -(lk + 1u32) / 3u32;
    let scale = Float::with_val(b, three.pow_ref(&expo));
    Ok(ctx.round(&(mu0_airy(&q)? * scale)))
}

/// μ_j by quadrature of the defining integral, 2∫₀^∞ x^{2λ+1+j}e^{−x⁶+tx²}dx.
pub fn freud6_moment_by_quadrature(p: &WeightParams, j: usize) -> Result<Real> {
    let ctx = p.ctx();
    if j % 2 == 1 {
        return Ok(ctx.zero());
    }
    let expo = Float::with_val(ctx.bits(), p.lambda() * 2u32) + (1 + j) as u32;
    let t = p.t().clone();
    let v = tanh_sinh_quad(
        |x| {
            let b = x.prec();
            let arg = Float::with_val(b, x.ln_ref()) * &expo - Float::with_val(b, x.pow_ref(6u32))
                + Float::with_val(b, &t * Float::with_val(b, x.square_ref()));
            arg.exp()
        },
        &ctx.zero(),
        &UpperLimit::Infinite,
        ctx,
    )?;
    Ok(v * 2u32)
}

/// β_0 = 0, β_1..β_N for the sextic weight.
#[derive(Clone, Debug)]
pub struct Freud6Coeffs {
    inner: RecurrenceCoeffs,
    log2_split_crosscheck: f64,
}

impl Freud6Coeffs {
    #[must_use]
    pub fn params(&self) -> &WeightParams {
        self.inner.params()
    }

    #[must_use]
    pub fn ctx(&self) -> PrecisionContext {
        self.inner.ctx()
    }

    #[must_use]
    pub fn n_max(&self) -> usize {
        self.inner.n_max()
    }

    #[must_use]
    pub fn betas(&self) -> &[Real] {
        self.inner.betas()
    }

    pub fn beta(&self, n: usize) -> Result<&Real> {
        self.inner.beta(n)
    }

    /// The same data as a general recurrence (α ≡ 0).
    #[must_use]
    pub fn as_recurrence(&self) -> &RecurrenceCoeffs {
        &self.inner
    }

    /// log2 of the largest relative gap to the even/odd split-Hankel β.
    #[must_use]
    pub fn log2_split_crosscheck(&self) -> f64 {
        self.log2_split_crosscheck
    }

    #[must_use]
    pub fn log2_tolerance(&self, extra_bits: f64) -> f64 {
        self.inner.log2_tolerance(extra_bits)
    }
}

/// Δ_{2m} = H0_m·H1_m and Δ_{2m+1} = H0_{m+1}·H1_m with
/// H0_m = det[μ_{2(i+j)}], H1_m = det[μ_{2(i+j)+2}].
fn split_deltas(evens: &[Real], n_max: usize, ctx: PrecisionContext) -> Result<Vec<Real>> {
    let h0 = |m: usize| hankel_delta_from(evens, m, ctx);
    let h1 = |m: usize| hankel_delta_from(&evens[1..], m, ctx);
    (0..=n_max + 1)
        .map(|n| {
            let m = n / 2;
            let (a, b) = if n % 2 == 0 { (h0(m)?, h1(m)?) } else { (h0(m + 1)?, h1(m)?) };
            Ok(a * b)
        })
        .collect()
}

/// β_1..β_N from full Hankel determinants (odd entries zero), cross-checked
/// against the even/odd split factorisation.
pub fn beta_freud6(p: &WeightParams, n_max: usize) -> Result<Freud6Coeffs> {
    check_family(p)?;
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let inner = recurrence_from_moments(p, n_max)?;
    let ctx = inner.ctx();
    let b = ctx.bits();
    let m = inner.table().values();
    let mut evens: Vec<Real> = m.iter().step_by(2).cloned().collect();
    while evens.len() < n_max + 2 {
        evens.push(mu_freud6(&p.with_ctx(ctx), 2 * evens.len())?);
    }
    let d = split_deltas(&evens, n_max, ctx)?;
    let cross = (1..=n_max)
        .map(|n| {
            let s = Float::with_val(b, &d[n - 1] * &d[n + 1]) / Float::with_val(b, d[n].square_ref());
            log2_rel_diff(&s, &inner.betas()[n])
        })
        .fold(f64::NEG_INFINITY, f64::max);
    if cross > -f64::from(b) / 2.0 {
        return Err(Error::InvalidCoefficients(format!("split-Hankel cross-check differs by 2^{cross:.1}")));
    }
    Ok(Freud6Coeffs { inner, log2_split_crosscheck: cross })
}

/// Coefficient sets at λ, λ+1, …, λ+s_max.
pub fn freud6_lambda_ladder(p: &WeightParams, n_max: usize, s_max: u32) -> Result<Vec<Freud6Coeffs>> {
    (0..=s_max).map(|s| beta_freud6(&p.with_lambda_shift(s), n_max)).collect()
}

#[allow(non_snake_case)]
pub fn eval_S(n: usize, x: &Real, c: &Freud6Coeffs) -> Result<Real> {
    let r = c.as_recurrence();
    Ok(poly_jet(n, x, r.alphas(), r.betas(), r.ctx())?.values.swap_remove(n)[0].clone())
}

/// Zeros of S_n from the Jacobi matrix with zero diagonal.
#[allow(non_snake_case)]
pub fn zeros_S(n: usize, c: &Freud6Coeffs) -> Result<ZeroSet> {
    jacobi_zeros(n, c.as_recurrence())
}

/// Which ℬ_n to use in the ladder relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderForm {
    /// With the parity term (λ+½)[1−(−1)^n].
    Corrected,
    /// The earlier form without the parity term.
    Uncorrected,
}

/// 𝒜_n = 6xβ_nC_n, ℬ_n = 6x²β_nD_n + (λ+½)[1−(−1)^n].
#[derive(Clone, Debug)]
pub struct Freud6Ladder {
    pub n: usize,
    /// β_{n−2}..β_{n+2}; negative indices read as 0.
    window: Vec<Real>,
    t: Real,
    lambda: Real,
    ctx: PrecisionContext,
}

impl Freud6Ladder {
    pub fn new(n: usize, c: &Freud6Coeffs) -> Result<Self> {
        if n == 0 || n + 2 > c.n_max() {
            return Err(Error::IndexOutOfRange { index: n + 2, max: c.n_max() });
        }
        let ctx = c.ctx();
        let window = (0..5)
            .map(|j| {
                let idx = n as isize - 2 + j;
                if idx < 0 { ctx.zero() } else { c.betas()[idx as usize].clone() }
            })
            .collect();
        Ok(Self { n, window, t: ctx.round(c.params().t()), lambda: ctx.round(c.params().lambda()), ctx })
    }

    /// β_{n+off}, off ∈ −2..=2.
    fn b(&self, off: isize) -> &Real {
        &self.window[(off + 2) as usize]
    }

    #[must_use]
    pub fn beta(&self) -> &Real {
        self.b(0)
    }

    /// C_{n+off}, off ∈ {−1, 0}.
    #[must_use]
    pub fn c_poly(&self, off: isize) -> Poly {
        let ctx = self.ctx;
        let bits = ctx.bits();
        let (bm, b0, b1, b2) = (self.b(off - 1), self.b(off), self.b(off + 1), self.b(off + 2));
        let c0 = Float::with_val(bits, b2 * b1) + Float::with_val(bits, b1 + b0).square()
            + Float::with_val(bits, bm * b0)
            - Float::with_val(bits, &self.t / 3u32);
        let c2 = Float::with_val(bits, b0 + b1);
        Poly::new(vec![c0, ctx.zero(), c2, ctx.zero(), ctx.one()], ctx)
    }

    #[must_use]
    pub fn d_poly(&self) -> Poly {
        let ctx = self.ctx;
        let c0 = Float::with_val(ctx.bits(), self.b(-1) + self.b(0)) + self.b(1);
        Poly::new(vec![c0, ctx.zero(), ctx.one()], ctx)
    }

    /// (λ+½)[1−(−1)^n]: 0 for even n, 2λ+1 for odd n.
    #[must_use]
    pub fn parity_term(&self) -> Real {
        if self.n % 2 == 1 {
            Float::with_val(self.ctx.bits(), &self.lambda * 2u32) + 1u32
        } else {
            self.ctx.zero()
        }
    }

    #[must_use]
    pub fn a_poly(&self) -> Poly {
        let six_beta = Float::with_val(self.ctx.bits(), self.beta() * 6u32);
        (&Poly::x(self.ctx) * &self.c_poly(0)).scale(&six_beta)
    }

    #[must_use]
    pub fn b_poly(&self, form: LadderForm) -> Poly {
        let ctx = self.ctx;
        let six_beta = Float::with_val(ctx.bits(), self.beta() * 6u32);
        let x2 = Poly::monomial(ctx.one(), 2, ctx);
        let main = (&x2 * &self.d_poly()).scale(&six_beta);
        match form {
            LadderForm::Corrected => &main + &Poly::constant(self.parity_term(), ctx),
            LadderForm::Uncorrected => main,
        }
    }
}

/// x S_n′ − 𝒜_nS_{n−1} + ℬ_nS_n.
pub fn ladder_residual_freud6(n: usize, x: &Real, c: &Freud6Coeffs) -> Result<Residual> {
    ladder_residual_freud6_with(n, x, c, LadderForm::Corrected)
}

pub fn ladder_residual_freud6_with(n: usize, x: &Real, c: &Freud6Coeffs, form: LadderForm) -> Result<Residual> {
    let l = Freud6Ladder::new(n, c)?;
    let ctx = c.ctx();
    let x = ctx.round(x);
    let r = c.as_recurrence();
    let j = poly_jet(n, &x, r.alphas(), r.betas(), ctx)?;
    let mut s = TermSum::new(ctx);
    s.add(Float::with_val(ctx.bits(), &x * j.dp(n)));
    s.sub(l.a_poly().eval(&x) * j.p(n - 1));
    s.add(l.b_poly(form).eval(&x) * j.p(n));
    Ok(s.finish(c.log2_tolerance(RESIDUAL_SLACK_BITS)))
}

/// Readings of the printed bracket "[1−(−1)^n−1]" in T_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketReading {
    /// [1−(−1)^{n−1}]
    A,
    /// [1−(−1)^n] − 1
    B,
    /// [1−(−1)^n], the value used in ℬ_n.
    C,
}

impl BracketReading {
    pub const ALL: [BracketReading; 3] = [BracketReading::A, BracketReading::B, BracketReading::C];

    #[must_use]
    pub fn value(self, n: usize) -> i32 {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        match self {
            BracketReading::A => 1 + sign,
            BracketReading::B => -sign,
            BracketReading::C => 1 - sign,
        }
    }

    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            BracketReading::A => "1-(-1)^(n-1)",
            BracketReading::B => "[1-(-1)^n]-1",
            BracketReading::C => "1-(-1)^n",
        }
    }
}

/// The reading that the adjudication selects (see [`adjudicate_bracket`]).
pub const ADOPTED_READING: BracketReading = BracketReading::C;

fn nonzero_x(x: &Real) -> Result<()> {
    if x.is_zero() {
        return Err(Error::Domain("x must be nonzero (T_n has 1/x terms)".into()));
    }
    Ok(())
}

/// x S_n″ + Q_nS_n′ + T_nS_n under the adopted bracket reading.
pub fn ode_residual_freud6(n: usize, x: &Real, c: &Freud6Coeffs) -> Result<Option<Residual>> {
    ode_residual_freud6_with(n, x, c, ADOPTED_READING)
}

/// Q_n, T_n as displayed with the bracket read as `reading`. `Ok(None)`
/// when C_n(x) vanishes to working precision.
pub fn ode_residual_freud6_with(n: usize, x: &Real, c: &Freud6Coeffs, reading: BracketReading) -> Result<Option<Residual>> {
    nonzero_x(x)?;
    let l = Freud6Ladder::new(n, c)?;
    let ctx = c.ctx();
    let b = ctx.bits();
    let x = ctx.round(x);
    let cn = l.c_poly(0).eval(&x);
    let guard = Float::with_val(b, x.pow_ref(4u32)) * ctx.pow2(-(b as i32) / 2);
    if cn.cmp_abs(&guard) != Some(Ordering::Greater) && cn.cmp_abs(&ctx.pow2(-(b as i32) / 2)) != Some(Ordering::Greater) {
        return Ok(None);
    }
    let cm = l.c_poly(-1).eval(&x);
    let dn = l.d_poly().eval(&x);
    let (t, lam) = (&l.t, &l.lambda);
    let beta = l.beta().clone();
    let bsum = Float::with_val(b, l.b(0) + l.b(1));
    let x2 = Float::with_val(b, x.square_ref());
    let x4 = Float::with_val(b, x2.square_ref());
    let x5 = Float::with_val(b, &x4 * &x);
    let x6 = Float::with_val(b, &x4 * &x2);
    let two_l1 = Float::with_val(b, lam * 2u32) + 1u32;
    let kappa = ctx.real(reading.value(n));
    let half_kappa_l = Float::with_val(b, lam + ctx.ratio(1, 2)) * &kappa;
    let bd = Float::with_val(b, &beta * &dn);
    // {6x²β_nD_n + (λ+½)κ}
    let bhat = Float::with_val(b, &bd * &x2) * 6u32 + &half_kappa_l;

    let r = c.as_recurrence();
    let j = poly_jet(n, &x, r.alphas(), r.betas(), ctx)?;
    let (s0, s1, s2) = (j.p(n), j.dp(n), j.d2p(n));

    let mut s = TermSum::new(ctx);
    s.add(Float::with_val(b, &x * s2));
    // Q_n = 2tx² − 6x⁶ + 2λ + 1 − 2x²(2x² + β_n + β_{n+1})/C_n
    s.add(Float::with_val(b, t * &x2) * 2u32 * s1);
    s.sub(Float::with_val(b, &x6 * 6u32) * s1);
    s.add(Float::with_val(b, &two_l1 * s1));
    let qfrac = Float::with_val(b, &x2 * 2u32) * (Float::with_val(b, &x2 * 2u32) + &bsum) / &cn;
    s.sub(qfrac * s1);
    // T_n, term by term.
    s.add(Float::with_val(b, &x * &beta) * &cm * &cn * 36u32 * s0);
    s.add(Float::with_val(b, &x2 * &x) * &beta * 12u32 * s0);
    s.add(Float::with_val(b, &two_l1 / &x) * &bhat * s0);
    s.add(Float::with_val(b, &x * &bd) * 12u32 * s0);
    let second = Float::with_val(b, &x * &bd) * 6u32
        + Float::with_val(b, &two_l1 * &kappa) / Float::with_val(b, &x * 2u32)
        - Float::with_val(b, t * &x) * 2u32
        + Float::with_val(b, &x5 * 6u32);
    s.sub(Float::with_val(b, &bhat * &second) * s0);
    let first = Float::with_val(b, &cn + Float::with_val(b, &x4 * 4u32)) + Float::with_val(b, &x2 * 2u32) * &bsum;
    s.sub(first * &bhat / Float::with_val(b, &x * &cn) * s0);
    Ok(Some(s.finish(c.log2_tolerance(RESIDUAL_SLACK_BITS))))
}

/// The same ODE with Q_n, T_n assembled from 𝒜_n, ℬ_n:
/// Q = 2λ+2 − xv′ − x𝒜′/𝒜, T = 𝒜_n𝒜_{n−1}/(xβ_{n−1}) + ℬ′ − ℬ[v′ + (ℬ−2λ−1)/x] − ℬ𝒜′/𝒜.
pub fn ode_residual_freud6_generic(n: usize, x: &Real, c: &Freud6Coeffs) -> Result<Residual> {
    nonzero_x(x)?;
    let l = Freud6Ladder::new(n, c)?;
    let ctx = c.ctx();
    let b = ctx.bits();
    let x = ctx.round(x);
    let a = l.a_poly();
    let bp = l.b_poly(LadderForm::Corrected);
    let av = a.eval(&x);
    let ad = a.deriv().eval(&x);
    let bv = bp.eval(&x);
    let bd = bp.deriv().eval(&x);
    let vp = Float::with_val(b, x.pow_ref(5u32)) * 6u32 - Float::with_val(b, &l.t * &x) * 2u32;
    let two_l1 = Float::with_val(b, &l.lambda * 2u32) + 1u32;
    // 𝒜_n𝒜_{n−1}/(xβ_{n−1}) = 36xβ_nC_{n−1}C_n, which stays finite at n = 1.
    let aa = Float::with_val(b, &x * l.beta()) * l.c_poly(-1).eval(&x) * l.c_poly(0).eval(&x) * 36u32;
    let ratio = Float::with_val(b, &ad / &av);
    let q = Float::with_val(b, &two_l1 + 1u32) - Float::with_val(b, &x * &vp) - Float::with_val(b, &x * &ratio);
    let tt = aa + &bd
        - Float::with_val(b, &bv * (Float::with_val(b, &bv - &two_l1) / &x + &vp))
        - Float::with_val(b, &bv * &ratio);
    let r = c.as_recurrence();
    let j = poly_jet(n, &x, r.alphas(), r.betas(), ctx)?;
    let mut s = TermSum::new(ctx);
    s.add(Float::with_val(b, &x * j.d2p(n)));
    s.add(q * j.dp(n));
    s.add(tt * j.p(n));
    Ok(s.finish(c.log2_tolerance(RESIDUAL_SLACK_BITS)))
}

/// Worst relative ODE residual per reading, and the reading chosen.
#[derive(Clone, Debug)]
pub struct BracketAdjudication {
    pub worst_log2: Vec<(BracketReading, f64)>,
    pub log2_tolerance: f64,
    /// The unique reading at roundoff, if exactly one is.
    pub adopted: Option<BracketReading>,
}

/// Evaluates every reading for each n at each x; adopts the reading whose
/// residuals all pass when it is the only one that does.
pub fn adjudicate_bracket(c: &Freud6Coeffs, ns: &[usize], xs: &[f64]) -> Result<BracketAdjudication> {
    let ctx = c.ctx();
    let mut worst_log2 = Vec::new();
    let mut passing = Vec::new();
    let mut tol = f64::NEG_INFINITY;
    for reading in BracketReading::ALL {
        let mut worst = f64::NEG_INFINITY;
        let mut all = true;
        for &n in ns {
            for &xf in xs {
                if let Some(r) = ode_residual_freud6_with(n, &ctx.real(xf), c, reading)? {
                    worst = worst.max(r.log2_relative());
                    tol = tol.max(r.log2_tolerance);
                    all &= r.passes();
                }
            }
        }
        worst_log2.push((reading, worst));
        if all {
            passing.push(reading);
        }
    }
    let adopted = if passing.len() == 1 { Some(passing[0]) } else { None };
    Ok(BracketAdjudication { worst_log2, log2_tolerance: tol, adopted })
}

/// x²S_n(x;λ+1) − xS_{n+1}(x;λ) + (β_{n+1}+a_n)S_n(x;λ).
///
/// `ladder` holds coefficient sets at λ and λ+1.
pub fn mixed_recurrence_freud6(n: usize, x: &Real, ladder: &[Freud6Coeffs]) -> Result<Residual> {
    if ladder.len() < 2 {
        return Err(Error::Domain("need coefficient sets at lambda and lambda+1".into()));
    }
    let (c0, c1) = (ladder[0].as_recurrence(), ladder[1].as_recurrence());
    if n + 2 > c0.n_max() + 1 || n > c1.n_max() {
        return Err(Error::IndexOutOfRange { index: n + 2, max: c0.n_max() + 1 });
    }
    let ctx = c0.ctx().max(c1.ctx());
    let b = ctx.bits();
    let zero = ctx.zero();
    let j0 = poly_jet(n + 2, &zero, c0.alphas(), c0.betas(), ctx)?;
    // a_n: values at 0 for even n, derivatives at 0 for odd n.
    let (num, den) = if n % 2 == 0 { (j0.p(n + 2), j0.p(n)) } else { (j0.dp(n + 2), j0.dp(n)) };
    if den.is_zero() {
        return Err(Error::Degenerate(format!("active denominator of a_{n} vanishes")));
    }
    let a_n = Float::with_val(b, num / den);
    let x = ctx.round(x);
    let jx = poly_jet(n + 1, &x, c0.alphas(), c0.betas(), ctx)?;
    let j1 = poly_jet(n, &x, c1.alphas(), c1.betas(), ctx)?;
    let mut s = TermSum::new(ctx);
    s.add(Float::with_val(b, x.square_ref()) * j1.p(n));
    s.sub(Float::with_val(b, &x * jx.p(n + 1)));
    s.add(Float::with_val(b, &c0.betas()[n + 1] + &a_n) * jx.p(n));
    let tol = ladder[0].log2_tolerance(RESIDUAL_SLACK_BITS).max(ladder[1].log2_tolerance(RESIDUAL_SLACK_BITS));
    Ok(s.finish(tol))
}

/// Outcome of one inequality in a zero chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkStatus {
    /// lower < upper with disjoint enclosures.
    Strict,
    /// Enclosures still overlap after escalation: equal to working precision.
    Coincident,
    /// upper < lower.
    Violated,
}

#[derive(Clone, Debug)]
pub struct ChainEntry {
    pub label: String,
    pub value: Enclosure,
}

#[derive(Clone, Debug)]
pub struct Link {
    pub lower: String,
    pub upper: String,
    pub status: LinkStatus,
}

/// Consecutive inequalities of a displayed chain.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub name: String,
    pub links: Vec<Link>,
}

impl ChainReport {
    fn from_entries(name: &str, entries: &[ChainEntry]) -> Self {
        let links = entries
            .windows(2)
            .map(|w| Link {
                lower: w[0].label.clone(),
                upper: w[1].label.clone(),
                status: match compare(&w[0].value, &w[1].value) {
                    Separation::Below => LinkStatus::Strict,
                    Separation::Above => LinkStatus::Violated,
                    Separation::Overlap => LinkStatus::Coincident,
                },
            })
            .collect();
        Self { name: name.into(), links }
    }

    /// Every link strict.
    #[must_use]
    pub fn holds(&self) -> bool {
        self.links.iter().all(|l| l.status == LinkStatus::Strict)
    }

    #[must_use]
    pub fn count(&self, status: LinkStatus) -> usize {
        self.links.iter().filter(|l| l.status == status).count()
    }

    fn has_overlap(&self) -> bool {
        self.count(LinkStatus::Coincident) > 0
    }
}

/// The interlacing chains for S_n(λ), S_{n−1}(λ), S_{n−1}(λ+k), S_{n−1}(λ+1).
#[derive(Clone, Debug)]
pub struct InterlacingReport {
    pub n: usize,
    pub k: f64,
    pub working_bits: u32,
    /// The positive-zero chain for the parity of n.
    pub positive: ChainReport,
    /// The full chain over all zeros, negative side as printed.
    pub symmetric_printed: ChainReport,
    /// The full chain with negative-side triples in mirror order.
    pub symmetric_mirror: ChainReport,
    /// n even: the middle zero of each S_{n−1} set contains 0.
    pub origin_zeros: Option<bool>,
}

struct ChainSets {
    n: ZeroSet,
    lam: ZeroSet,
    lam_k: Option<ZeroSet>,
    lam_1: ZeroSet,
}

fn entry(label: String, value: &Enclosure) -> ChainEntry {
    ChainEntry { label, value: value.clone() }
}

fn origin(ctx: PrecisionContext) -> ChainEntry {
    ChainEntry { label: "0".into(), value: Enclosure { lo: ctx.zero(), hi: ctx.zero() } }
}

impl ChainSets {
    /// x_{j,n−1} at λ, λ+k, λ+1; reversed when `mirror`.
    fn triple(&self, j: usize, mirror: bool) -> Vec<ChainEntry> {
        let d = self.lam.n;
        let mut v = vec![entry(format!("x({j},{d};lam)"), self.lam.x(j))];
        if let Some(z) = &self.lam_k {
            v.push(entry(format!("x({j},{d};lam+k)"), z.x(j)));
        }
        v.push(entry(format!("x({j},{d};lam+1)"), self.lam_1.x(j)));
        if mirror {
            v.reverse();
        }
        v
    }

    fn top(&self, j: usize) -> ChainEntry {
        entry(format!("x({j},{};lam)", self.n.n), self.n.x(j))
    }

    /// 0 < … for the positive zeros; even and odd n as displayed.
    fn positive_chain(&self, ctx: PrecisionContext) -> Vec<ChainEntry> {
        let n = self.n.n;
        let m = n / 2;
        let mut e = vec![origin(ctx)];
        if n % 2 == 0 {
            for j in (1..=m).rev() {
                e.push(self.top(j));
                if j > 1 {
                    e.extend(self.triple(j - 1, false));
                }
            }
        } else {
            for j in (1..=m).rev() {
                e.extend(self.triple(j, false));
                e.push(self.top(j));
            }
        }
        e
    }

    /// x_{n,n} < T_{n−1} < x_{n−1,n} < … < T_1 < x_{1,n}; for even n the
    /// middle triple of S_{n−1} sits at 0 and is replaced by 0.
    fn symmetric_chain(&self, ctx: PrecisionContext, mirror_negative: bool) -> Vec<ChainEntry> {
        let n = self.n.n;
        let d = n - 1;
        let positive_count = d / 2;
        let middle = if d % 2 == 1 { Some(positive_count + 1) } else { None };
        let mut e = Vec::new();
        for j in (1..=n).rev() {
            e.push(self.top(j));
            if j >= 2 {
                let i = j - 1;
                if Some(i) == middle {
                    e.push(origin(ctx));
                } else {
                    e.extend(self.triple(i, mirror_negative && i > positive_count));
                }
            }
        }
        e
    }
}

fn chain_sets(n: usize, p: &WeightParams, k: &Real) -> Result<ChainSets> {
    let base = beta_freud6(p, n)?;
    let ones = beta_freud6(&p.with_lambda_shift(1), n)?;
    let lam_k = if *k == 1 { None } else { Some(zeros_S(n - 1, &beta_freud6(&p.with_lambda_offset(k)?, n)?)?) };
    Ok(ChainSets { n: zeros_S(n, &base)?, lam: zeros_S(n - 1, &base)?, lam_k, lam_1: zeros_S(n - 1, &ones)? })
}

/// Checks the interlacing chains among zeros of S_n(λ), S_{n−1}(λ),
/// S_{n−1}(λ+k), S_{n−1}(λ+1). Overlapping enclosures trigger one rerun
/// at doubled precision; overlaps that survive are reported as coincident.
/// k = 1 collapses the λ+k entries onto λ+1.
pub fn interlacing_check(n: usize, p: &WeightParams, k: f64) -> Result<InterlacingReport> {
    check_family(p)?;
    if n < 2 {
        return Err(Error::Domain("interlacing needs n >= 2".into()));
    }
    if !(k > 0.0 && k <= 1.0) {
        return Err(Error::Domain("k must lie in (0, 1]".into()));
    }
    let mut ctx = p.ctx();
    let mut report = None;
    for _ in 0..2 {
        let q = p.with_ctx(ctx);
        let sets = chain_sets(n, &q, &ctx.real(k))?;
        let positive_name = if n % 2 == 0 { "positive zeros, n even" } else { "positive zeros, n odd" };
        let positive = ChainReport::from_entries(positive_name, &sets.positive_chain(ctx));
        let printed = ChainReport::from_entries("all zeros, as printed", &sets.symmetric_chain(ctx, false));
        let mirror = ChainReport::from_entries("all zeros, negative side mirrored", &sets.symmetric_chain(ctx, true));
        let origin_zeros = (n % 2 == 0).then(|| {
            let mid = n / 2;
            let zero = ctx.zero();
            [Some(&sets.lam), sets.lam_k.as_ref(), Some(&sets.lam_1)]
                .into_iter()
                .flatten()
                .all(|z| z.x(mid).contains(&zero))
        });
        let overlap = positive.has_overlap() || printed.has_overlap() || mirror.has_overlap();
        report = Some(InterlacingReport {
            n,
            k,
            working_bits: ctx.bits(),
            positive,
            symmetric_printed: printed,
            symmetric_mirror: mirror,
            origin_zeros,
        });
        if !overlap {
            break;
        }
        ctx = ctx.with_bits(2 * ctx.bits());
    }
    report.ok_or_else(|| Error::Degenerate("no interlacing pass ran".into()))
}

/// Largest-zero bound max_{1≤k≤n−1} √(c_nβ_k), c_n = 4cos²(π/(n+1)) + ε.
#[derive(Clone, Debug)]
pub struct UpperBound {
    pub bound: Real,
    pub largest: Enclosure,
    pub holds: bool,
}

pub fn zero_upper_bound_freud6(n: usize, c: &Freud6Coeffs, eps: f64) -> Result<UpperBound> {
    if n < 2 || n > c.n_max() {
        return Err(Error::IndexOutOfRange { index: n, max: c.n_max() });
    }
    if !(eps > 0.0) {
        return Err(Error::Domain("epsilon must be positive".into()));
    }
    let ctx = c.ctx();
    let b = ctx.bits();
    let cn = Float::with_val(b, ctx.pi() / (n as u32 + 1)).cos().square() * 4u32 + ctx.real(eps);
    let bmax = c.betas()[1..n].iter().max_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal)).cloned().unwrap_or_else(|| ctx.zero());
    let bound = (cn * bmax).sqrt();
    let z = zeros_S(n, c)?;
    let largest = z.largest().clone();
    let holds = largest.hi < bound;
    Ok(UpperBound { bound, largest, holds })
}

/// Positive zeros x_{ν,n}, ν = 1..⌊n/2⌋, along a t-grid and a λ-grid.
pub fn positive_zero_monotonicity(n: usize, base: &WeightParams, ts: &[f64], lambdas: &[f64]) -> Result<MonotonicityReport> {
    check_family(base)?;
    let strictly = |v: &[f64]| v.windows(2).all(|w| w[0] < w[1]);
    if !strictly(ts) || !strictly(lambdas) {
        return Err(Error::Domain("grids must be strictly increasing".into()));
    }
    let ctx = base.ctx();
    let zs = |p: WeightParams| -> Result<ZeroSet> { zeros_S(n, &beta_freud6(&p, n)?) };
    let along_t = ts.iter().map(|&t| zs(base.with_t(&ctx.real(t)))).collect::<Result<Vec<_>>>()?;
    let along_l = lambdas
        .iter()
        .map(|&l| zs(WeightParams::new(Family::SexticFreud, base.t().clone(), ctx.real(l), ctx)?))
        .collect::<Result<Vec<_>>>()?;
    let m = n / 2;
    Ok(MonotonicityReport {
        n,
        in_t: (1..=m).map(|nu| increasing_along(&along_t, nu)).collect(),
        in_lambda: (1..=m).map(|nu| increasing_along(&along_l, nu)).collect(),
    })
}

/// Which coefficient F to use in the normal form y″ + Fy = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// Rederived from the ladder; exact.
    Derived,
    /// As printed.
    Printed,
}

/// F(x) and F′(x) for λ = −½, t < 0, with y = S_n·√(ω/Ã_n).
#[derive(Clone, Debug)]
pub struct NormalFormCoeff {
    n: usize,
    beta: Real,
    t: Real,
    at: Poly,
    atm: Poly,
    bt: Poly,
    vp: Poly,
    vpp: Poly,
    ctx: PrecisionContext,
}

impl NormalFormCoeff {
    pub fn new(n: usize, c: &Freud6Coeffs) -> Result<Self> {
        check_family(c.params())?;
        let ctx = c.ctx();
        if ctx.round(c.params().lambda()) != ctx.ratio(-1, 2) {
            return Err(Error::Domain("the normal form needs lambda = -1/2".into()));
        }
        if *c.params().t() >= 0 {
            return Err(Error::Domain("the normal form needs t < 0 (A_n > 0)".into()));
        }
        let l = Freud6Ladder::new(n, c)?;
        let six = ctx.real(6);
        let at = l.c_poly(0).scale(&six);
        let atm = l.c_poly(-1).scale(&six);
        let six_beta = Float::with_val(ctx.bits(), l.beta() * 6u32);
        let bt = (&Poly::x(ctx) * &l.d_poly()).scale(&six_beta);
        let t = l.t.clone();
        let two_t = Float::with_val(ctx.bits(), &t * 2u32);
        let vp = Poly::new(vec![ctx.zero(), -two_t, ctx.zero(), ctx.zero(), ctx.zero(), six], ctx);
        let vpp = vp.deriv();
        Ok(Self { n, beta: l.beta().clone(), t, at, atm, bt, vp, vpp, ctx })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn t(&self) -> &Real {
        &self.t
    }

    /// P0 = β_nÃ_{n−1}Ã_n + B̃′ − B̃(B̃+v′) + v″/2 − v′²/4 and N1 = (2B̃+v′)Ã′ − Ã″.
    fn parts(&self) -> (Poly, Poly) {
        let ctx = self.ctx;
        let half = ctx.ratio(1, 2);
        let quarter = ctx.ratio(1, 4);
        let p0 = &(&(&(&self.atm * &self.at).scale(&self.beta) + &self.bt.deriv())
            - &(&self.bt * &(&self.bt + &self.vp)))
            + &(&self.vpp.scale(&half) - &(&self.vp * &self.vp).scale(&quarter));
        let two_b = self.bt.scale(&ctx.real(2));
        let n1 = &(&(&two_b + &self.vp) * &self.at.deriv()) - &self.at.deriv().deriv();
        (p0, n1)
    }

    /// F(x), derived form.
    #[must_use]
    pub fn f(&self, x: &Real) -> Real {
        let b = self.ctx.bits();
        let (p0, n1) = self.parts();
        let a = self.at.eval(x);
        let ad = self.at.deriv().eval(x);
        let r = Float::with_val(b, &ad / &a);
        p0.eval(x) - n1.eval(x) / Float::with_val(b, &a * 2u32) - Float::with_val(b, r.square_ref()) * 3u32 / 4u32
    }

    /// F′(x) from the closed form.
    #[must_use]
    pub fn df(&self, x: &Real) -> Real {
        let b = self.ctx.bits();
        let (p0, n1) = self.parts();
        let a = self.at.eval(x);
        let a1 = self.at.deriv().eval(x);
        let a2 = self.at.deriv().deriv().eval(x);
        let a2sq = Float::with_val(b, a.square_ref());
        let q = (n1.deriv().eval(x) * &a - n1.eval(x) * &a1) / (Float::with_val(b, &a2sq * 2u32));
        let cube = Float::with_val(b, &a2sq * &a);
        let r = (Float::with_val(b, &a1 * &a2) * &a - Float::with_val(b, a1.pow_ref(3u32))) * 3u32
            / (cube * 2u32);
        p0.deriv().eval(x) - q - r
    }

    /// The printed F.
    #[must_use]
    pub fn f_printed(&self, x: &Real) -> Real {
        let b = self.ctx.bits();
        let a = self.at.eval(x);
        let a1 = self.at.deriv().eval(x);
        let a2 = self.at.deriv().deriv().eval(x);
        let bt = self.bt.eval(x);
        let vp = self.vp.eval(x);
        let vpp = self.vpp.eval(x);
        let ratio = Float::with_val(b, &a1 / Float::with_val(b, &a * 2u32));
        Float::with_val(b, &self.beta * self.atm.eval(x)) * &a
            - (Float::with_val(b, vp.square_ref()) - &vpp) / 2u32
            - Float::with_val(b, &bt * Float::with_val(b, &bt - &vp))
            + Float::with_val(b, &vp / 4u32)
            - Float::with_val(b, ratio.square_ref()) * 3u32
            + self.bt.deriv().eval(x)
            - (Float::with_val(b, Float::with_val(b, &bt * 2u32) + &vp) * &a1 - &a2) / Float::with_val(b, &a * 2u32)
    }

    /// y″ + Fy divided by √(ω/Ã_n): S″ + 2hS′ + (h′ + h² + F)S with
    /// h = −v′/2 − Ã′/(2Ã).
    pub fn residual(&self, x: &Real, c: &Freud6Coeffs, form: NormalForm) -> Result<Residual> {
        let ctx = self.ctx;
        let b = ctx.bits();
        let x = ctx.round(x);
        let a = self.at.eval(&x);
        let a1 = self.at.deriv().eval(&x);
        let a2 = self.at.deriv().deriv().eval(&x);
        let r = Float::with_val(b, &a1 / &a);
        let h = -(self.vp.eval(&x) / 2u32) - Float::with_val(b, &r / 2u32);
        let dh = -(self.vpp.eval(&x) / 2u32) - (Float::with_val(b, &a2 / &a) - Float::with_val(b, r.square_ref())) / 2u32;
        let f = match form {
            NormalForm::Derived => self.f(&x),
            NormalForm::Printed => self.f_printed(&x),
        };
        let rr = c.as_recurrence();
        let j = poly_jet(self.n, &x, rr.alphas(), rr.betas(), ctx)?;
        let mut s = TermSum::new(ctx);
        s.add(j.d2p(self.n).clone());
        s.add(Float::with_val(b, &h * 2u32) * j.dp(self.n));
        s.add(dh * j.p(self.n));
        s.add(Float::with_val(b, h.square_ref()) * j.p(self.n));
        s.add(f * j.p(self.n));
        Ok(s.finish(c.log2_tolerance(RESIDUAL_SLACK_BITS)))
    }
}

/// Monotonicity of F over one inter-zero gap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Zone {
    /// F increasing: gaps shrink.
    ConcaveZone,
    /// F decreasing: gaps grow.
    ConvexZone,
    Mixed,
}

/// One Sturm prediction over three consecutive zeros x_k < x_{k+1} < x_{k+2}.
#[derive(Clone, Debug)]
pub struct SturmCheck {
    /// Index of x_k in ascending order (0-based).
    pub k: usize,
    pub zone: Zone,
    pub gap_before: f64,
    pub gap_after: f64,
    /// Some(whether the gap order matches), None for mixed zones or
    /// inconclusive enclosures.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ConvexityProfile {
    pub n: usize,
    pub t: f64,
    /// (x, F(x), F′(x)) scan samples.
    pub samples: Vec<(f64, f64, f64)>,
    /// Zone of each gap (x_k, x_{k+1}).
    pub zones: Vec<Zone>,
    pub checks: Vec<SturmCheck>,
}

impl ConvexityProfile {
    /// No asserted prediction fails.
    #[must_use]
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.holds != Some(false))
    }

    #[must_use]
    pub fn asserted(&self) -> usize {
        self.checks.iter().filter(|c| c.holds.is_some()).count()
    }

    /// Gaps read the same from both ends (symmetric zeros).
    #[must_use]
    pub fn gaps_palindromic(&self, tol: f64) -> bool {
        let g: Vec<f64> = self.checks.iter().map(|c| c.gap_before).chain(self.checks.last().map(|c| c.gap_after)).collect();
        g.iter().zip(g.iter().rev()).all(|(a, b)| (a - b).abs() <= tol * a.abs().max(1.0))
    }
}

/// Points per inter-zero gap in the F′ scan.
pub const CONVEXITY_POINTS_PER_GAP: usize = 64;

/// Scans F′ on every gap between zeros of S_n (λ = −½, t < 0) and checks
/// the Sturm gap ordering where two consecutive gaps share a zone.
pub fn sturm_convexity_profile(n: usize, c: &Freud6Coeffs) -> Result<ConvexityProfile> {
    if n < 3 {
        return Err(Error::Domain("convexity needs at least three zeros".into()));
    }
    let nf = NormalFormCoeff::new(n, c)?;
    let ctx = c.ctx();
    let b = ctx.bits();
    let z = zeros_S(n, c)?;
    let mids = z.mids();
    let mut samples = Vec::new();
    let mut zones = Vec::new();
    for w in mids.windows(2) {
        let width = Float::with_val(b, &w[1] - &w[0]);
        let (mut pos, mut neg) = (false, false);
        for i in 0..=CONVEXITY_POINTS_PER_GAP {
            let x = Float::with_val(b, &width * i as u32) / CONVEXITY_POINTS_PER_GAP as u32 + &w[0];
            let d = nf.df(&x);
            if d > 0 {
                pos = true;
            } else if d < 0 {
                neg = true;
            } else {
                pos = true;
                neg = true;
            }
            samples.push((x.to_f64(), nf.f(&x).to_f64(), d.to_f64()));
        }
        zones.push(match (pos, neg) {
            (true, false) => Zone::ConcaveZone,
            (false, true) => Zone::ConvexZone,
            _ => Zone::Mixed,
        });
    }
    let gap = |k: usize| Enclosure {
        lo: Float::with_val(b, &z.zeros[k + 1].lo - &z.zeros[k].hi),
        hi: Float::with_val(b, &z.zeros[k + 1].hi - &z.zeros[k].lo),
    };
    let checks = (0..n - 2)
        .map(|k| {
            let zone = if zones[k] == zones[k + 1] { zones[k] } else { Zone::Mixed };
            let (g0, g1) = (gap(k), gap(k + 1));
            let holds = match (zone, compare(&g1, &g0)) {
                (Zone::Mixed, _) | (_, Separation::Overlap) => None,
                (Zone::ConcaveZone, s) => Some(s == Separation::Below),
                (Zone::ConvexZone, s) => Some(s == Separation::Above),
            };
            SturmCheck { k, zone, gap_before: g0.mid().to_f64(), gap_after: g1.mid().to_f64(), holds }
        })
        .collect();
    Ok(ConvexityProfile { n, t: c.params().t().to_f64(), samples, zones, checks })
}
