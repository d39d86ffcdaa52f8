//! Generalised Airy polynomials: evaluation, ladder and ODE residuals,
//! the λ+2 mixed recurrence, zeros and zero bounds.

use std::cmp::Ordering;

use rug::Float;

use crate::airy_recurrence::{recurrence_from_moments, RecurrenceCoeffs};
use crate::error::{Error, Result};
use crate::numeric_core::{tridiag_eigs, Enclosure, PrecisionContext, Real, RealExt, SymTridiag};
use crate::poly::Poly;
use crate::residual::{Residual, TermSum};
use crate::weight::WeightParams;

/// Extra bits above eps·cond allowed for polynomial-level residuals.
pub const RESIDUAL_SLACK_BITS: f64 = 48.0;

/// (p, p′, p″) for degrees 0..=n at one x.
#[derive(Clone, Debug)]
pub struct PolyJet {
    pub values: Vec<[Real; 3]>,
}

impl PolyJet {
    #[must_use]
    pub fn p(&self, k: usize) -> &Real {
        &self.values[k][0]
    }

    #[must_use]
    pub fn dp(&self, k: usize) -> &Real {
        &self.values[k][1]
    }

    #[must_use]
    pub fn d2p(&self, k: usize) -> &Real {
        &self.values[k][2]
    }
}

/// Forward recurrence, differentiated twice.
pub fn poly_jet(n: usize, x: &Real, alphas: &[Real], betas: &[Real], ctx: PrecisionContext) -> Result<PolyJet> {
    if n > alphas.len() || n > betas.len() {
        return Err(Error::IndexOutOfRange { index: n, max: alphas.len().min(betas.len()) });
    }
    let b = ctx.bits();
    let x = ctx.round(x);
    let mut values: Vec<[Real; 3]> = Vec::with_capacity(n + 1);
    values.push([ctx.one(), ctx.zero(), ctx.zero()]);
    let zero = [ctx.zero(), ctx.zero(), ctx.zero()];
    for k in 0..n {
        let xa = Float::with_val(b, &x - &alphas[k]);
        let cur = &values[k];
        let prev = if k == 0 { &zero } else { &values[k - 1] };
        let bk = &betas[k];
        let p = Float::with_val(b, &xa * &cur[0]) - Float::with_val(b, bk * &prev[0]);
        let dp = Float::with_val(b, &xa * &cur[1]) + &cur[0] - Float::with_val(b, bk * &prev[1]);
        let d2p = Float::with_val(b, &xa * &cur[2]) + Float::with_val(b, &cur[1] * 2u32)
            - Float::with_val(b, bk * &prev[2]);
        values.push([p, dp, d2p]);
    }
    Ok(PolyJet { values })
}

/// P_n(x) by the three-term recurrence.
#[allow(non_snake_case)]
pub fn eval_P(n: usize, x: &Real, c: &RecurrenceCoeffs) -> Result<Real> {
    Ok(poly_jet(n, x, c.alphas(), c.betas(), c.ctx())?.values.swap_remove(n)[0].clone())
}

/// P_n in the monomial basis, built by the recurrence.
#[derive(Clone, Debug)]
pub struct MonicPolynomial {
    poly: Poly,
    params: WeightParams,
}

impl MonicPolynomial {
    pub fn from_recurrence(n: usize, c: &RecurrenceCoeffs) -> Result<Self> {
        if n > c.n_max() {
            return Err(Error::IndexOutOfRange { index: n, max: c.n_max() });
        }
        let ctx = c.ctx();
        let x = Poly::x(ctx);
        let mut prev = Poly::constant(ctx.zero(), ctx);
        let mut cur = Poly::constant(ctx.one(), ctx);
        for k in 0..n {
            let shift = &x - &Poly::constant(c.alphas()[k].clone(), ctx);
            let next = &(&shift * &cur) - &prev.scale(&c.betas()[k]);
            prev = cur;
            cur = next;
        }
        Ok(Self { poly: cur, params: c.params().clone() })
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.poly.coeffs().len() - 1
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Real] {
        self.poly.coeffs()
    }

    #[must_use]
    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    /// Horner value and the Σ|c_k||x|^k scale.
    #[must_use]
    pub fn eval(&self, x: &Real) -> (Real, Real) {
        (self.poly.eval(x), self.poly.eval_abs(x))
    }
}

/// Ladder data for one n: A_n(x) = x + α_n + R_n/x, B_n(x) = β_n + r_n/x.
#[derive(Clone, Debug)]
pub struct LadderCoeffs {
    pub n: usize,
    pub alpha: Real,
    pub beta: Real,
    pub big_r: Real,
    /// r_n = (α_n + α_{n−1})β_n − n
    pub small_r: Real,
    /// r_n from the longer expression in α_{n±1}, β_n, β_{n+1}.
    pub small_r_long: Real,
}

impl LadderCoeffs {
    #[must_use]
    pub fn a(&self, x: &Real) -> Real {
        let b = x.prec();
        Float::with_val(b, x + &self.alpha) + Float::with_val(b, &self.big_r / x)
    }

    #[must_use]
    pub fn b(&self, x: &Real) -> Real {
        Float::with_val(x.prec(), &self.small_r / x) + &self.beta
    }
}

pub fn ladder_coeffs(n: usize, c: &RecurrenceCoeffs) -> Result<LadderCoeffs> {
    if n + 1 > c.n_max() {
        return Err(Error::IndexOutOfRange { index: n + 1, max: c.n_max() });
    }
    let ctx = c.ctx();
    let b = ctx.bits();
    let t = ctx.round(c.params().t());
    let l = ctx.round(c.params().lambda());
    let a = &c.alphas()[n];
    let ap = &c.alphas()[n + 1];
    let am = if n == 0 { ctx.zero() } else { c.alphas()[n - 1].clone() };
    let bn = &c.betas()[n];
    let bp = &c.betas()[n + 1];
    let big_r = Float::with_val(b, bn + bp) + Float::with_val(b, a.square_ref()) - &t;
    let small_r = Float::with_val(b, a + &am) * bn - n as u32;
    let inner = Float::with_val(b, &l + 1u32) - Float::with_val(b, ap * bp) + Float::with_val(b, &am * bn)
        - Float::with_val(b, a.pow_ref(3u32))
        + Float::with_val(b, &t * a);
    let small_r_long = inner / 2u32 - Float::with_val(b, a * bp);
    Ok(LadderCoeffs { n, alpha: a.clone(), beta: bn.clone(), big_r, small_r, small_r_long })
}

fn check_positive(x: &Real) -> Result<()> {
    if *x <= 0 {
        return Err(Error::Domain("x must be positive (ladder coefficients have a pole at 0)".into()));
    }
    Ok(())
}

/// P_n′ − β_nA_nP_{n−1} + B_nP_n.
pub fn ladder_residual(n: usize, x: &Real, c: &RecurrenceCoeffs) -> Result<Residual> {
    check_positive(x)?;
    if n == 0 {
        return Err(Error::Domain("ladder relation needs n >= 1".into()));
    }
    let ctx = c.ctx();
    let b = ctx.bits();
    let x = ctx.round(x);
    let lc = ladder_coeffs(n, c)?;
    let j = poly_jet(n, &x, c.alphas(), c.betas(), ctx)?;
    let mut s = TermSum::new(ctx);
    s.add(j.dp(n).clone());
    s.sub(Float::with_val(b, &lc.beta * lc.a(&x)) * j.p(n - 1));
    s.add(lc.b(&x) * j.p(n));
    Ok(s.finish(c.log2_tolerance(RESIDUAL_SLACK_BITS)))
}

/// 𝒞_n(x) = x² + β_n + β_{n+1} + α_n(α_n + x) − t = x·A_n(x).
fn curly_c(n: usize, x: &Real, c: &RecurrenceCoeffs) -> Real {
    let b = c.ctx().bits();
    let a = &c.alphas()[n];
    Float::with_val(b, x.square_ref()) + &c.betas()[n] + &c.betas()[n + 1]
        + Float::with_val(b, a + x) * a
        - c.params().t()
}

/// P_n″ + 𝒬_nP_n′ + 𝒯_nP_n with the coefficients as displayed.
///
/// `Ok(None)` when x sits on a real zero of 𝒞_n (removable point).
pub fn ode_residual_airy(n: usize, x: &Real, c: &RecurrenceCoeffs) -> Result<Option<Residual>> {
    check_positive(x)?;
    if n == 0 || n + 1 > c.n_max() {
        return Err(Error::IndexOutOfRange { index: n + 1, max: c.n_max() });
    }
    let ctx = c.ctx();
    let b = ctx.bits();
    let x = ctx.round(x);
    let t = ctx.round(c.params().t());
    let l = ctx.round(c.params().lambda());
    let cn = curly_c(n, &x, c);
    let guard = Float::with_val(b, x.square_ref()) * ctx.pow2(-(b as i32) / 2);
    if cn.cmp_abs(&guard) != Some(Ordering::Greater) {
        return Ok(None);
    }
    let cm = curly_c(n - 1, &x, c);
    let (am, a) = (&c.alphas()[n - 1], &c.alphas()[n]);
    let (bn, bp) = (&c.betas()[n], &c.betas()[n + 1]);
    let dn = Float::with_val(b, am + a) + &x;
    let x2 = Float::with_val(b, x.square_ref());
    let x3 = Float::with_val(b, x.pow_ref(3u32));
    let tx = Float::with_val(b, &t * &x);
    let nn = ctx.real(n as u32);
    let bd = Float::with_val(b, bn * &dn);
    let bd_minus_n = Float::with_val(b, &bd - &nn);

    let j = poly_jet(n, &x, c.alphas(), c.betas(), ctx)?;
    let (p, dp, d2p) = (j.p(n), j.dp(n), j.d2p(n));

    let mut s = TermSum::new(ctx);
    s.add(d2p.clone());
    // 𝒬_n = (λ + tx − x³ + 1)/x − (α_n + 2x)/𝒞_n
    let q1 = (Float::with_val(b, &l + &tx) - &x3 + 1u32) / &x;
    let q2 = Float::with_val(b, a + Float::with_val(b, &x * 2u32)) / &cn;
    s.add(q1 * dp);
    s.sub(q2 * dp);
    // 𝒯_n numerator over x², then the 𝒞_n-denominator piece.
    let t1 = Float::with_val(b, &nn - Float::with_val(b, am + a) * bn);
    let f2 = Float::with_val(b, &bd - &l) - &nn - &tx + &x3;
    let t2 = Float::with_val(b, &bd_minus_n * &f2);
    let t3 = Float::with_val(b, bn * &cm) * &cn;
    let quad = Float::with_val(b, &x2 - Float::with_val(b, a.square_ref())) - bn - bp + &t;
    let t4 = Float::with_val(b, -&bd_minus_n) * quad / &cn;
    for (term, sign) in [(t1, 1i32), (t2, -1), (t3, 1), (t4, 1)] {
        let v = term / &x2 * p;
        if sign > 0 {
            s.add(v);
        } else {
            s.sub(v);
        }
    }
    Ok(Some(s.finish(c.log2_tolerance(RESIDUAL_SLACK_BITS))))
}

/// Same ODE, coefficients assembled from A_n, B_n and v = x³/3 − tx − λ ln x.
pub fn ode_residual_airy_generic(n: usize, x: &Real, c: &RecurrenceCoeffs) -> Result<Residual> {
    check_positive(x)?;
    let ctx = c.ctx();
    let b = ctx.bits();
    let x = ctx.round(x);
    let t = ctx.round(c.params().t());
    let l = ctx.round(c.params().lambda());
    let lc = ladder_coeffs(n, c)?;
    let lm = ladder_coeffs(n - 1, c)?;
    let x2 = Float::with_val(b, x.square_ref());
    let a = lc.a(&x);
    let bb = lc.b(&x);
    let da = Float::with_val(b, 1u32 - Float::with_val(b, &lc.big_r / &x2));
    let db = Float::with_val(b, -&lc.small_r) / &x2;
    let dv = Float::with_val(b, &x2 - &t) - Float::with_val(b, &l / &x);
    let j = poly_jet(n, &x, c.alphas(), c.betas(), ctx)?;
    let ratio = Float::with_val(b, &da / &a);
    let q = Float::with_val(b, -&dv) - &ratio;
    let tt = Float::with_val(b, &db - Float::with_val(b, &bb * &ratio))
        - Float::with_val(b, &bb * Float::with_val(b, &dv + &bb))
        + Float::with_val(b, &lc.beta * lm.a(&x)) * &a;
    let mut s = TermSum::new(ctx);
    s.add(j.d2p(n).clone());
    s.add(q * j.dp(n));
    s.add(tt * j.p(n));
    Ok(s.finish(c.log2_tolerance(RESIDUAL_SLACK_BITS)))
}

/// Residuals of the four coefficient relations in x⁰, x^{−1}, x, x^{−2},
/// with R_n, r_n in their long (ladder-theorem) form.
pub fn supplementary_residuals(n: usize, c: &RecurrenceCoeffs) -> Result<[Residual; 4]> {
    if n == 0 {
        return Err(Error::Domain("supplementary relations need n >= 1".into()));
    }
    let ctx = c.ctx();
    let b = ctx.bits();
    let t = ctx.round(c.params().t());
    let l = ctx.round(c.params().lambda());
    let lc = ladder_coeffs(n, c)?;
    let lp = ladder_coeffs(n + 1, c)?;
    let lm = ladder_coeffs(n - 1, c)?;
    let tol = c.log2_tolerance(RESIDUAL_SLACK_BITS);
    let a = &lc.alpha;

    let mut e1a = TermSum::new(ctx);
    e1a.add(lc.beta.clone());
    e1a.add(c.betas()[n + 1].clone());
    e1a.sub(lc.big_r.clone());
    e1a.add(Float::with_val(b, a.square_ref()));
    e1a.sub(t.clone());

    let mut e1b = TermSum::new(ctx);
    e1b.add(lc.small_r_long.clone());
    e1b.add(lp.small_r_long.clone());
    e1b.add(Float::with_val(b, a * &lc.big_r));
    e1b.sub(l.clone());

    let mut e3a = TermSum::new(ctx);
    e3a.add(lc.small_r_long.clone());
    e3a.add(ctx.real(n as u32));
    e3a.sub(Float::with_val(b, a + &c.alphas()[n - 1]) * &lc.beta);

    let mut e3b = TermSum::new(ctx);
    e3b.add(Float::with_val(b, lc.small_r_long.square_ref()));
    e3b.sub(Float::with_val(b, &l * &lc.small_r_long));
    e3b.sub(Float::with_val(b, &lc.beta * &lc.big_r) * &lm.big_r);

    Ok([e1a.finish(tol), e1b.finish(tol), e3a.finish(tol), e3b.finish(tol)])
}

/// d_n, e_n and the interior point α_{n−1} + d_nβ_{n−1}/e_n.
#[derive(Clone, Debug)]
pub struct BoundData {
    pub d: Real,
    pub e: Real,
    pub g_zero: Real,
}

/// From coefficient sets at λ and λ+1; values at 0 by the recurrence.
pub fn bound_data(n: usize, c0: &RecurrenceCoeffs, c1: &RecurrenceCoeffs) -> Result<BoundData> {
    if n < 2 {
        return Err(Error::Domain("bound data needs n >= 2".into()));
    }
    let ctx = c0.ctx().max(c1.ctx());
    let b = ctx.bits();
    let zero = ctx.zero();
    let j0 = poly_jet(n, &zero, c0.alphas(), c0.betas(), ctx)?;
    let j1 = poly_jet(n - 1, &zero, c1.alphas(), c1.betas(), ctx)?;
    for v in [j0.p(n - 1), j0.p(n - 2), j1.p(n - 2)] {
        if v.is_zero() {
            return Err(Error::Degenerate("a polynomial vanishes at 0".into()));
        }
    }
    let r1 = Float::with_val(b, j1.p(n - 1) / j1.p(n - 2));
    let d = Float::with_val(b, j0.p(n) / j0.p(n - 1)) + &r1;
    let e = r1 * Float::with_val(b, j0.p(n - 1) / j0.p(n - 2));
    if e.is_zero() {
        return Err(Error::Degenerate("e_n vanishes".into()));
    }
    let g_zero = Float::with_val(b, &d * &c0.betas()[n - 1]) / &e + &c0.alphas()[n - 1];
    Ok(BoundData { d, e, g_zero })
}

/// x²P_{n−2}(x;λ+2) − [e_n/β_{n−1}(x − α_{n−1}) − d_n]P_{n−1}(x;λ) − (1 − e_n/β_{n−1})P_n(x;λ).
///
/// `ladder` holds coefficient sets at λ, λ+1, λ+2.
pub fn mixed_recurrence_residual(n: usize, x: &Real, ladder: &[RecurrenceCoeffs]) -> Result<Residual> {
    if ladder.len() < 3 {
        return Err(Error::Domain("need coefficient sets at lambda, lambda+1, lambda+2".into()));
    }
    let (c0, c1, c2) = (&ladder[0], &ladder[1], &ladder[2]);
    let bd = bound_data(n, c0, c1)?;
    let ctx = c0.ctx().max(c1.ctx()).max(c2.ctx());
    let b = ctx.bits();
    let x = ctx.round(x);
    let j0 = poly_jet(n, &x, c0.alphas(), c0.betas(), ctx)?;
    let j2 = poly_jet(n - 2, &x, c2.alphas(), c2.betas(), ctx)?;
    let ratio = Float::with_val(b, &bd.e / &c0.betas()[n - 1]);
    let g = Float::with_val(b, &ratio * Float::with_val(b, &x - &c0.alphas()[n - 1])) - &bd.d;
    let mut s = TermSum::new(ctx);
    s.add(Float::with_val(b, x.square_ref()) * j2.p(n - 2));
    s.sub(g * j0.p(n - 1));
    s.sub(Float::with_val(b, 1u32 - &ratio) * j0.p(n));
    let tol = c0.log2_tolerance(RESIDUAL_SLACK_BITS).max(c2.log2_tolerance(RESIDUAL_SLACK_BITS));
    Ok(s.finish(tol))
}

/// Zeros of P_n or S_n, ascending, with enclosures.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub n: usize,
    pub zeros: Vec<Enclosure>,
    pub params: WeightParams,
}

impl ZeroSet {
    /// x_{k,n} with k = 1 the largest zero.
    #[must_use]
    pub fn x(&self, k: usize) -> &Enclosure {
        &self.zeros[self.n - k]
    }

    #[must_use]
    pub fn largest(&self) -> &Enclosure {
        &self.zeros[self.n - 1]
    }

    #[must_use]
    pub fn smallest(&self) -> &Enclosure {
        &self.zeros[0]
    }

    #[must_use]
    pub fn mids(&self) -> Vec<Real> {
        self.zeros.iter().map(Enclosure::mid).collect()
    }

    /// Strictly increasing with disjoint enclosures.
    #[must_use]
    pub fn is_separated(&self) -> bool {
        self.zeros.windows(2).all(|w| w[0].strictly_below(&w[1]))
    }
}

/// Eigenvalues of the Jacobi matrix (α_0..α_{n−1}; √β_1..√β_{n−1}).
pub fn jacobi_zeros(n: usize, c: &RecurrenceCoeffs) -> Result<ZeroSet> {
    if n == 0 || n > c.n_max() {
        return Err(Error::IndexOutOfRange { index: n, max: c.n_max() });
    }
    let ctx = c.ctx();
    let j = SymTridiag::jacobi(c.alphas(), c.betas(), n, ctx)?;
    // The bisection certifies eigenvalues of the computed matrix only. A relative
    // coefficient error rel moves them by at most rel·‖J‖∞ (Weyl).
    let rel = ctx.pow2((c.log2_tolerance(0.0).max(c.diagnostics().log2_crosscheck)).ceil() as i32);
    let row = |i: usize| {
        let mut r = j.diag()[i].abs_val();
        if i > 0 {
            r += j.offdiag()[i - 1].abs_val();
        }
        if i + 1 < n {
            r += j.offdiag()[i].abs_val();
        }
        r
    };
    let norm = (0..n).map(row).fold(ctx.zero(), |m, r| if r > m { r } else { m });
    let by = Float::with_val(ctx.bits(), &norm * &rel);
    let zeros = tridiag_eigs(&j, ctx).iter().map(|e| e.widened(&by)).collect();
    Ok(ZeroSet { n, zeros, params: c.params().clone() })
}

/// Zeros of P_n; all must be positive.
#[allow(non_snake_case)]
pub fn zeros_P(n: usize, c: &RecurrenceCoeffs) -> Result<ZeroSet> {
    let z = jacobi_zeros(n, c)?;
    if z.smallest().lo <= 0 {
        return Err(Error::InvalidCoefficients("a zero is not positive".into()));
    }
    Ok(z)
}

/// How two enclosures compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    Below,
    Above,
    Overlap,
}

#[must_use]
pub fn compare(a: &Enclosure, b: &Enclosure) -> Separation {
    if a.strictly_below(b) {
        Separation::Below
    } else if b.strictly_below(a) {
        Separation::Above
    } else {
        Separation::Overlap
    }
}

/// Whether the n−1 zeros of `inner` strictly separate the n zeros of `outer`.
/// `None` when an enclosure comparison is inconclusive.
#[must_use]
pub fn interlaces(inner: &ZeroSet, outer: &ZeroSet) -> Option<bool> {
    if inner.zeros.len() + 1 != outer.zeros.len() {
        return Some(false);
    }
    for (i, y) in inner.zeros.iter().enumerate() {
        for (x, want) in [(&outer.zeros[i], Separation::Below), (&outer.zeros[i + 1], Separation::Above)] {
            match compare(x, y) {
                Separation::Overlap => return None,
                s if s != want => return Some(false),
                _ => {}
            }
        }
    }
    Some(true)
}

/// Result of the extreme-zero bound theorem at one point.
#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub bound: Real,
    pub holds: bool,
    /// P_n(·;λ) and P_{n−2}(·;λ+2) have disjoint zero enclosures.
    pub coprime: bool,
    pub data: BoundData,
}

/// x_{n,n} < α_{n−1} + d_nβ_{n−1}/e_n < x_{1,n}.
pub fn zero_bound_check(n: usize, ladder: &[RecurrenceCoeffs]) -> Result<BoundCheck> {
    if n < 2 || ladder.len() < 3 {
        return Err(Error::Domain("bound check needs n >= 2 and sets at lambda..lambda+2".into()));
    }
    let data = bound_data(n, &ladder[0], &ladder[1])?;
    let z = zeros_P(n, &ladder[0])?;
    let coprime = if n > 2 {
        let w = zeros_P(n - 2, &ladder[2])?;
        z.zeros.iter().all(|a| w.zeros.iter().all(|b| !a.overlaps(b)))
    } else {
        true
    };
    let holds = z.smallest().hi < data.g_zero && data.g_zero < z.largest().lo;
    Ok(BoundCheck { bound: data.g_zero.clone(), holds, coprime, data })
}

/// Coefficient sets at λ, λ+1, λ+2 up to index n.
pub fn lambda_ladder(p: &WeightParams, n_max: usize) -> Result<Vec<RecurrenceCoeffs>> {
    (0..3).map(|s| recurrence_from_moments(&p.with_lambda_shift(s), n_max)).collect()
}

/// Per-zero monotonicity along a t-grid and a λ-grid.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityReport {
    pub n: usize,
    /// For ν = 1..=n: strictly increasing along t (None: inconclusive).
    pub in_t: Vec<Option<bool>>,
    pub in_lambda: Vec<Option<bool>>,
}

impl MonotonicityReport {
    #[must_use]
    pub fn all_increasing(&self) -> bool {
        self.in_t.iter().chain(&self.in_lambda).all(|v| *v == Some(true))
    }
}

pub(crate) fn increasing_along(sets: &[ZeroSet], nu: usize) -> Option<bool> {
    for w in sets.windows(2) {
        match compare(w[0].x(nu), w[1].x(nu)) {
            Separation::Below => {}
            Separation::Above => return Some(false),
            Separation::Overlap => return None,
        }
    }
    Some(true)
}

/// Zeros x_{ν,n} along t (λ fixed at `base`) and along λ (t fixed).
pub fn zero_monotonicity_report(n: usize, base: &WeightParams, ts: &[f64], lambdas: &[f64]) -> Result<MonotonicityReport> {
    let strictly = |v: &[f64]| v.windows(2).all(|w| w[0] < w[1]);
    if !strictly(ts) || !strictly(lambdas) {
        return Err(Error::Domain("grids must be strictly increasing".into()));
    }
    let ctx = base.ctx();
    let along_t = ts
        .iter()
        .map(|&t| zeros_P(n, &recurrence_from_moments(&base.with_t(&ctx.real(t)), n)?))
        .collect::<Result<Vec<_>>>()?;
    let along_l = lambdas
        .iter()
        .map(|&l| {
            let p = WeightParams::new(base.family(), base.t().clone(), ctx.real(l), ctx)?;
            zeros_P(n, &recurrence_from_moments(&p, n)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonotonicityReport {
        n,
        in_t: (1..=n).map(|nu| increasing_along(&along_t, nu)).collect(),
        in_lambda: (1..=n).map(|nu| increasing_along(&along_l, nu)).collect(),
    })
}

/// Deterministic low-discrepancy points in (lo, hi].
#[must_use]
pub fn quasi_random_points(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let phi = 0.618_033_988_749_894_8_f64;
    (1..=count)
        .map(|j| {
            let f = (j as f64 * phi).fract();
            let f = if f == 0.0 { 1.0 } else { f };
            lo + (hi - lo) * f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airy_moments::mu0_airy_quad;
    use crate::numeric_core::{rel_diff, tanh_sinh_quad, UpperLimit};

    fn coeffs(t: f64, l: f64, n: usize) -> RecurrenceCoeffs {
        let c = PrecisionContext::for_hankel(n);
        recurrence_from_moments(&WeightParams::airy(t, l, c).unwrap(), n).unwrap()
    }

    #[test]
    fn low_degree_values() {
        let c = coeffs(0.0, 0.0, 4);
        let x = c.ctx().real(1.75);
        assert_eq!(eval_P(0, &x, &c).unwrap(), 1);
        let p1 = eval_P(1, &x, &c).unwrap();
        assert_eq!(p1, Float::with_val(c.ctx().bits(), &x - &c.alphas()[0]));
    }

    #[test]
    fn orthogonality_by_quadrature() {
        let c = coeffs(1.0, 0.5, 4);
        let ctx = PrecisionContext::new(256).unwrap();
        let lam = ctx.real(0.5);
        let t = ctx.one();
        let v = tanh_sinh_quad(
            |x| {
                let b = x.prec();
                let w = (Float::with_val(b, x.ln_ref()) * &lam - Float::with_val(b, x.pow_ref(3u32)) / 3u32
                    + Float::with_val(b, &t * x))
                .exp();
                let p2 = eval_P(2, x, &c).unwrap();
                let p1 = eval_P(1, x, &c).unwrap();
                w * p2 * p1
            },
            &ctx.zero(),
            &UpperLimit::Infinite,
            ctx,
        )
        .unwrap();
        let mu0 = mu0_airy_quad(&t, &lam, ctx).unwrap();
        assert!((v / mu0).to_f64().abs() < 1e-60);
    }

    #[test]
    fn horner_and_recurrence_agree() {
        let c = coeffs(-1.0, 2.0, 8);
        let mp = MonicPolynomial::from_recurrence(8, &c).unwrap();
        assert_eq!(mp.degree(), 8);
        assert_eq!(mp.coeffs()[8], 1);
        let z = zeros_P(8, &c).unwrap();
        let top = z.largest().hi.to_f64();
        for f in quasi_random_points(20, 0.0, 2.0 * top) {
            let x = c.ctx().real(f);
            let (h, scale) = mp.eval(&x);
            let r = eval_P(8, &x, &c).unwrap();
            let diff = Float::with_val(c.ctx().bits(), &h - &r).abs();
            assert!(diff <= scale * c.ctx().pow2(24 - c.ctx().bits() as i32));
        }
    }

    #[test]
    fn ladder_coefficient_forms() {
        let c = coeffs(1.0, 0.5, 6);
        let lc = ladder_coeffs(3, &c).unwrap();
        assert!(rel_diff(&lc.small_r, &lc.small_r_long) < 1e-60);
        let l0 = ladder_coeffs(0, &c).unwrap();
        let r0 = Float::with_val(c.ctx().bits(), c.alphas()[0].square_ref()) + &c.betas()[1] - 1u32;
        assert!(rel_diff(&l0.big_r, &r0) < 1e-70);
        assert_eq!(l0.small_r, 0);
        // r_0 + r_1 = −α_0R_0 + λ at t = 0, λ = 0.
        let c = coeffs(0.0, 0.0, 4);
        let l0 = ladder_coeffs(0, &c).unwrap();
        let l1 = ladder_coeffs(1, &c).unwrap();
        let lhs = Float::with_val(c.ctx().bits(), &l0.small_r + &l1.small_r);
        let rhs = -Float::with_val(c.ctx().bits(), &l0.alpha * &l0.big_r);
        assert!(Float::with_val(c.ctx().bits(), &lhs - &rhs).abs().to_f64() < 1e-60);
    }

    #[test]
    fn ladder_and_ode_residuals_vanish() {
        for (t, l, n, xs) in [
            (0.0, 0.0, 1, vec![1.0]),
            (-1.0, 2.0, 4, vec![2.0, 1000.0]),
            (2.0, 0.5, 3, vec![0.5]),
            (0.0, 0.0, 2, quasi_random_points(30, 0.0, 5.0)),
        ] {
            let c = coeffs(t, l, n + 2);
            for &xf in &xs {
                let x = c.ctx().real(xf);
                let r = ladder_residual(n, &x, &c).unwrap();
                assert!(r.passes(), "ladder n={n} x={xf}: {}", r.relative());
                let o = ode_residual_airy(n, &x, &c).unwrap().unwrap();
                assert!(o.passes(), "ode n={n} x={xf}: {}", o.relative());
                let g = ode_residual_airy_generic(n, &x, &c).unwrap();
                assert!(g.passes(), "generic n={n} x={xf}");
            }
        }
        let c = coeffs(0.0, 0.0, 3);
        assert!(ladder_residual(1, &c.ctx().zero(), &c).is_err());
    }

    #[test]
    fn supplementary_relations_vanish() {
        let c = coeffs(1.5, 0.5, 8);
        for n in 1..=6 {
            for r in supplementary_residuals(n, &c).unwrap() {
                assert!(r.passes(), "n={n}: {}", r.relative());
            }
        }
    }

    #[test]
    fn mixed_recurrence_vanishes() {
        for (t, l, n, x) in [(0.0, 0.0, 2, 1.0), (1.0, 0.5, 5, 3.0), (1.0, 0.5, 5, 1e-6)] {
            let ctx = PrecisionContext::for_hankel(n + 1);
            let ladder = lambda_ladder(&WeightParams::airy(t, l, ctx).unwrap(), n + 1).unwrap();
            let r = mixed_recurrence_residual(n, &ctx.real(x), &ladder).unwrap();
            assert!(r.passes(), "n={n} x={x}: {}", r.relative());
        }
    }

    #[test]
    fn zeros_small_degrees() {
        let c = coeffs(0.0, 0.0, 6);
        let z1 = zeros_P(1, &c).unwrap();
        assert!(z1.zeros[0].contains(&c.alphas()[0]) || rel_diff(&z1.zeros[0].mid(), &c.alphas()[0]) < 1e-70);
        // (x − α_0)(x − α_1) − β_1
        let b = c.ctx().bits();
        let (a0, a1, b1) = (&c.alphas()[0], &c.alphas()[1], &c.betas()[1]);
        let s = Float::with_val(b, a0 + a1);
        let d = Float::with_val(b, a0 - a1).square() + Float::with_val(b, b1 * 4u32);
        let root = (s.clone() + d.clone().sqrt()) / 2u32;
        let z2 = zeros_P(2, &c).unwrap();
        assert!(rel_diff(&z2.largest().mid(), &root) < 1e-70);
        let z6 = zeros_P(6, &c).unwrap();
        assert!(z6.is_separated());
        for e in &z6.zeros {
            let m = e.mid();
            let v = eval_P(6, &m, &c).unwrap();
            let dv = poly_jet(6, &m, c.alphas(), c.betas(), c.ctx()).unwrap().dp(6).clone();
            let bound = dv.abs() * e.radius() * 4u32 + c.ctx().pow2(-(b as i32) / 2);
            assert!(v.abs() <= bound);
        }
    }

    #[test]
    fn extreme_zero_bound() {
        for (t, l, n) in [(0.0, 0.0, 2), (-3.0, 2.0, 8), (5.0, -0.5, 2)] {
            let ctx = PrecisionContext::for_hankel(n);
            let ladder = lambda_ladder(&WeightParams::airy(t, l, ctx).unwrap(), n).unwrap();
            let b = zero_bound_check(n, &ladder).unwrap();
            assert!(b.holds && b.coprime, "t={t} λ={l} n={n}");
        }
    }

    #[test]
    fn interlacing_consecutive_degrees() {
        let c = coeffs(2.0, 0.5, 10);
        for n in 2..=10 {
            let a = zeros_P(n - 1, &c).unwrap();
            let b = zeros_P(n, &c).unwrap();
            assert_eq!(interlaces(&a, &b), Some(true));
            assert_eq!(interlaces(&b, &a), Some(false));
        }
    }

    #[test]
    fn zeros_increase_with_t_and_lambda() {
        let ctx = PrecisionContext::for_hankel(4);
        let base = WeightParams::airy(0.0, 0.0, ctx).unwrap();
        let r = zero_monotonicity_report(4, &base, &[-2.0, 0.0, 2.0], &[0.0, 0.5, 1.0]).unwrap();
        assert!(r.all_increasing());
        let r1 = zero_monotonicity_report(1, &base, &[-1.0, 0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert!(r1.all_increasing());
        assert!(zero_monotonicity_report(2, &base, &[1.0, 0.0], &[0.0]).is_err());
    }

    #[test]
    fn points_are_deterministic_and_in_range() {
        let a = quasi_random_points(25, 0.0, 3.0);
        assert_eq!(a, quasi_random_points(25, 0.0, 3.0));
        assert!(a.iter().all(|&x| x > 0.0 && x <= 3.0));
    }
}
