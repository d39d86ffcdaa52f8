//! Grid-wide identity checks and the verification report.

use serde::Serialize;

use opk_core::airy_moments::{moment_ode_residual, mu0_airy_halfint, mu0_airy_series, mu_k_airy_quad};
use opk_core::airy_polys::{
    interlaces, lambda_ladder, ladder_residual, mixed_recurrence_residual, ode_residual_airy, ode_residual_airy_generic,
    quasi_random_points, supplementary_residuals, zero_bound_check, zero_monotonicity_report, zeros_P, MonotonicityReport,
    ZeroSet,
};
use opk_core::airy_recurrence::{
    alpha_logderiv_check, asympt_large_n, asympt_large_t, coefficient_jet, diff_system_residual, hankel_delta,
    recurrence_from_moments, string_system_residual, toda_equation_residual, toda_system_residual, wang_system_residual,
    RecurrenceCoeffs, Side,
};
use opk_core::freud6::{
    adjudicate_bracket, freud6_lambda_ladder, freud6_moment_by_quadrature, interlacing_check,
    ladder_residual_freud6, ladder_residual_freud6_with, mixed_recurrence_freud6, mu_freud6, ode_residual_freud6,
    ode_residual_freud6_generic, positive_zero_monotonicity, sturm_convexity_profile, zero_upper_bound_freud6, zeros_S,
    ChainReport, Freud6Coeffs, LadderForm, LinkStatus, NormalForm, NormalFormCoeff, ADOPTED_READING,
};
use opk_core::numeric_core::{log2_abs, log2_rel_diff, Enclosure};
use opk_core::residual::Residual;
use opk_core::{Family, PrecisionContext, Real, WeightParams};

use crate::commands::{map_cells, weight, Cell, FREUD_BOUND_EPSILON};
use crate::config::{GridValue, RunConfig, UsageError};
use crate::output::{fmt_f64, fmt_log2, Table};

pub const AIRY_SUITES: &[&str] = &[
    "moments",
    "airy-identity",
    "moment-ode",
    "positivity",
    "route-crosscheck",
    "exact-derivative",
    "string",
    "toda",
    "wang",
    "asymptotics",
    "asymptotics-n",
    "zeros",
    "ladder",
    "conjecture",
];

pub const FREUD_SUITES: &[&str] =
    &["moments", "positivity", "split-hankel", "zeros", "interlacing", "ladder", "bracket", "convexity"];

/// Highest moment index compared against its independent route.
pub const MOMENT_CHECK_K: usize = 12;
/// Indices covered by the large-|t| order test.
pub const LARGE_T_MAX_N: usize = 3;
/// |t| pair for the large-|t| order test.
pub const LARGE_T_PAIR: (u32, u32) = (25, 50);
/// Indices compared for the large-n order test.
pub const LARGE_N_PAIR: (usize, usize) = (64, 256);
/// Allowed distance of the empirical order from the prediction in the report.
const ORDER_SLACK: f64 = 1.2;
const X_SAMPLES: usize = 4;
const CHAIN_OFFSETS: [f64; 3] = [0.25, 0.5, 0.75];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// A relation known to be false, confirmed not to hold.
    ExpectedNonzero,
    /// Reported observation; never a pass or a fail.
    Evidence,
}

impl Status {
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::ExpectedNonzero => "expected-nonzero",
            Status::Evidence => "evidence",
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub identity: String,
    pub anchor: &'static str,
    pub family: &'static str,
    pub n: Option<usize>,
    pub t: String,
    pub lambda: String,
    pub detail: String,
    pub residual: Option<String>,
    pub tolerance: Option<String>,
    pub status: Status,
    pub note: String,
    #[serde(skip)]
    t_num: f64,
    #[serde(skip)]
    lambda_num: f64,
}

impl Record {
    fn sort_key(&self) -> (&str, &str, &str, Option<usize>, OrdF64, OrdF64, &str) {
        (self.suite, &self.identity, self.family, self.n, OrdF64(self.t_num), OrdF64(self.lambda_num), &self.detail)
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
struct OrdF64(f64);
impl Eq for OrdF64 {}
impl Ord for OrdF64 {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub expected_nonzero: usize,
    pub evidence: usize,
    pub overall: &'static str,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Environment {
    pub family: &'static str,
    /// Requested precision, or "auto".
    pub bits: String,
    pub max_working_bits: u32,
    pub escalations: u32,
    pub t: Vec<String>,
    pub lambda: Vec<String>,
    pub nmax: usize,
    pub only: Option<String>,
    pub n_range: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub summary: Summary,
    pub environment: Environment,
    pub records: Vec<Record>,
}

impl VerificationReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    #[must_use]
    pub fn records_table(&self) -> Table {
        let mut t = Table::new(&[
            "suite", "identity", "anchor", "family", "n", "t", "lambda", "detail", "residual", "tolerance", "status", "note",
        ]);
        t.rows = self
            .records
            .iter()
            .map(|r| {
                vec![
                    r.suite.to_string(),
                    r.identity.clone(),
                    r.anchor.to_string(),
                    r.family.to_string(),
                    r.n.map_or_else(String::new, |n| n.to_string()),
                    r.t.clone(),
                    r.lambda.clone(),
                    r.detail.clone(),
                    r.residual.clone().unwrap_or_default(),
                    r.tolerance.clone().unwrap_or_default(),
                    r.status.label().to_string(),
                    r.note.clone(),
                ]
            })
            .collect();
        t
    }

    #[must_use]
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

fn summarise(records: &[Record]) -> Summary {
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let fail = count(Status::Fail);
    Summary {
        total: records.len(),
        pass: count(Status::Pass),
        fail,
        skip: count(Status::Skip),
        expected_nonzero: count(Status::ExpectedNonzero),
        evidence: count(Status::Evidence),
        overall: if fail == 0 { "pass" } else { "fail" },
    }
}

/// Collects records for one grid cell.
struct Emitter<'a> {
    cfg: &'a RunConfig,
    family: &'static str,
    t: String,
    lambda: String,
    t_num: f64,
    lambda_num: f64,
    records: Vec<Record>,
    max_bits: u32,
    escalations: u32,
}

/// Residual digits in the report.
const RESIDUAL_DIGITS: usize = 3;

impl<'a> Emitter<'a> {
    fn new(cfg: &'a RunConfig, t: &GridValue, lambda: &GridValue) -> Self {
        Self {
            cfg,
            family: cfg.family.name(),
            t: t.text().to_string(),
            lambda: lambda.text().to_string(),
            t_num: t.to_f64(),
            lambda_num: lambda.to_f64(),
            records: Vec::new(),
            max_bits: 0,
            escalations: 0,
        }
    }

    fn wants(&self, suite: &str) -> bool {
        self.cfg.only.as_deref().map_or(true, |o| o == suite)
    }

    fn wants_n(&self, n: usize) -> bool {
        self.cfg.n_allowed(n)
    }

    fn ns(&self, range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        range.filter(|&n| self.cfg.n_allowed(n)).collect()
    }

    fn note_coeffs(&mut self, c: &RecurrenceCoeffs) {
        self.max_bits = self.max_bits.max(c.diagnostics().working_bits);
        self.escalations += c.diagnostics().escalations;
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        suite: &'static str,
        identity: &str,
        anchor: &'static str,
        n: Option<usize>,
        detail: String,
        log2_residual: Option<f64>,
        log2_tolerance: Option<f64>,
        status: Status,
        note: String,
    ) {
        self.records.push(Record {
            suite,
            identity: identity.to_string(),
            anchor,
            family: self.family,
            n,
            t: self.t.clone(),
            lambda: self.lambda.clone(),
            detail,
            residual: log2_residual.map(|l| fmt_log2(l, RESIDUAL_DIGITS)),
            tolerance: log2_tolerance.map(|l| fmt_log2(l, RESIDUAL_DIGITS)),
            status,
            note,
            t_num: self.t_num,
            lambda_num: self.lambda_num,
        });
    }

    fn residual(&mut self, suite: &'static str, identity: &str, anchor: &'static str, n: usize, detail: String, r: &Residual) {
        self.push(suite, identity, anchor, Some(n), detail, Some(r.log2_relative()), Some(r.log2_tolerance), Status::of(r.passes()), String::new());
    }

    /// Records `f`'s residual, or a fail record carrying the error.
    fn check<F>(&mut self, suite: &'static str, identity: &str, anchor: &'static str, n: usize, detail: String, f: F)
    where
        F: FnOnce() -> opk_core::Result<Residual>,
    {
        match f() {
            Ok(r) => self.residual(suite, identity, anchor, n, detail, &r),
            Err(e) => self.push(suite, identity, anchor, Some(n), detail, None, None, Status::Fail, e.to_string()),
        }
    }

    fn flag(&mut self, suite: &'static str, identity: &str, anchor: &'static str, n: Option<usize>, detail: String, ok: bool, note: String) {
        self.push(suite, identity, anchor, n, detail, None, None, Status::of(ok), note);
    }

    fn error(&mut self, suite: &'static str, identity: &str, anchor: &'static str, n: Option<usize>, e: impl std::fmt::Display) {
        self.push(suite, identity, anchor, n, String::new(), None, None, Status::Fail, e.to_string());
    }

    fn skip(&mut self, suite: &'static str, identity: &str, anchor: &'static str, n: Option<usize>, detail: String, reason: &str) {
        self.push(suite, identity, anchor, n, detail, None, None, Status::Skip, reason.to_string());
    }
}

fn x_detail(x: f64) -> String {
    format!("x={}", fmt_f64(x, 6))
}

fn cell_context(cfg: &RunConfig) -> PrecisionContext {
    cfg.table_context()
}

fn rel_record(e: &mut Emitter<'_>, suite: &'static str, identity: &str, anchor: &'static str, n: usize, detail: String, a: &Real, b: &Real, log2_tol: f64) {
    let d = if a == b { f64::NEG_INFINITY } else { log2_rel_diff(a, b) };
    e.push(suite, identity, anchor, Some(n), detail, Some(d), Some(log2_tol), Status::of(d <= log2_tol), String::new());
}

/// Relative tolerance for two independent high-precision routes.
fn route_tolerance(ctx: PrecisionContext) -> f64 {
    -0.75 * f64::from(ctx.bits())
}

// ---------------------------------------------------------------- Airy

/// Per-cell values reused by the grid-wide conjecture evidence.
#[derive(Clone, Debug, Default)]
struct CellCoeffs {
    alphas: Vec<f64>,
    betas: Vec<f64>,
}

fn airy_cell(cfg: &RunConfig, cell: &Cell<'_>) -> (Vec<Record>, u32, u32, Option<CellCoeffs>) {
    let mut e = Emitter::new(cfg, cell.t, cell.lambda);
    let ctx = cell_context(cfg);
    let nm = cfg.n_max;
    let p = match weight(Family::GeneralisedAiry, cell, ctx) {
        Ok(p) => p,
        Err(err) => {
            e.error("setup", "weight parameters", "weight definition", None, err);
            return (e.records, 0, 0, None);
        }
    };
    let c = match recurrence_from_moments(&p, nm + 2) {
        Ok(c) => c,
        Err(err) => {
            e.error("setup", "recurrence coefficients", "Hankel determinant ratios", None, err);
            return (e.records, 0, 0, None);
        }
    };
    e.note_coeffs(&c);
    let coeffs = CellCoeffs {
        alphas: c.alphas().iter().map(Real::to_f64).collect(),
        betas: c.betas().iter().map(Real::to_f64).collect(),
    };

    if e.wants("moments") {
        airy_moments_suite(&mut e, &p);
    }
    if e.wants("airy-identity") && cell.lambda.text() == "-0.5" {
        let tol = route_tolerance(ctx);
        match (mu0_airy_series(p.t(), p.lambda(), ctx), mu0_airy_halfint(p.t(), ctx)) {
            (Ok(a), Ok(b)) => rel_record(&mut e, "airy-identity", "mu0 at lambda=-1/2 vs Airy functions", "mu0(t;-1/2) = pi^{3/2} 2^{-1/3} (Ai^2+Bi^2)(2^{-2/3} t)", 0, String::new(), &a, &b, tol),
            (Err(err), _) | (_, Err(err)) => e.error("airy-identity", "mu0 at lambda=-1/2 vs Airy functions", "mu0(t;-1/2) through Ai and Bi", Some(0), err),
        }
    }
    if e.wants("moment-ode") {
        e.check("moment-ode", "moment ODE", "mu0''' - t mu0' - (lambda+1) mu0 = 0", 0, String::new(), || moment_ode_residual(&p));
    }
    if e.wants("positivity") {
        for n in e.ns(1..=nm + 1) {
            let ok = match hankel_delta(n, &p.with_ctx(c.ctx())) {
                Ok(d) => d > 0 && c.betas()[n] > 0 && c.alphas()[n] > 0,
                Err(err) => {
                    e.error("positivity", "Delta_n, alpha_n, beta_n positive", "positive-definite moment functional", Some(n), err);
                    continue;
                }
            };
            e.flag("positivity", "Delta_n, alpha_n, beta_n positive", "positive-definite moment functional on (0, inf)", Some(n), String::new(), ok, String::new());
        }
    }
    if e.wants("route-crosscheck") {
        let d = c.diagnostics();
        let tol = -f64::from(d.working_bits) / 2.0;
        e.push(
            "route-crosscheck",
            "beta_n by determinants vs moment recursion",
            "two independent routes to the recurrence",
            Some(nm + 2),
            format!("route={:?}", d.route).to_lowercase(),
            Some(d.log2_crosscheck),
            Some(tol),
            Status::of(d.log2_crosscheck <= tol),
            format!("working bits {}, log2 condition {:.1}", d.working_bits, d.log2_condition),
        );
    }
    if e.wants("exact-derivative") {
        for n in e.ns(0..=nm) {
            e.check("exact-derivative", "alpha_n as log-derivative", "alpha_n = d/dt ln(Delta_{n+1}/Delta_n), exact row shifts", n, String::new(), || alpha_logderiv_check(n, &c));
            if n >= 1 {
                e.check("exact-derivative", "Toda equation", "d^2/dt^2 ln Delta_n = Delta_{n-1} Delta_{n+1} / Delta_n^2", n, String::new(), || toda_equation_residual(n, &c));
            }
        }
    }
    if e.wants("string") {
        for n in e.ns(1..=nm) {
            match string_system_residual(n, &c) {
                Ok((a, b)) => {
                    e.residual("string", "string system, first equation", "discrete system: linear-in-beta equation = 2n+lambda+1", n, String::new(), &a);
                    e.residual("string", "string system, second equation", "discrete system: cubic-in-beta equation = n(n+lambda)", n, String::new(), &b);
                }
                Err(err) => e.error("string", "string system", "discrete system in n", Some(n), err),
            }
        }
    }
    if e.wants("toda") || e.wants("wang") {
        airy_jet_suites(&mut e, &p, nm);
    }
    if e.wants("asymptotics") && cell.t_index == 0 {
        large_t_suite(&mut e, cell, ctx);
    }
    if e.wants("asymptotics-n") {
        if cfg.only.as_deref() == Some("asymptotics-n") {
            large_n_suite(&mut e, &p);
        } else {
            e.skip("asymptotics-n", "large-n expansion order", "large-n expansions with kappa = 10^{1/3}", None, String::new(), "needs coefficients to n = 256 (several seconds per cell); run with --only asymptotics-n");
        }
    }
    if e.wants("zeros") || e.wants("ladder") {
        match lambda_ladder(&p, nm + 1) {
            Ok(ladder) => {
                if e.wants("zeros") {
                    airy_zero_suite(&mut e, &c, &ladder, nm);
                }
                if e.wants("ladder") {
                    airy_ladder_suite(&mut e, &c, &ladder, nm);
                }
            }
            Err(err) => e.error("zeros", "coefficients at lambda, lambda+1, lambda+2", "lambda ladder", None, err),
        }
    }
    let (bits, esc) = (e.max_bits, e.escalations);
    (e.records, bits, esc, Some(coeffs))
}

fn airy_moments_suite(e: &mut Emitter<'_>, p: &WeightParams) {
    let ctx = p.ctx();
    let tol = route_tolerance(ctx);
    for k in 0..=MOMENT_CHECK_K {
        let q = p.with_lambda_shift(k as u32);
        match (mu0_airy_series(q.t(), q.lambda(), ctx), mu_k_airy_quad(p, k)) {
            (Ok(a), Ok(b)) => rel_record(e, "moments", "closed form vs quadrature", "mu_k = mu_0(t; lambda+k), three-term 1F2 closed form", k, format!("k={k}"), &a, &b, tol),
            (Err(err), _) | (_, Err(err)) => e.error("moments", "closed form vs quadrature", "mu_k closed form", Some(k), err),
        }
    }
}

fn airy_jet_suites(e: &mut Emitter<'_>, p: &WeightParams, nm: usize) {
    let j = match coefficient_jet(p, nm + 1) {
        Ok(j) => j,
        Err(err) => {
            e.error("toda", "coefficient jets in t", "Richardson derivatives of alpha_n, beta_n", None, err);
            return;
        }
    };
    for n in e.ns(0..=nm) {
        if e.wants("toda") {
            match toda_system_residual(n, &j) {
                Ok((a, b)) => {
                    e.residual("toda", "Toda system, alpha equation", "d alpha_n/dt = beta_{n+1} - beta_n", n, String::new(), &a);
                    e.residual("toda", "Toda system, beta equation", "d beta_n/dt = beta_n (alpha_n - alpha_{n-1})", n, String::new(), &b);
                }
                Err(err) => e.error("toda", "Toda system", "Toda system in t", Some(n), err),
            }
            match diff_system_residual(n, &j) {
                Ok((a, b)) => {
                    e.residual("toda", "differential system, first equation", "second-order system in t for (alpha_n, beta_n)", n, String::new(), &a);
                    e.residual("toda", "differential system, second equation", "second-order system in t for (alpha_n, beta_n)", n, String::new(), &b);
                }
                Err(err) => e.error("toda", "differential system", "second-order system in t", Some(n), err),
            }
        }
        if e.wants("wang") && n >= 1 {
            match wang_system_residual(n, &j) {
                Ok((a, b)) => {
                    for (r, which, anchor) in [
                        (a, "published system, alpha equation", "claimed: d alpha_n/dt = t - alpha_n^2 - 2 beta_n"),
                        (b, "published system, beta equation", "claimed: d beta_n/dt = 2 alpha_n beta_n - n - lambda/2"),
                    ] {
                        // The claimed system is false; a vanishing residual would contradict that.
                        let nonzero = r.log2_relative() > -f64::from(p.ctx().bits()) / 4.0;
                        let status = if nonzero { Status::ExpectedNonzero } else { Status::Fail };
                        let note = if nonzero { "the claimed relation does not hold, as expected" } else { "residual vanished; the claimed relation held here" };
                        e.push("wang", which, anchor, Some(n), String::new(), Some(r.log2_relative()), None, status, note.into());
                    }
                }
                Err(err) => e.error("wang", "published system", "claimed system in t", Some(n), err),
            }
        }
    }
}

/// Predicted decay power of the absolute error of each truncated expansion.
#[must_use]
pub fn large_t_predicted_order(side: Side, coefficient: char) -> f64 {
    match (side, coefficient) {
        (Side::PlusInfinity, 'a') => 2.5,
        (Side::PlusInfinity, _) => 3.5,
        (Side::MinusInfinity, 'a') => 7.0,
        (Side::MinusInfinity, _) => 8.0,
    }
}

/// Absolute expansion errors (α, β) at index n and the given t.
pub fn large_t_errors(n: usize, t: f64, lambda: &Real, side: Side, ctx: PrecisionContext) -> opk_core::Result<(Real, Real)> {
    let p = WeightParams::new(Family::GeneralisedAiry, ctx.real(t), lambda.clone(), ctx)?;
    let c = recurrence_from_moments(&p, n + 1)?;
    let (a, b) = asympt_large_t(n, &p, side)?;
    let ea = Real::with_val(c.ctx().bits(), &c.alphas()[n] - &a);
    let eb = Real::with_val(c.ctx().bits(), &c.betas()[n] - &b);
    Ok((ea, eb))
}

/// log2(e(|t|=lo) / e(|t|=hi)) / log2(hi/lo).
#[must_use]
pub fn empirical_order(e_lo: &Real, e_hi: &Real, lo: f64, hi: f64) -> f64 {
    (log2_abs(e_lo) - log2_abs(e_hi)) / (hi / lo).log2()
}

fn large_t_suite(e: &mut Emitter<'_>, cell: &Cell<'_>, ctx: PrecisionContext) {
    let lambda = cell.lambda.to_real(ctx);
    let (lo, hi) = (f64::from(LARGE_T_PAIR.0), f64::from(LARGE_T_PAIR.1));
    for n in e.ns(0..=LARGE_T_MAX_N) {
        for (side, sign, name) in [(Side::PlusInfinity, 1.0, "t -> +inf"), (Side::MinusInfinity, -1.0, "t -> -inf")] {
            let pair = large_t_errors(n, sign * lo, &lambda, side, ctx).and_then(|a| Ok((a, large_t_errors(n, sign * hi, &lambda, side, ctx)?)));
            let ((ea_lo, eb_lo), (ea_hi, eb_hi)) = match pair {
                Ok(v) => v,
                Err(err) => {
                    e.error("asymptotics", "large-|t| expansion order", "large-|t| expansions", Some(n), err);
                    continue;
                }
            };
            for (which, el, eh) in [('a', &ea_lo, &ea_hi), ('b', &eb_lo, &eb_hi)] {
                let coef = if which == 'a' { "alpha" } else { "beta" };
                let identity = format!("{coef}_n expansion order, {name}");
                if which == 'b' && n == 0 {
                    let ok = el.is_zero() && eh.is_zero();
                    e.flag("asymptotics", &identity, "large-|t| expansions", Some(n), String::new(), ok, "beta_0 and its expansion vanish identically".into());
                    continue;
                }
                let p = large_t_predicted_order(side, which);
                let got = empirical_order(el, eh, lo, hi);
                let ok = (got - p).abs() <= ORDER_SLACK;
                e.push(
                    "asymptotics",
                    &identity,
                    "large-|t| expansions, first omitted order",
                    Some(n),
                    format!("|t|={lo}:{hi}"),
                    None,
                    None,
                    Status::of(ok),
                    format!("order {got:.3}, predicted {p} +/- {ORDER_SLACK}"),
                );
            }
        }
    }
}

/// Relative errors of (α̂_n, β̂_n) against computed coefficients.
pub fn large_n_relative_errors(c: &RecurrenceCoeffs, n: usize) -> opk_core::Result<(f64, f64)> {
    let (a, b) = asympt_large_n(n, c.params())?;
    Ok((log2_rel_diff(&c.alphas()[n], &a), log2_rel_diff(&c.betas()[n], &b)))
}

fn large_n_suite(e: &mut Emitter<'_>, p: &WeightParams) {
    let (lo, hi) = LARGE_N_PAIR;
    let c = match recurrence_from_moments(p, hi) {
        Ok(c) => c,
        Err(err) => {
            e.error("asymptotics-n", "large-n expansion order", "large-n expansions", Some(hi), err);
            return;
        }
    };
    e.note_coeffs(&c);
    match (large_n_relative_errors(&c, lo), large_n_relative_errors(&c, hi)) {
        (Ok((al, bl)), Ok((ah, bh))) => {
            for (coef, el, eh, p_rel) in [("alpha", al, ah, 4.0 / 3.0), ("beta", bl, bh, 5.0 / 3.0)] {
                let order = (el - eh) / (hi as f64 / lo as f64).log2();
                let bound = (3.0 / hi as f64).log2();
                let ok = eh <= bound && (order - p_rel).abs() <= ORDER_SLACK;
                e.push(
                    "asymptotics-n",
                    &format!("{coef}_n expansion"),
                    "large-n expansions with kappa = 10^{1/3}",
                    Some(hi),
                    format!("n={lo}:{hi}"),
                    Some(eh),
                    Some(bound),
                    Status::of(ok),
                    format!("order of relative error {order:.3}, predicted {p_rel:.3} +/- {ORDER_SLACK}"),
                );
            }
        }
        (Err(err), _) | (_, Err(err)) => e.error("asymptotics-n", "large-n expansion order", "large-n expansions", Some(hi), err),
    }
}

fn airy_zero_suite(e: &mut Emitter<'_>, c: &RecurrenceCoeffs, ladder: &[RecurrenceCoeffs], nm: usize) {
    let mut prev: Option<ZeroSet> = None;
    for n in 1..=nm {
        let z = match zeros_P(n, c) {
            Ok(z) => z,
            Err(err) => {
                e.error("zeros", "zeros of P_n", "Jacobi matrix eigenvalues", Some(n), err);
                prev = None;
                continue;
            }
        };
        if e.wants_n(n) {
            if let Some(p) = &prev {
                let r = interlaces(p, &z);
                e.flag("zeros", "interlacing P_{n-1} / P_n", "consecutive zero sets strictly interlace", Some(n), String::new(), r == Some(true), inconclusive_note(r));
            }
            if n >= 2 {
                match zero_bound_check(n, ladder) {
                    Ok(b) => e.flag(
                        "zeros",
                        "extreme-zero bound",
                        "x_{n,n} < alpha_{n-1} + d_n beta_{n-1} / e_n < x_{1,n}",
                        Some(n),
                        String::new(),
                        b.holds,
                        if b.coprime { String::new() } else { "P_n(lambda) and P_{n-2}(lambda+2) zero enclosures overlap".into() },
                    ),
                    Err(err) => e.error("zeros", "extreme-zero bound", "mixed-recurrence bound", Some(n), err),
                }
            }
        }
        prev = Some(z);
    }
}

fn inconclusive_note(r: Option<bool>) -> String {
    if r.is_none() {
        "enclosures overlap: inconclusive".into()
    } else {
        String::new()
    }
}

fn airy_ladder_suite(e: &mut Emitter<'_>, c: &RecurrenceCoeffs, ladder: &[RecurrenceCoeffs], nm: usize) {
    let ctx = c.ctx();
    let xs = quasi_random_points(X_SAMPLES, 0.25, 3.0);
    for n in e.ns(1..=nm) {
        for &xf in &xs {
            let x = ctx.real(xf);
            e.check("ladder", "lowering relation", "P_n' = beta_n A_n P_{n-1} - B_n P_n", n, x_detail(xf), || ladder_residual(n, &x, c));
            match ode_residual_airy(n, &x, c) {
                Ok(Some(r)) => e.residual("ladder", "second-order ODE, displayed coefficients", "P_n'' + Q_n P_n' + T_n P_n = 0", n, x_detail(xf), &r),
                Ok(None) => e.skip("ladder", "second-order ODE, displayed coefficients", "P_n'' + Q_n P_n' + T_n P_n = 0", Some(n), x_detail(xf), "x is a removable point of the coefficients"),
                Err(err) => e.error("ladder", "second-order ODE, displayed coefficients", "second-order ODE", Some(n), err),
            }
            e.check("ladder", "second-order ODE, assembled from the ladder", "generic ODE from A_n, B_n and the weight", n, x_detail(xf), || ode_residual_airy_generic(n, &x, c));
            if n >= 2 {
                e.check("ladder", "mixed recurrence", "x^2 P_{n-2}(lambda+2) against P_{n-1}(lambda), P_n(lambda)", n, x_detail(xf), || mixed_recurrence_residual(n, &x, ladder));
            }
        }
        match supplementary_residuals(n, c) {
            Ok(rs) => {
                for (i, r) in rs.iter().enumerate() {
                    e.residual("ladder", &format!("coefficient relation {}", i + 1), "compatibility relations of A_n, B_n", n, String::new(), r);
                }
            }
            Err(err) => e.error("ladder", "coefficient relations", "compatibility relations of A_n, B_n", Some(n), err),
        }
    }
}

/// Conjecture evidence from the coefficients over the t-grid, per λ.
fn conjecture_records(cfg: &RunConfig, per_cell: &[(usize, usize, Option<CellCoeffs>)]) -> Vec<Record> {
    let mut out = Vec::new();
    if cfg.ts.len() < 3 {
        let mut e = Emitter::new(cfg, &cfg.ts[0], &cfg.lambdas[0]);
        e.skip("conjecture", "coefficient shape along t", "conjectured monotonicity and single maximum", None, String::new(), "needs at least three t values");
        return e.records;
    }
    for (li, l) in cfg.lambdas.iter().enumerate() {
        let series: Vec<&CellCoeffs> = per_cell.iter().filter(|(cl, _, _)| *cl == li).filter_map(|(_, _, c)| c.as_ref()).collect();
        if series.len() != cfg.ts.len() {
            continue;
        }
        let mut e = Emitter::new(cfg, &cfg.ts[0], l);
        e.t = format!("{}:{}", cfg.ts[0].text(), cfg.ts[cfg.ts.len() - 1].text());
        for n in e.ns(0..=cfg.n_max) {
            let a: Vec<f64> = series.iter().map(|c| c.alphas[n]).collect();
            let b: Vec<f64> = series.iter().map(|c| c.betas[n]).collect();
            let b1: Vec<f64> = series.iter().map(|c| c.betas[n + 1]).collect();
            let inc = a.windows(2).all(|w| w[0] < w[1]);
            e.push("conjecture", "alpha_n increasing in t", "conjectured monotonicity of alpha_n", Some(n), String::new(), None, None, Status::Evidence, observed(inc));
            if n >= 1 {
                let peaks = single_peak(&b);
                e.push("conjecture", "beta_n has a single maximum in t", "conjectured single maximum of beta_n", Some(n), String::new(), None, None, Status::Evidence, observed(peaks));
            }
            let above = b.iter().zip(&b1).all(|(x, y)| y > x);
            e.push("conjecture", "beta_{n+1} > beta_n on the grid", "ordering of the beta_n curves", Some(n), String::new(), None, None, Status::Evidence, observed(above));
        }
        out.extend(e.records);
    }
    out
}

fn observed(ok: bool) -> String {
    if ok { "observed on the grid" } else { "not observed on the grid" }.into()
}

/// Strictly up then strictly down (either part may be empty).
fn single_peak(v: &[f64]) -> bool {
    let top = v.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map_or(0, |(i, _)| i);
    v[..=top].windows(2).all(|w| w[0] < w[1]) && v[top..].windows(2).all(|w| w[0] > w[1])
}

fn monotonicity_records(cfg: &RunConfig) -> Vec<Record> {
    let strictly = |v: &[f64]| v.len() >= 2 && v.windows(2).all(|w| w[0] < w[1]);
    let ts: Vec<f64> = cfg.ts.iter().map(GridValue::to_f64).collect();
    let ls: Vec<f64> = cfg.lambdas.iter().map(GridValue::to_f64).collect();
    let mut e = Emitter::new(cfg, &cfg.ts[0], &cfg.lambdas[0]);
    let (identity, anchor) = match cfg.family {
        Family::GeneralisedAiry => ("zeros increasing in t and lambda", "every zero of P_n increases with t and with lambda"),
        Family::SexticFreud => ("positive zeros increasing in t and lambda", "positive zeros of S_n increase with t and with lambda"),
    };
    if !strictly(&ts) || !strictly(&ls) {
        e.skip("zeros", identity, anchor, None, String::new(), "needs strictly increasing t and lambda grids with two or more values");
        return e.records;
    }
    let ctx = cell_context(cfg);
    e.t = format!("{}:{}", cfg.ts[0].text(), cfg.ts[ts.len() - 1].text());
    e.lambda = format!("{}:{}", cfg.lambdas[0].text(), cfg.lambdas[ls.len() - 1].text());
    let first = if cfg.family == Family::SexticFreud { 2 } else { 1 };
    for n in e.ns(first..=cfg.n_max) {
        let base = WeightParams::new(cfg.family, ctx.real(ts[0]), ctx.real(ls[0]), ctx);
        let report: opk_core::Result<MonotonicityReport> = base.and_then(|b| match cfg.family {
            Family::GeneralisedAiry => zero_monotonicity_report(n, &b, &ts, &ls),
            Family::SexticFreud => positive_zero_monotonicity(n, &b, &ts, &ls),
        });
        match report {
            Ok(r) => {
                let note = if r.in_t.iter().chain(&r.in_lambda).any(Option::is_none) { "some comparisons inconclusive".into() } else { String::new() };
                e.flag("zeros", identity, anchor, Some(n), String::new(), r.all_increasing(), note);
            }
            Err(err) => e.error("zeros", identity, anchor, Some(n), err),
        }
    }
    e.records
}

// ---------------------------------------------------------------- sextic Freud

fn freud_cell(cfg: &RunConfig, cell: &Cell<'_>) -> (Vec<Record>, u32, u32) {
    let mut e = Emitter::new(cfg, cell.t, cell.lambda);
    let ctx = cell_context(cfg);
    let nm = cfg.n_max;
    let p = match weight(Family::SexticFreud, cell, ctx) {
        Ok(p) => p,
        Err(err) => {
            e.error("setup", "weight parameters", "weight definition", None, err);
            return (e.records, 0, 0);
        }
    };
    let ladder = match freud6_lambda_ladder(&p, nm + 2, 1) {
        Ok(l) => l,
        Err(err) => {
            e.error("setup", "beta_n at lambda and lambda+1", "full and split Hankel determinants", None, err);
            return (e.records, 0, 0);
        }
    };
    for c in &ladder {
        e.note_coeffs(c.as_recurrence());
    }
    let c = &ladder[0];

    if e.wants("moments") {
        let tol = route_tolerance(ctx);
        for j in 0..=MOMENT_CHECK_K {
            match (mu_freud6(&p, j), freud6_moment_by_quadrature(&p, j)) {
                (Ok(a), Ok(b)) => rel_record(&mut e, "moments", "moments via the one-sided weight vs quadrature", "mu_{2k} through mu_0 of the one-sided weight; odd moments vanish", j, format!("k={j}"), &a, &b, tol),
                (Err(err), _) | (_, Err(err)) => e.error("moments", "moments vs quadrature", "sextic moments", Some(j), err),
            }
        }
    }
    if e.wants("positivity") {
        for n in e.ns(1..=nm + 2) {
            e.flag("positivity", "beta_n positive", "positive-definite moment functional on R", Some(n), String::new(), c.betas()[n] > 0, String::new());
        }
    }
    if e.wants("split-hankel") {
        let tol = -f64::from(c.ctx().bits()) / 2.0;
        let got = c.log2_split_crosscheck();
        e.push("split-hankel", "full vs even/odd split Hankel determinants", "Delta_{2m} = H0_m H1_m, Delta_{2m+1} = H0_{m+1} H1_m", Some(nm + 2), String::new(), Some(got), Some(tol), Status::of(got <= tol), String::new());
    }
    if e.wants("zeros") {
        freud_zero_suite(&mut e, c, nm);
    }
    if e.wants("interlacing") {
        freud_chain_suite(&mut e, &p, nm);
    }
    if e.wants("ladder") {
        freud_ladder_suite(&mut e, &ladder, nm);
    }
    if e.wants("bracket") {
        let ns: Vec<usize> = (2..=nm.min(6)).collect();
        let xs = freud_points();
        match adjudicate_bracket(c, &ns, &xs) {
            Ok(a) => {
                let tied = a.worst_log2.iter().filter(|(_, w)| *w <= a.log2_tolerance).count() > 1;
                for (reading, worst) in &a.worst_log2 {
                    let identity = format!("bracket reading {}", reading.label());
                    let at_roundoff = *worst <= a.log2_tolerance;
                    // At lambda = -1/2 the parity factor multiplies zero, so readings tie.
                    let (status, note) = if a.adopted == Some(*reading) {
                        (Status::of(*reading == ADOPTED_READING), "adopted: the only reading at roundoff")
                    } else if tied && at_roundoff {
                        (Status::Pass, "readings coincide here; no adjudication possible")
                    } else if at_roundoff {
                        (Status::Fail, "at roundoff but not adopted")
                    } else if *reading == ADOPTED_READING {
                        (Status::Fail, "the expected reading is not at roundoff")
                    } else {
                        (Status::ExpectedNonzero, "rejected")
                    };
                    e.push("bracket", &identity, "parity bracket in the second-order ODE of S_n", None, format!("n=2:{}", nm.min(6)), Some(*worst), Some(a.log2_tolerance), status, note.into());
                }
            }
            Err(err) => e.error("bracket", "bracket adjudication", "parity bracket in the second-order ODE", None, err),
        }
    }
    if e.wants("convexity") {
        freud_convexity_suite(&mut e, c, nm);
    }
    let (bits, esc) = (e.max_bits, e.escalations);
    (e.records, bits, esc)
}

fn freud_points() -> Vec<f64> {
    quasi_random_points(X_SAMPLES, -2.0, 2.0).into_iter().filter(|x| *x != 0.0).collect()
}

fn mirror_overlaps(a: &Enclosure, b: &Enclosure) -> bool {
    let neg = Enclosure { lo: Real::with_val(b.hi.prec(), -&b.hi), hi: Real::with_val(b.lo.prec(), -&b.lo) };
    a.overlaps(&neg)
}

fn freud_zero_suite(e: &mut Emitter<'_>, c: &Freud6Coeffs, nm: usize) {
    let mut prev: Option<ZeroSet> = None;
    for n in 1..=nm {
        let z = match zeros_S(n, c) {
            Ok(z) => z,
            Err(err) => {
                e.error("zeros", "zeros of S_n", "Jacobi matrix eigenvalues", Some(n), err);
                prev = None;
                continue;
            }
        };
        if e.wants_n(n) {
            let sym = (1..=n).all(|k| mirror_overlaps(z.x(k), z.x(n + 1 - k)));
            e.flag("zeros", "zeros symmetric about 0", "S_n(-x) = (-1)^n S_n(x)", Some(n), String::new(), sym, String::new());
            if let Some(p) = &prev {
                let r = interlaces(p, &z);
                e.flag("zeros", "interlacing S_{n-1} / S_n", "consecutive zero sets strictly interlace", Some(n), String::new(), r == Some(true), inconclusive_note(r));
            }
            if n >= 2 {
                match zero_upper_bound_freud6(n, c, FREUD_BOUND_EPSILON) {
                    Ok(b) => e.flag("zeros", "largest-zero bound", "x_{1,n} < max_k sqrt(c_n beta_k), c_n = 4 cos^2(pi/(n+1)) + 0.01", Some(n), String::new(), b.holds, String::new()),
                    Err(err) => e.error("zeros", "largest-zero bound", "largest-zero bound", Some(n), err),
                }
            }
        }
        prev = Some(z);
    }
}

fn chain_note(r: &ChainReport) -> String {
    format!(
        "{} strict, {} coincident, {} violated",
        r.count(LinkStatus::Strict),
        r.count(LinkStatus::Coincident),
        r.count(LinkStatus::Violated)
    )
}

fn freud_chain_suite(e: &mut Emitter<'_>, p: &WeightParams, nm: usize) {
    for n in e.ns(2..=nm) {
        for k in CHAIN_OFFSETS {
            let detail = format!("k={k}");
            match interlacing_check(n, p, k) {
                Ok(r) => {
                    e.flag("interlacing", "positive-zero chain", "zeros of S_n(lambda), S_{n-1}(lambda), S_{n-1}(lambda+k), S_{n-1}(lambda+1)", Some(n), detail.clone(), r.positive.holds(), chain_note(&r.positive));
                    e.flag("interlacing", "symmetric chain, as displayed", "full chain over all zeros, negative side as displayed", Some(n), detail.clone(), r.symmetric_printed.holds(), chain_note(&r.symmetric_printed));
                    e.push("interlacing", "symmetric chain, negative side mirrored", "full chain with the negative-side triples reversed", Some(n), detail.clone(), None, None, Status::Evidence, format!("{}; {}", observed(r.symmetric_mirror.holds()), chain_note(&r.symmetric_mirror)));
                    if let Some(o) = r.origin_zeros {
                        e.flag("interlacing", "middle zero of S_{n-1} at 0", "odd polynomials vanish at the origin", Some(n), detail, o, String::new());
                    }
                }
                Err(err) => e.error("interlacing", "interlacing chains", "interlacing chains", Some(n), err),
            }
        }
    }
}

fn freud_ladder_suite(e: &mut Emitter<'_>, ladder: &[Freud6Coeffs], nm: usize) {
    let c = &ladder[0];
    let ctx = c.ctx();
    let parity_free = ctx.round(c.params().lambda()) == ctx.ratio(-1, 2);
    let xs = freud_points();
    for n in e.ns(1..=nm) {
        for &xf in &xs {
            let x = ctx.real(xf);
            e.check("ladder", "lowering relation", "S_n' = beta_n A_n S_{n-1} - B_n S_n with the parity term", n, x_detail(xf), || ladder_residual_freud6(n, &x, c));
            match ladder_residual_freud6_with(n, &x, c, LadderForm::Uncorrected) {
                // The parity term (lambda+1/2)[1-(-1)^n] is nonzero only for odd n away from lambda = -1/2.
                Ok(r) if n % 2 == 1 && !parity_free => {
                    let status = if r.passes() { Status::Fail } else { Status::ExpectedNonzero };
                    e.push("ladder", "lowering relation without the parity term", "earlier form of B_n, without (lambda+1/2)[1-(-1)^n]", Some(n), x_detail(xf), Some(r.log2_relative()), Some(r.log2_tolerance), status, "fails for odd n, as expected".into());
                }
                Ok(r) => e.residual("ladder", "lowering relation without the parity term", "earlier form of B_n; the parity term vanishes here", n, x_detail(xf), &r),
                Err(err) => e.error("ladder", "lowering relation without the parity term", "earlier form of B_n", Some(n), err),
            }
            if n >= 2 {
                match ode_residual_freud6(n, &x, c) {
                    Ok(Some(r)) => e.residual("ladder", "second-order ODE, adopted bracket", "S_n'' + Q_n S_n' + T_n S_n = 0", n, x_detail(xf), &r),
                    Ok(None) => e.skip("ladder", "second-order ODE, adopted bracket", "S_n'' + Q_n S_n' + T_n S_n = 0", Some(n), x_detail(xf), "x is a removable point of the coefficients"),
                    Err(err) => e.error("ladder", "second-order ODE, adopted bracket", "second-order ODE", Some(n), err),
                }
                e.check("ladder", "second-order ODE, assembled from the ladder", "generic ODE from A_n, B_n and the weight", n, x_detail(xf), || ode_residual_freud6_generic(n, &x, c));
            }
            e.check("ladder", "mixed recurrence", "x^2 S_n(lambda+1) against S_{n+1}(lambda), S_n(lambda)", n, x_detail(xf), || mixed_recurrence_freud6(n, &x, ladder));
        }
    }
}

fn freud_convexity_suite(e: &mut Emitter<'_>, c: &Freud6Coeffs, nm: usize) {
    let ctx = c.ctx();
    let applies = ctx.round(c.params().lambda()) == ctx.ratio(-1, 2) && *c.params().t() < 0;
    if !applies {
        e.skip("convexity", "Sturm gap ordering", "normal form y'' + F y = 0 of S_n", None, String::new(), "applies only at lambda = -1/2 and t < 0");
        return;
    }
    for n in e.ns(3..=nm) {
        match sturm_convexity_profile(n, c) {
            Ok(pr) => e.flag("convexity", "Sturm gap ordering", "monotone F orders consecutive zero gaps", Some(n), String::new(), pr.consistent(), format!("{} predictions asserted", pr.asserted())),
            Err(err) => e.error("convexity", "Sturm gap ordering", "Sturm comparison", Some(n), err),
        }
        let nf = match NormalFormCoeff::new(n, c) {
            Ok(nf) => nf,
            Err(err) => {
                e.error("convexity", "normal form", "normal form coefficient", Some(n), err);
                continue;
            }
        };
        for xf in quasi_random_points(X_SAMPLES, 0.1, 1.5) {
            let x = ctx.real(xf);
            e.check("convexity", "normal form, derived F", "y = S_n sqrt(w / A_n) solves y'' + F y = 0", n, x_detail(xf), || nf.residual(&x, c, NormalForm::Derived));
            match nf.residual(&x, c, NormalForm::Printed) {
                Ok(r) => e.push("convexity", "normal form, displayed F", "displayed F in the convexity argument", Some(n), x_detail(xf), Some(r.log2_relative()), Some(r.log2_tolerance), Status::Evidence, observed(r.passes())),
                Err(err) => e.error("convexity", "normal form, displayed F", "displayed F", Some(n), err),
            }
        }
    }
}

// ---------------------------------------------------------------- driver

/// Rejects suite names unknown for the family.
pub fn check_only(cfg: &RunConfig) -> Result<(), UsageError> {
    if let Some(o) = &cfg.only {
        let known = match cfg.family {
            Family::GeneralisedAiry => AIRY_SUITES,
            Family::SexticFreud => FREUD_SUITES,
        };
        if !known.contains(&o.as_str()) {
            return Err(UsageError(format!("unknown suite {o:?} for family {}; known: {}", cfg.family.name(), known.join(", "))));
        }
    }
    Ok(())
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerificationReport, String> {
    check_only(cfg).map_err(|e| e.0)?;
    let mut records = Vec::new();
    let mut max_bits = 0;
    let mut escalations = 0;
    match cfg.family {
        Family::GeneralisedAiry => {
            let out = map_cells(cfg, |cell| Ok((cell.lambda_index, cell.t_index, airy_cell(cfg, cell))))?;
            let mut coeffs = Vec::new();
            for (li, ti, (r, b, esc, c)) in out {
                records.extend(r);
                max_bits = max_bits.max(b);
                escalations += esc;
                coeffs.push((li, ti, c));
            }
            if cfg.only.as_deref().map_or(true, |o| o == "conjecture") {
                records.extend(conjecture_records(cfg, &coeffs));
            }
        }
        Family::SexticFreud => {
            let out = map_cells(cfg, |cell| Ok(freud_cell(cfg, cell)))?;
            for (r, b, esc) in out {
                records.extend(r);
                max_bits = max_bits.max(b);
                escalations += esc;
            }
        }
    }
    if cfg.only.as_deref().map_or(true, |o| o == "zeros") {
        records.extend(monotonicity_records(cfg));
    }
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let environment = Environment {
        family: cfg.family.name(),
        bits: cfg.bits.map_or_else(|| "auto".to_string(), |b| b.to_string()),
        max_working_bits: max_bits,
        escalations,
        t: cfg.ts.iter().map(|t| t.text().to_string()).collect(),
        lambda: cfg.lambdas.iter().map(|l| l.text().to_string()).collect(),
        nmax: cfg.n_max,
        only: cfg.only.clone(),
        n_range: cfg.n_range,
    };
    Ok(VerificationReport { summary: summarise(&records), environment, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_peak_shapes() {
        assert!(single_peak(&[1.0, 2.0, 3.0, 2.0]));
        assert!(single_peak(&[3.0, 2.0, 1.0]));
        assert!(single_peak(&[1.0, 2.0]));
        assert!(!single_peak(&[1.0, 3.0, 2.0, 4.0]));
        assert!(!single_peak(&[1.0, 1.0]));
    }

    #[test]
    fn predicted_orders_step_by_three_halves_and_three() {
        assert_eq!(large_t_predicted_order(Side::PlusInfinity, 'a'), 2.5);
        assert_eq!(large_t_predicted_order(Side::PlusInfinity, 'b'), 3.5);
        assert_eq!(large_t_predicted_order(Side::MinusInfinity, 'a'), 7.0);
        assert_eq!(large_t_predicted_order(Side::MinusInfinity, 'b'), 8.0);
    }

    #[test]
    fn summary_counts_and_overall() {
        let mk = |s| Record {
            suite: "s",
            identity: String::new(),
            anchor: "",
            family: "airy",
            n: None,
            t: String::new(),
            lambda: String::new(),
            detail: String::new(),
            residual: None,
            tolerance: None,
            status: s,
            note: String::new(),
            t_num: 0.0,
            lambda_num: 0.0,
        };
        let s = summarise(&[mk(Status::Pass), mk(Status::ExpectedNonzero), mk(Status::Skip)]);
        assert_eq!((s.total, s.pass, s.fail, s.skip, s.expected_nonzero, s.overall), (3, 1, 0, 1, 1, "pass"));
        assert_eq!(summarise(&[mk(Status::Fail)]).overall, "fail");
    }
}
