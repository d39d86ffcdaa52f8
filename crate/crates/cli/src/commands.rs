//! The table commands: coeffs, zeros, moments.

use rayon::prelude::*;

use opk_core::airy_moments::{mu0_airy_series, mu_k_airy, mu_k_airy_quad, QUADRATURE_CROSSOVER_T};
use opk_core::airy_polys::{lambda_ladder, zero_bound_check, zeros_P, ZeroSet};
use opk_core::airy_recurrence::recurrence_from_moments;
use opk_core::freud6::{beta_freud6, freud6_moment_by_quadrature, mu_freud6, zero_upper_bound_freud6, zeros_S};
use opk_core::numeric_core::log2_rel_diff;
use opk_core::{Family, PrecisionContext, Real, WeightParams};

use crate::config::{GridValue, RunConfig};
use crate::output::{fmt_log2, fmt_real, sig_digits, Table};

/// Slack added to the Freud largest-zero bound constant.
pub const FREUD_BOUND_EPSILON: f64 = 0.01;

/// One (λ, t) grid cell.
#[derive(Clone, Debug)]
pub struct Cell<'a> {
    pub lambda_index: usize,
    pub t_index: usize,
    pub lambda: &'a GridValue,
    pub t: &'a GridValue,
}

/// λ-major cells, so that output order never depends on scheduling.
#[must_use]
pub fn cells(cfg: &RunConfig) -> Vec<Cell<'_>> {
    cfg.lambdas
        .iter()
        .enumerate()
        .flat_map(|(li, l)| cfg.ts.iter().enumerate().map(move |(ti, t)| Cell { lambda_index: li, t_index: ti, lambda: l, t }))
        .collect()
}

pub fn weight(family: Family, cell: &Cell<'_>, ctx: PrecisionContext) -> opk_core::Result<WeightParams> {
    WeightParams::new(family, cell.t.to_real(ctx), cell.lambda.to_real(ctx), ctx)
}

/// Runs `f` over every cell on a pool of `cfg.jobs` workers, in cell order.
pub fn map_cells<T, F>(cfg: &RunConfig, f: F) -> Result<Vec<T>, String>
where
    T: Send,
    F: Fn(&Cell<'_>) -> Result<T, String> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| e.to_string())?;
    let cs = cells(cfg);
    pool.install(|| cs.par_iter().map(&f).collect())
}

fn cell_error(cell: &Cell<'_>, e: impl std::fmt::Display) -> String {
    format!("t={} lambda={}: {e}", cell.t.text(), cell.lambda.text())
}

/// Rows (n, t, λ, α_n, β_n) for n = 0..=n_max, ordered by λ, n, t.
pub fn cmd_coeffs(cfg: &RunConfig) -> Result<Table, String> {
    let ctx = cfg.table_context();
    let digits = sig_digits(ctx.bits());
    let per_cell = map_cells(cfg, |cell| {
        let p = weight(cfg.family, cell, ctx).map_err(|e| cell_error(cell, e))?;
        let (alphas, betas): (Vec<Real>, Vec<Real>) = match cfg.family {
            Family::GeneralisedAiry => {
                let r = recurrence_from_moments(&p, cfg.n_max).map_err(|e| cell_error(cell, e))?;
                (r.alphas().to_vec(), r.betas().to_vec())
            }
            Family::SexticFreud => {
                let r = beta_freud6(&p, cfg.n_max).map_err(|e| cell_error(cell, e))?;
                (vec![ctx.zero(); cfg.n_max + 1], r.betas().to_vec())
            }
        };
        Ok((0..=cfg.n_max)
            .map(|n| {
                let key = (cell.lambda_index, n, cell.t_index);
                let row = vec![
                    n.to_string(),
                    cell.t.text().to_string(),
                    cell.lambda.text().to_string(),
                    fmt_real(&alphas[n], digits),
                    fmt_real(&betas[n], digits),
                ];
                (key, row)
            })
            .collect::<Vec<_>>())
    })?;
    let mut rows: Vec<_> = per_cell.into_iter().flatten().collect();
    rows.sort_by_key(|(k, _)| *k);
    let mut t = Table::new(&["n", "t", "lambda", "alpha", "beta"]);
    t.rows = rows.into_iter().map(|(_, r)| r).collect();
    Ok(t)
}

fn zero_rows(z: &ZeroSet, cell: &Cell<'_>, bound: Option<&Real>, exact_middle: bool, digits: usize) -> Vec<Vec<String>> {
    let n = z.n;
    let bound = bound.map_or_else(String::new, |b| fmt_real(b, digits));
    (1..=n)
        .map(|k| {
            let e = z.x(k);
            let mut mid = e.mid();
            // S_n is odd for odd n, so its middle zero is exactly 0.
            if exact_middle && 2 * k == n + 1 && e.contains(&Real::new(mid.prec())) {
                mid = Real::new(mid.prec());
            }
            vec![
                n.to_string(),
                cell.t.text().to_string(),
                cell.lambda.text().to_string(),
                k.to_string(),
                fmt_real(&mid, digits),
                fmt_real(&e.radius(), 3),
                bound.clone(),
            ]
        })
        .collect()
}

/// Zeros of P_n or S_n at n = n_max, index 1 the largest, with the bound column.
pub fn cmd_zeros(cfg: &RunConfig) -> Result<Table, String> {
    let ctx = cfg.table_context();
    let digits = sig_digits(ctx.bits());
    let n = cfg.n_max;
    let per_cell = map_cells(cfg, |cell| {
        let p = weight(cfg.family, cell, ctx).map_err(|e| cell_error(cell, e))?;
        match cfg.family {
            Family::GeneralisedAiry => {
                let c = recurrence_from_moments(&p, n).map_err(|e| cell_error(cell, e))?;
                let z = zeros_P(n, &c).map_err(|e| cell_error(cell, e))?;
                let bound = if n >= 2 {
                    let ladder = lambda_ladder(&p, n).map_err(|e| cell_error(cell, e))?;
                    Some(zero_bound_check(n, &ladder).map_err(|e| cell_error(cell, e))?.bound)
                } else {
                    None
                };
                Ok(zero_rows(&z, cell, bound.as_ref(), false, digits))
            }
            Family::SexticFreud => {
                let c = beta_freud6(&p, n).map_err(|e| cell_error(cell, e))?;
                let z = zeros_S(n, &c).map_err(|e| cell_error(cell, e))?;
                let bound = if n >= 2 {
                    Some(zero_upper_bound_freud6(n, &c, FREUD_BOUND_EPSILON).map_err(|e| cell_error(cell, e))?.bound)
                } else {
                    None
                };
                Ok(zero_rows(&z, cell, bound.as_ref(), true, digits))
            }
        }
    })?;
    let mut t = Table::new(&["n", "t", "lambda", "index", "zero", "radius", "bound"]);
    t.rows = per_cell.into_iter().flatten().collect();
    Ok(t)
}

/// μ_k by the library route, and by an independent route when requested.
fn moment_pair(p: &WeightParams, k: usize, oracle: bool) -> opk_core::Result<(Real, Option<(Real, &'static str)>)> {
    match p.family() {
        Family::GeneralisedAiry => {
            let m = mu_k_airy(p, k)?;
            if !oracle {
                return Ok((m, None));
            }
            // Below the crossover the library already integrates; compare with the closed form.
            let o = if p.t().to_f64() <= QUADRATURE_CROSSOVER_T {
                let q = p.with_lambda_shift(k as u32);
                (mu0_airy_series(q.t(), q.lambda(), q.ctx())?, "closed-form")
            } else {
                (mu_k_airy_quad(p, k)?, "quadrature")
            };
            Ok((m, Some(o)))
        }
        Family::SexticFreud => {
            let m = mu_freud6(p, k)?;
            let o = if oracle { Some((freud6_moment_by_quadrature(p, k)?, "quadrature")) } else { None };
            Ok((m, o))
        }
    }
}

/// Rows (k, t, λ, μ_k) for k = 0..=n_max, with optional oracle columns.
pub fn cmd_moments(cfg: &RunConfig) -> Result<Table, String> {
    let ctx = cfg.table_context();
    let digits = sig_digits(ctx.bits());
    let per_cell = map_cells(cfg, |cell| {
        let p = weight(cfg.family, cell, ctx).map_err(|e| cell_error(cell, e))?;
        (0..=cfg.n_max)
            .map(|k| {
                let (m, o) = moment_pair(&p, k, cfg.oracle).map_err(|e| cell_error(cell, e))?;
                let mut row = vec![k.to_string(), cell.t.text().to_string(), cell.lambda.text().to_string(), fmt_real(&m, digits)];
                if let Some((o, route)) = o {
                    let dev = if m.is_zero() && o.is_zero() { f64::NEG_INFINITY } else { log2_rel_diff(&m, &o) };
                    row.extend([fmt_real(&o, digits), fmt_log2(dev, 3), route.to_string()]);
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>, String>>()
    })?;
    let cols: &[&str] = if cfg.oracle {
        &["k", "t", "lambda", "mu", "oracle", "rel_deviation", "oracle_route"]
    } else {
        &["k", "t", "lambda", "mu"]
    };
    let mut t = Table::new(cols);
    t.rows = per_cell.into_iter().flatten().collect();
    Ok(t)
}
