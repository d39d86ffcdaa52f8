//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use rust_decimal::Decimal;

use opk_core::{Family, PrecisionContext, Real};

/// Environment variable that overrides the default precision.
pub const BITS_ENV: &str = "OPK_BITS";

/// Upper bound on grid points per axis, to catch step typos.
const MAX_GRID_POINTS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Coeffs,
    Zeros,
    Moments,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Airy,
    Freud6,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Airy => Family::GeneralisedAiry,
            FamilyArg::Freud6 => Family::SexticFreud,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "opk", version, about = "Semi-classical orthogonal polynomial tables and identity checks")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "airy")]
    pub family: FamilyArg,
    /// A single value or a range a:b:step.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Comma-separated values, each > -1.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Working precision; defaults to $OPK_BITS, then to a size-based choice.
    #[arg(long)]
    pub bits: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// verify: run one suite only.
    #[arg(long)]
    pub only: Option<String>,
    /// verify: restrict n to a..b (inclusive).
    #[arg(long)]
    pub n: Option<String>,
    /// moments: add a column from the independent route.
    #[arg(long)]
    pub oracle: bool,
}

/// A grid value kept as its exact decimal text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridValue {
    text: String,
    value: Decimal,
}

impl GridValue {
    fn new(value: Decimal) -> Self {
        let value = value.normalize();
        Self { text: value.to_string(), value }
    }

    #[must_use]
    pub fn text(&self) -> &str {
        &self.text
    }

    #[must_use]
    pub fn to_f64(&self) -> f64 {
        self.text.parse().expect("decimal text is a valid f64")
    }

    /// Nearest binary value at the given precision.
    #[must_use]
    pub fn to_real(&self, ctx: PrecisionContext) -> Real {
        let parsed = Real::parse(&self.text).expect("decimal text parses");
        Real::with_val(ctx.bits(), parsed)
    }
}

impl FromStr for GridValue {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        let d = Decimal::from_str(s.trim()).map_err(|_| UsageError(format!("not a decimal number: {s:?}")))?;
        Ok(Self::new(d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// `v` or `a:b:step`, a ≤ b, step > 0; b is included when the step lands on it.
pub fn parse_t_grid(s: &str) -> Result<Vec<GridValue>, UsageError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![v.parse()?]),
        [a, b, step] => {
            let a: GridValue = a.parse()?;
            let b: GridValue = b.parse()?;
            let step: GridValue = step.parse()?;
            if step.value <= Decimal::ZERO {
                return Err(UsageError(format!("t step must be positive in {s:?}")));
            }
            if a.value > b.value {
                return Err(UsageError(format!("empty t range {s:?}")));
            }
            let mut out = Vec::new();
            let mut v = a.value;
            while v <= b.value {
                if out.len() == MAX_GRID_POINTS {
                    return Err(UsageError(format!("t range {s:?} has more than {MAX_GRID_POINTS} points")));
                }
                out.push(GridValue::new(v));
                v += step.value;
            }
            Ok(out)
        }
        _ => Err(UsageError(format!("t must be v or a:b:step, got {s:?}"))),
    }
}

pub fn parse_lambdas(s: &str) -> Result<Vec<GridValue>, UsageError> {
    let out = s.split(',').map(str::parse).collect::<Result<Vec<GridValue>, _>>()?;
    if let Some(bad) = out.iter().find(|l| l.value <= Decimal::NEGATIVE_ONE) {
        return Err(UsageError(format!("lambda must exceed -1, got {}", bad.text)));
    }
    Ok(out)
}

/// `a..b` inclusive, or a single n.
pub fn parse_n_range(s: &str) -> Result<(usize, usize), UsageError> {
    let num = |v: &str| v.trim().parse::<usize>().map_err(|_| UsageError(format!("bad n range {s:?}")));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(UsageError(format!("empty n range {s:?}")));
    }
    Ok((lo, hi))
}

/// Validated configuration for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub family: Family,
    pub ts: Vec<GridValue>,
    pub lambdas: Vec<GridValue>,
    pub n_max: usize,
    /// None: chosen per command from n_max.
    pub bits: Option<u32>,
    pub jobs: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub only: Option<String>,
    pub n_range: Option<(usize, usize)>,
    pub oracle: bool,
}

/// The standard verification grid per family.
struct StandardGrid {
    ts: &'static str,
    lambdas: &'static str,
    n_max: usize,
}

fn standard_grid(family: Family) -> StandardGrid {
    match family {
        Family::GeneralisedAiry => StandardGrid { ts: "-8,-3,0,3,8", lambdas: "-0.5,0,0.5,2", n_max: 12 },
        Family::SexticFreud => StandardGrid { ts: "-3,0,3", lambdas: "-0.5,0,1", n_max: 12 },
    }
}

impl RunConfig {
    /// Validates `cli`; `env_bits` is the value of [`BITS_ENV`], if set.
    pub fn from_cli(cli: Cli, env_bits: Option<&str>) -> Result<Self, UsageError> {
        let family = Family::from(cli.family);
        let grid = standard_grid(family);
        let verify = cli.command == Command::Verify;
        let ts = match (&cli.t, verify) {
            (Some(t), _) => parse_t_grid(t)?,
            (None, true) => grid.ts.split(',').map(str::parse).collect::<Result<_, _>>()?,
            (None, false) => vec!["0".parse()?],
        };
        let lambdas = match (&cli.lambda, verify) {
            (Some(l), _) => parse_lambdas(l)?,
            (None, true) => parse_lambdas(grid.lambdas)?,
            (None, false) => parse_lambdas("0")?,
        };
        let n_max = cli.nmax.unwrap_or(if verify { grid.n_max } else { 5 });
        if n_max < 1 {
            return Err(UsageError("nmax must be at least 1".into()));
        }
        let bits = match (cli.bits, env_bits) {
            (Some(b), _) => Some(b),
            (None, Some(e)) => Some(e.trim().parse().map_err(|_| UsageError(format!("{BITS_ENV} is not an integer: {e:?}")))?),
            (None, None) => None,
        };
        if let Some(b) = bits {
            if b < PrecisionContext::MIN_BITS {
                return Err(UsageError(format!("bits must be at least {}", PrecisionContext::MIN_BITS)));
            }
        }
        if cli.jobs == 0 {
            return Err(UsageError("jobs must be at least 1".into()));
        }
        if !verify && (cli.only.is_some() || cli.n.is_some()) {
            return Err(UsageError("--only and --n apply to verify only".into()));
        }
        if cli.oracle && cli.command != Command::Moments {
            return Err(UsageError("--oracle applies to moments only".into()));
        }
        let n_range = cli.n.as_deref().map(parse_n_range).transpose()?;
        Ok(Self {
            command: cli.command,
            family,
            ts,
            lambdas,
            n_max,
            bits,
            jobs: cli.jobs,
            format: cli.format,
            out: cli.out,
            only: cli.only,
            n_range,
            oracle: cli.oracle,
        })
    }

    /// Precision for tables: explicit bits, or enough for Hankel work to n_max + 2.
    #[must_use]
    pub fn table_context(&self) -> PrecisionContext {
        match self.bits {
            Some(b) => PrecisionContext::new(b).expect("validated"),
            None => PrecisionContext::for_hankel(self.n_max + 2),
        }
    }

    #[must_use]
    pub fn n_allowed(&self, n: usize) -> bool {
        self.n_range.map_or(true, |(lo, hi)| lo <= n && n <= hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(v: &[GridValue]) -> Vec<&str> {
        v.iter().map(GridValue::text).collect()
    }

    #[test]
    fn t_range_is_exact_and_inclusive() {
        let g = parse_t_grid("-1:1:0.5").unwrap();
        assert_eq!(texts(&g), ["-1", "-0.5", "0", "0.5", "1"]);
        let g = parse_t_grid("0:1:0.3").unwrap();
        assert_eq!(texts(&g), ["0", "0.3", "0.6", "0.9"]);
        assert_eq!(parse_t_grid("-10:10:0.25").unwrap().len(), 81);
    }

    #[test]
    fn bad_ranges_are_usage_errors() {
        assert!(parse_t_grid("1:0:0.5").is_err());
        assert!(parse_t_grid("0:1:0").is_err());
        assert!(parse_t_grid("0:1").is_err());
        assert!(parse_t_grid("x").is_err());
        assert!(parse_lambdas("0,-1").is_err());
        assert!(parse_n_range("5..2").is_err());
    }

    #[test]
    fn n_range_forms() {
        assert_eq!(parse_n_range("1..10").unwrap(), (1, 10));
        assert_eq!(parse_n_range("1..=10").unwrap(), (1, 10));
        assert_eq!(parse_n_range("4").unwrap(), (4, 4));
    }

    #[test]
    fn grid_value_to_real_rounds_the_decimal() {
        let c = PrecisionContext::new(128).unwrap();
        let v: GridValue = "0.1".parse().unwrap();
        let r = v.to_real(c);
        assert_eq!(r.prec(), 128);
        assert!((r.to_f64() - 0.1).abs() < 1e-17);
    }
}
