//! Deterministic number formatting and table serialisation.

use serde::Serialize;

use opk_core::Real;

/// Significant digits printed at `bits`: ⌊bits·0.301⌋ − 2.
#[must_use]
pub fn sig_digits(bits: u32) -> usize {
    ((f64::from(bits) * 0.301).floor() as usize).saturating_sub(2).max(1)
}

fn sci(neg: bool, digits: &str, exp10: i64) -> String {
    let (lead, rest) = digits.split_at(1);
    let sign = if neg { "-" } else { "" };
    let esign = if exp10 < 0 { '-' } else { '+' };
    if rest.is_empty() {
        format!("{sign}{lead}e{esign}{:02}", exp10.abs())
    } else {
        format!("{sign}{lead}.{rest}e{esign}{:02}", exp10.abs())
    }
}

/// d.ddd…e±XX with `digits` significant digits.
#[must_use]
pub fn fmt_real(x: &Real, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    if x.is_zero() {
        return sci(false, &"0".repeat(digits), 0);
    }
    let (neg, s, exp) = x.to_sign_string_exp(10, Some(digits));
    // value = 0.s × 10^exp
    let exp10 = i64::from(exp.expect("finite nonzero has an exponent")) - 1;
    sci(neg, &s, exp10)
}

/// Same layout for an f64 (residuals, tolerances).
#[must_use]
pub fn fmt_f64(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    let digits = digits.max(1);
    let s = format!("{:.*e}", digits - 1, x.abs());
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i64 = exp.parse().expect("integer exponent");
    sci(x.is_sign_negative() && x != 0.0, &mant.replace('.', ""), exp)
}

/// 2^l in the same layout, without f64 underflow.
#[must_use]
pub fn fmt_log2(l: f64, digits: usize) -> String {
    if l == f64::NEG_INFINITY {
        return fmt_f64(0.0, digits);
    }
    if !l.is_finite() {
        return fmt_f64(l, digits);
    }
    let l10 = l * std::f64::consts::LOG10_2;
    let e = l10.floor();
    let m = 10f64.powf(l10 - e);
    let s = fmt_f64(m, digits);
    // m may round up to 10.
    let (mant, me) = s.split_once('e').expect("exponent form");
    let me: i64 = me.parse().expect("integer exponent");
    let exp10 = e as i64 + me;
    let esign = if exp10 < 0 { '-' } else { '+' };
    format!("{mant}e{esign}{:02}", exp10.abs())
}

/// Header plus rows of preformatted cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    #[must_use]
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| (*c).to_string()).collect(), rows: Vec::new() }
    }

    #[must_use]
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    #[must_use]
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serialises");
        s.push('\n');
        s
    }
}
