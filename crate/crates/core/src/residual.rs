//! Residual values with their scale and tolerance.

use std::cmp::Ordering;

use rug::Float;

use crate::numeric_core::{log2_abs, PrecisionContext, Real, RealExt};

/// |value| / |scale| compared against a relative tolerance held as log2.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub value: Real,
    pub scale: Real,
    pub log2_tolerance: f64,
}

impl Residual {
    #[must_use]
    pub fn new(value: Real, scale: Real, log2_tolerance: f64) -> Self {
        Self { value, scale, log2_tolerance }
    }

    /// log2(|value| / |scale|); a zero scale means absolute.
    #[must_use]
    pub fn log2_relative(&self) -> f64 {
        if self.scale.is_zero() {
            log2_abs(&self.value)
        } else {
            log2_abs(&self.value) - log2_abs(&self.scale)
        }
    }

    #[must_use]
    pub fn relative(&self) -> f64 {
        self.log2_relative().exp2()
    }

    #[must_use]
    pub fn tolerance(&self) -> f64 {
        self.log2_tolerance.exp2()
    }

    #[must_use]
    pub fn passes(&self) -> bool {
        self.log2_relative() <= self.log2_tolerance
    }

    /// Same residual judged against a different tolerance.
    #[must_use]
    pub fn with_log2_tolerance(mut self, log2_tolerance: f64) -> Self {
        self.log2_tolerance = log2_tolerance;
        self
    }
}

/// Running sum that remembers its largest term.
#[derive(Clone, Debug)]
pub struct TermSum {
    sum: Real,
    scale: Real,
}

impl TermSum {
    #[must_use]
    pub fn new(ctx: PrecisionContext) -> Self {
        Self { sum: ctx.zero(), scale: ctx.zero() }
    }

    pub fn add(&mut self, term: Real) {
        if term.cmp_abs(&self.scale) == Some(Ordering::Greater) {
            self.scale = Float::with_val(self.scale.prec(), term.abs_val());
        }
        self.sum += term;
    }

    pub fn sub(&mut self, term: Real) {
        self.add(-term);
    }

    #[must_use]
    pub fn finish(self, log2_tolerance: f64) -> Residual {
        Residual::new(self.sum, self.scale, log2_tolerance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_and_pass() {
        let c = PrecisionContext::default();
        let r = Residual::new(c.real(1e-30), c.real(10.0), -90.0);
        assert!((r.relative() - 1e-31).abs() < 1e-40);
        assert!(r.passes());
        assert!(!r.clone().with_log2_tolerance(-110.0).passes());
    }

    #[test]
    fn term_sum_tracks_largest_term() {
        let c = PrecisionContext::default();
        let mut s = TermSum::new(c);
        s.add(c.real(3));
        s.sub(c.real(5));
        s.add(c.real(2));
        let r = s.finish(-100.0);
        assert_eq!(r.value, 0);
        assert_eq!(r.scale, 5);
        assert!(r.passes());
    }
}
