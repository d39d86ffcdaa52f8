//! Precision contexts and small helpers around [`rug::Float`].
//!
//! Every real in the crate is a `Real` whose precision is fixed by the
//! [`PrecisionContext`] it was created under.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::error::{Error, Result};

pub type Real = Float;

/// Binary precision shared by every value created under it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrecisionContext {
    bits: u32,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 64;
    pub const DEFAULT_BITS: u32 = 256;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::Domain(format!(
                "precision {bits} bits is below the minimum of {}",
                Self::MIN_BITS
            )));
        }
        Ok(Self { bits })
    }

    /// Default for Hankel work up to index `n_max`: ~24 bits per row.
    #[must_use]
    pub fn for_hankel(n_max: usize) -> Self {
        let bits = (24 * n_max as u64 + 64).max(u64::from(Self::DEFAULT_BITS));
        Self { bits: u32::try_from(bits).unwrap_or(u32::MAX / 2) }
    }

    #[must_use]
    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Unit roundoff 2^(1−bits).
    #[must_use]
    pub fn epsilon(self) -> Real {
        Float::with_val(self.bits, Float::i_exp(1, 1 - self.bits as i32))
    }

    /// Same context with `extra` more bits.
    #[must_use]
    pub fn widened(self, extra: u32) -> Self {
        Self { bits: self.bits.saturating_add(extra) }
    }

    #[must_use]
    pub fn with_bits(self, bits: u32) -> Self {
        Self { bits: bits.max(Self::MIN_BITS) }
    }

    pub fn real<T>(self, v: T) -> Real
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits, v)
    }

    /// Exactly rounded p/q.
    #[must_use]
    pub fn ratio(self, p: i64, q: i64) -> Real {
        Float::with_val(self.bits, p) / q
    }

    #[must_use]
    pub fn zero(self) -> Real {
        Float::new(self.bits)
    }

    #[must_use]
    pub fn one(self) -> Real {
        Float::with_val(self.bits, 1)
    }

    #[must_use]
    pub fn pi(self) -> Real {
        Float::with_val(self.bits, Constant::Pi)
    }

    #[must_use]
    pub fn ln2(self) -> Real {
        Float::with_val(self.bits, Constant::Log2)
    }

    /// 2^e at this precision.
    #[must_use]
    pub fn pow2(self, e: i32) -> Real {
        Float::with_val(self.bits, Float::i_exp(1, e))
    }

    /// Copy of `x` rounded to this context.
    #[must_use]
    pub fn round(self, x: &Real) -> Real {
        Float::with_val(self.bits, x)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self { bits: Self::DEFAULT_BITS }
    }
}

/// log2|x| without overflow; −∞ for zero, +∞ for non-finite.
#[must_use]
pub fn log2_abs(x: &Real) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    if !x.is_finite() {
        return f64::INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log2() + f64::from(e)
}

/// |a − b| / |b|, or |a| when b = 0, as log2.
#[must_use]
pub fn log2_rel_diff(a: &Real, b: &Real) -> f64 {
    let prec = a.prec().max(b.prec());
    let d = Float::with_val(prec, a - b);
    if b.is_zero() {
        log2_abs(&d)
    } else {
        log2_abs(&d) - log2_abs(b)
    }
}

/// Relative difference as an f64 (underflows to 0 harmlessly).
#[must_use]
pub fn rel_diff(a: &Real, b: &Real) -> f64 {
    log2_rel_diff(a, b).exp2()
}

/// Maximum of |x| over a slice, at the precision of the first entry.
#[must_use]
pub fn max_abs(xs: &[Real]) -> Real {
    let prec = xs.first().map_or(PrecisionContext::MIN_BITS, Float::prec);
    let mut m = Float::new(prec);
    for x in xs {
        if x.cmp_abs(&m) == Some(std::cmp::Ordering::Greater) {
            m.assign(x.abs_val());
        }
    }
    m
}

/// Borrowing power and absolute value, as lazily assigned rug values.
pub trait RealExt {
    fn pow_ref<'a, T>(&'a self, e: T) -> <&'a Real as Pow<T>>::Output
    where
        &'a Real: Pow<T>;

    fn abs_val(&self) -> Real;
}

impl RealExt for Real {
    fn pow_ref<'a, T>(&'a self, e: T) -> <&'a Real as Pow<T>>::Output
    where
        &'a Real: Pow<T>,
    {
        Pow::pow(self, e)
    }

    fn abs_val(&self) -> Real {
        Real::with_val(self.prec(), self.abs_ref())
    }
}
