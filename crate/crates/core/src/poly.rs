//! Dense real polynomials in the monomial basis.

use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;

use crate::numeric_core::{PrecisionContext, Real, RealExt};

/// Σ c_k x^k, coefficients ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Real>,
    bits: u32,
}

impl Poly {
    #[must_use]
    pub fn new(coeffs: Vec<Real>, ctx: PrecisionContext) -> Self {
        let coeffs = if coeffs.is_empty() { vec![ctx.zero()] } else { coeffs };
        Self { coeffs: coeffs.iter().map(|c| ctx.round(c)).collect(), bits: ctx.bits() }
    }

    #[must_use]
    pub fn constant(c: Real, ctx: PrecisionContext) -> Self {
        Self::new(vec![c], ctx)
    }

    /// c·x^k.
    #[must_use]
    pub fn monomial(c: Real, k: usize, ctx: PrecisionContext) -> Self {
        let mut v = vec![ctx.zero(); k + 1];
        v[k] = ctx.round(&c);
        Self::new(v, ctx)
    }

    #[must_use]
    pub fn x(ctx: PrecisionContext) -> Self {
        Self::monomial(ctx.one(), 1, ctx)
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    fn ctx(&self) -> PrecisionContext {
        PrecisionContext::default().with_bits(self.bits)
    }

    /// Horner evaluation.
    #[must_use]
    pub fn eval(&self, x: &Real) -> Real {
        let mut acc = Float::new(self.bits);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Σ |c_k||x|^k, the natural scale of a Horner evaluation.
    #[must_use]
    pub fn eval_abs(&self, x: &Real) -> Real {
        let ax = Float::with_val(self.bits, x.abs_val());
        let mut acc = Float::new(self.bits);
        for c in self.coeffs.iter().rev() {
            acc *= &ax;
            acc += c.abs_val();
        }
        acc
    }

    #[must_use]
    pub fn deriv(&self) -> Self {
        let ctx = self.ctx();
        if self.coeffs.len() <= 1 {
            return Self::constant(ctx.zero(), ctx);
        }
        let v = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| Float::with_val(self.bits, c * k as u32)).collect();
        Self::new(v, ctx)
    }

    #[must_use]
    pub fn scale(&self, s: &Real) -> Self {
        let v = self.coeffs.iter().map(|c| Float::with_val(self.bits, c * s)).collect();
        Self::new(v, self.ctx())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let bits = self.bits.max(o.bits);
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|k| {
                let mut s = Float::new(bits);
                if let Some(c) = self.coeffs.get(k) {
                    s += c;
                }
                if let Some(c) = o.coeffs.get(k) {
                    s += c;
                }
                s
            })
            .collect();
        Poly::new(v, PrecisionContext::default().with_bits(bits))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let v = self.coeffs.iter().map(|c| Float::with_val(self.bits, -c)).collect();
        Poly::new(v, self.ctx())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let bits = self.bits.max(o.bits);
        let mut v = vec![Float::new(bits); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += Float::with_val(bits, a * b);
            }
        }
        Poly::new(v, PrecisionContext::default().with_bits(bits))
    }
}
