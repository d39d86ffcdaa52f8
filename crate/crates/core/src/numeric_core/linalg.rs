//! Dense determinants and symmetric tridiagonal eigenvalues.

use std::cmp::Ordering;

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric_core::precision::{log2_abs, PrecisionContext, Real, RealExt};

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    n: usize,
    entries: Vec<Real>,
}

impl RealMatrix {
    pub fn new(n: usize, entries: Vec<Real>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Domain(format!(
                "{} entries do not form a {n}x{n} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Real) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::new(n, entries)
    }

    #[must_use]
    pub fn identity(n: usize, ctx: PrecisionContext) -> Self {
        let mut entries = vec![ctx.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ctx.one();
        }
        Self { n, entries }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> &Real {
        &self.entries[i * self.n + j]
    }
}

/// Determinant together with the pivot-ratio condition estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct Determinant {
    pub value: Real,
    pub singular: bool,
    /// log2(max |pivot| / min |pivot|); 0 for empty or 1×1 matrices.
    pub log2_pivot_ratio: f64,
}

/// LU with full pivoting at `ctx` precision.
#[must_use]
pub fn det(m: &RealMatrix, ctx: PrecisionContext) -> Determinant {
    let n = m.n;
    if n == 0 {
        return Determinant { value: ctx.one(), singular: false, log2_pivot_ratio: 0.0 };
    }
    let mut a: Vec<Real> = m.entries.iter().map(|e| ctx.round(e)).collect();
    let mut value = ctx.one();
    let mut negate = false;
    let mut pmax = f64::NEG_INFINITY;
    let mut pmin = f64::INFINITY;
    for k in 0..n {
        let (mut pi, mut pj) = (k, k);
        for i in k..n {
            for j in k..n {
                if a[i * n + j].cmp_abs(&a[pi * n + pj]) == Some(Ordering::Greater) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if a[pi * n + pj].is_zero() {
            return Determinant {
                value: ctx.zero(),
                singular: true,
                log2_pivot_ratio: f64::INFINITY,
            };
        }
        if pi != k {
            for j in 0..n {
                a.swap(k * n + j, pi * n + j);
            }
            negate = !negate;
        }
        if pj != k {
            for i in 0..n {
                a.swap(i * n + k, i * n + pj);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        let lp = log2_abs(&pivot);
        pmax = pmax.max(lp);
        pmin = pmin.min(lp);
        value *= &pivot;
        for i in (k + 1)..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            let factor = Float::with_val(ctx.bits(), &a[i * n + k] / &pivot);
            for j in (k + 1)..n {
                let prod = Float::with_val(ctx.bits(), &factor * &a[k * n + j]);
                a[i * n + j] -= prod;
            }
        }
    }
    if negate {
        value = -value;
    }
    Determinant { value, singular: false, log2_pivot_ratio: pmax - pmin }
}

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiag {
    diag: Vec<Real>,
    offdiag: Vec<Real>,
}

impl SymTridiag {
    pub fn new(diag: Vec<Real>, offdiag: Vec<Real>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::Domain(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|e| !e.is_finite()) {
            return Err(Error::Domain("tridiagonal entries must be finite".into()));
        }
        Ok(Self { diag, offdiag })
    }

    /// Jacobi matrix: diagonal α_0..α_{n−1}, off-diagonal √β_1..√β_{n−1}.
    pub fn jacobi(alphas: &[Real], betas: &[Real], n: usize, ctx: PrecisionContext) -> Result<Self> {
        if n == 0 || alphas.len() < n || betas.len() < n {
            return Err(Error::IndexOutOfRange { index: n, max: alphas.len().min(betas.len()) });
        }
        let mut off = Vec::with_capacity(n - 1);
        for (k, b) in betas.iter().enumerate().take(n).skip(1) {
            if *b <= 0 {
                return Err(Error::InvalidCoefficients(format!("beta_{k} is not positive")));
            }
            off.push(ctx.round(b).sqrt());
        }
        Self::new(alphas[..n].iter().map(|a| ctx.round(a)).collect(), off)
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    #[must_use]
    pub fn diag(&self) -> &[Real] {
        &self.diag
    }

    #[must_use]
    pub fn offdiag(&self) -> &[Real] {
        &self.offdiag
    }
}

/// Closed interval [lo, hi] known to contain one eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: Real,
    pub hi: Real,
}

impl Enclosure {
    #[must_use]
    pub fn mid(&self) -> Real {
        Float::with_val(self.lo.prec(), &self.lo + &self.hi) / 2u32
    }

    #[must_use]
    pub fn radius(&self) -> Real {
        Float::with_val(self.lo.prec(), &self.hi - &self.lo) / 2u32
    }

    /// Every point of `self` lies strictly below every point of `other`.
    #[must_use]
    pub fn strictly_below(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }

    #[must_use]
    pub fn overlaps(&self, other: &Enclosure) -> bool {
        !(self.strictly_below(other) || other.strictly_below(self))
    }

    #[must_use]
    pub fn contains(&self, x: &Real) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// [lo − by, hi + by], rounded outward.
    #[must_use]
    pub fn widened(&self, by: &Real) -> Enclosure {
        let b = self.lo.prec().max(by.prec());
        Enclosure {
            lo: Float::with_val_round(b, &self.lo - by, rug::float::Round::Down).0,
            hi: Float::with_val_round(b, &self.hi + by, rug::float::Round::Up).0,
        }
    }

    /// The mirror image −self.
    #[must_use]
    pub fn negated(&self) -> Enclosure {
        Enclosure { lo: Float::with_val(self.hi.prec(), -&self.hi), hi: Float::with_val(self.lo.prec(), -&self.lo) }
    }
}

/// Number of eigenvalues strictly below `x` (negative Sturm pivots).
fn sturm_count(j: &SymTridiag, e2: &[Real], x: &Real, pivmin: &Real, ctx: PrecisionContext) -> usize {
    let mut count = 0;
    let mut q = Float::with_val(ctx.bits(), &j.diag[0] - x);
    for i in 0..j.dim() {
        if i > 0 {
            let r = Float::with_val(ctx.bits(), &e2[i - 1] / &q);
            q = Float::with_val(ctx.bits(), &j.diag[i] - x) - r;
        }
        if q.cmp_abs(pivmin) != Some(Ordering::Greater) {
            // Replace a tiny pivot by −pivmin: the count is that of a nearby matrix.
            q = Float::with_val(ctx.bits(), -pivmin);
        }
        if q.is_sign_negative() {
            count += 1;
        }
    }
    count
}

/// All eigenvalues, ascending, each enclosed to width ≤ 2^{8−bits}·scale.
#[must_use]
pub fn tridiag_eigs(j: &SymTridiag, ctx: PrecisionContext) -> Vec<Enclosure> {
    let n = j.dim();
    let e2: Vec<Real> = j.offdiag.iter().map(|e| Float::with_val(ctx.bits(), e.square_ref())).collect();
    // Gershgorin interval.
    let mut lo: Option<Real> = None;
    let mut hi: Option<Real> = None;
    for i in 0..n {
        let mut r = ctx.zero();
        if i > 0 {
            r += j.offdiag[i - 1].abs_val();
        }
        if i + 1 < n {
            r += j.offdiag[i].abs_val();
        }
        let l = Float::with_val(ctx.bits(), &j.diag[i] - &r);
        let h = Float::with_val(ctx.bits(), &j.diag[i] + &r);
        lo = Some(match lo {
            Some(v) if v < l => v,
            _ => l,
        });
        hi = Some(match hi {
            Some(v) if v > h => v,
            _ => h,
        });
    }
    let lo = lo.expect("dim ≥ 1");
    let hi = hi.expect("dim ≥ 1");
    let mut scale = Float::with_val(ctx.bits(), lo.abs_val());
    if hi.cmp_abs(&scale) == Some(Ordering::Greater) {
        scale = Float::with_val(ctx.bits(), hi.abs_val());
    }
    if scale.is_zero() {
        return (0..n).map(|_| Enclosure { lo: ctx.zero(), hi: ctx.zero() }).collect();
    }
    // Widen slightly so the Gershgorin ends are strict bounds after rounding.
    let pad = Float::with_val(ctx.bits(), &scale * ctx.pow2(4 - ctx.bits() as i32));
    let lo = lo - &pad;
    let hi = hi + &pad;
    let tol = Float::with_val(ctx.bits(), &scale * ctx.pow2(6 - ctx.bits() as i32));
    let pivmin = Float::with_val(ctx.bits(), &scale * ctx.pow2(-2 * ctx.bits() as i32));

    (0..n)
        .map(|k| {
            // invariant: count(a) ≤ k < count(b)
            let mut a = lo.clone();
            let mut b = hi.clone();
            loop {
                let width = Float::with_val(ctx.bits(), &b - &a);
                if width <= tol {
                    break;
                }
                let m = Float::with_val(ctx.bits(), &a + &b) / 2u32;
                if m == a || m == b {
                    break;
                }
                if sturm_count(j, &e2, &m, &pivmin, ctx) > k {
                    b = m;
                } else {
                    a = m;
                }
            }
            Enclosure { lo: a, hi: b }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric_core::precision::rel_diff;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256).unwrap()
    }

    /// Fraction-free Bareiss elimination over the integers.
    fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
        let n = a.len();
        let mut prev = 1i128;
        let mut sign = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let r = (k + 1..n).find(|&r| a[r][k] != 0).expect("nonsingular");
                a.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    #[test]
    fn identity_and_scalar() {
        let c = ctx();
        let d = det(&RealMatrix::identity(3, c), c);
        assert_eq!(d.value, 1);
        assert!(!d.singular);
        let m = RealMatrix::new(1, vec![c.real(2.5)]).unwrap();
        assert_eq!(det(&m, c).value, 2.5);
    }

    #[test]
    fn hilbert_four_matches_integer_oracle() {
        let c = ctx();
        // 420·H has integer entries 420/(i+j+1).
        let scaled: Vec<Vec<i128>> =
            (0..4).map(|i| (0..4).map(|j| 420 / (i + j + 1) as i128).collect()).collect();
        let exact = bareiss(scaled);
        let h = RealMatrix::from_fn(4, |i, j| c.ratio(1, (i + j + 1) as i64)).unwrap();
        let d = det(&h, c);
        let expected = c.real(exact) / c.real(420i64.pow(4));
        assert!(rel_diff(&d.value, &expected) < 1e-70);
        assert!(rel_diff(&d.value, &c.ratio(1, 6_048_000)) < 1e-70);
        assert!(d.log2_pivot_ratio > 10.0);
    }

    #[test]
    fn singular_matrix_is_flagged() {
        let c = ctx();
        let m = RealMatrix::from_fn(3, |i, j| c.real((i + j) as u32)).unwrap();
        let d = det(&m, c);
        assert!(d.singular);
        assert_eq!(d.value, 0);
    }

    #[test]
    fn shape_errors() {
        let c = ctx();
        assert!(RealMatrix::new(2, vec![c.one()]).is_err());
        assert!(SymTridiag::new(vec![c.one()], vec![c.one()]).is_err());
    }

    #[test]
    fn small_tridiagonal_spectra() {
        let c = ctx();
        let one = SymTridiag::new(vec![c.real(1.5)], vec![]).unwrap();
        let e = tridiag_eigs(&one, c);
        assert!(e[0].contains(&c.real(1.5)));

        let two = SymTridiag::new(vec![c.zero(), c.zero()], vec![c.one()]).unwrap();
        let e = tridiag_eigs(&two, c);
        assert!(e[0].contains(&c.real(-1)) && e[1].contains(&c.one()));

        let three = SymTridiag::new(vec![c.zero(), c.zero(), c.zero()], vec![c.one(), c.one()]).unwrap();
        let e = tridiag_eigs(&three, c);
        let r2 = c.real(2).sqrt();
        // roots of x³ − 2x
        for (enc, x) in e.iter().zip([-r2.clone(), c.zero(), r2]) {
            let m = enc.mid();
            let dist = Float::with_val(256, &m - &x).abs();
            assert!(dist < c.pow2(-240), "{}", m.to_f64());
        }
        assert!(e[0].strictly_below(&e[1]) && e[1].strictly_below(&e[2]));
    }

    #[test]
    fn enclosure_width_bound() {
        let c = ctx();
        let n = 12;
        let j = SymTridiag::new(
            (0..n).map(|i| c.real(i as u32)).collect(),
            (1..n).map(|i| c.real(i as u32).sqrt()).collect(),
        )
        .unwrap();
        let e = tridiag_eigs(&j, c);
        let scale = c.real(30);
        let bound = scale * c.pow2(8 - 256);
        for enc in &e {
            assert!(Float::with_val(256, &enc.hi - &enc.lo) <= bound);
        }
        // trace check
        let sum: Real = e.iter().fold(c.zero(), |acc, x| acc + x.mid());
        assert!(rel_diff(&sum, &c.real(66)) < 1e-60);
    }
}
