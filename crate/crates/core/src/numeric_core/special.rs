//! Special functions: Γ, ₁F₂ and the Airy pair.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numeric_core::precision::{log2_abs, PrecisionContext, Real, RealExt};

const HYP_MAX_TERMS: usize = 200_000;

/// Γ(z) for z > 0, correctly rounded by MPFR.
pub fn gamma_fn(z: &Real, ctx: PrecisionContext) -> Result<Real> {
    if !z.is_finite() || *z <= 0 {
        return Err(Error::Domain(format!("gamma_fn needs z > 0, got {}", z.to_f64())));
    }
    Ok(ctx.round(z).gamma())
}

/// ₁F₂(a; b1, b2; z), summed with enough guard bits to absorb cancellation.
///
/// The first pass measures the loss log2(Σ|term| / |Σ term|); if it is
/// material the series is re-summed with that many extra bits.
pub fn hyp1f2(a: &Real, b1: &Real, b2: &Real, z: &Real, ctx: PrecisionContext) -> Result<Real> {
    for b in [b1, b2] {
        if *b <= 0 && b.is_integer() {
            return Err(Error::Domain("hyp1f2 lower parameter is a nonpositive integer".into()));
        }
    }
    let guard = 32;
    let (sum, loss) = hyp1f2_pass(a, b1, b2, z, ctx.widened(guard))?;
    if loss <= f64::from(guard) - 8.0 {
        return Ok(ctx.round(&sum));
    }
    let extra = guard + loss.ceil() as u32 + 16;
    let (sum, _) = hyp1f2_pass(a, b1, b2, z, ctx.widened(extra))?;
    Ok(ctx.round(&sum))
}

fn hyp1f2_pass(
    a: &Real,
    b1: &Real,
    b2: &Real,
    z: &Real,
    w: PrecisionContext,
) -> Result<(Real, f64)> {
    let a = w.round(a);
    let b1 = w.round(b1);
    let b2 = w.round(b2);
    let z = w.round(z);
    let eps = w.epsilon();
    let mut term = w.one();
    let mut sum = w.one();
    let mut abs_sum = w.one();
    let mut small_run = 0;
    for k in 0..HYP_MAX_TERMS {
        let kf = k as u32;
        // term_{k+1} = term_k · (a+k) z / ((b1+k)(b2+k)(k+1))
        let num = Float::with_val(w.bits(), &a + kf) * &z;
        let den = Float::with_val(w.bits(), &b1 + kf) * Float::with_val(w.bits(), &b2 + kf) * (kf + 1);
        term *= num;
        term /= den;
        sum += &term;
        abs_sum += Float::with_val(w.bits(), term.abs_val());
        let thresh = Float::with_val(w.bits(), &eps * sum.abs_val());
        if term.cmp_abs(&thresh) != Some(std::cmp::Ordering::Greater) {
            small_run += 1;
            if small_run == 3 {
                let loss = (log2_abs(&abs_sum) - log2_abs(&sum)).max(0.0);
                return Ok((sum, loss));
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::SeriesNonconvergence { terms: HYP_MAX_TERMS })
}

/// Ai, Ai′, Bi, Bi′ at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct AiryValues {
    pub ai: Real,
    pub aip: Real,
    pub bi: Real,
    pub bip: Real,
}

/// (Ai(τ), Bi(τ)).
pub fn airy_ai_bi(tau: &Real, ctx: PrecisionContext) -> Result<(Real, Real)> {
    let v = airy_all(tau, ctx)?;
    Ok((v.ai, v.bi))
}

/// |τ| beyond which the asymptotic series reaches the working precision.
///
/// The smallest asymptotic term is about e^{−2ζ}, ζ = (2/3)|τ|^{3/2}.
#[must_use]
pub fn airy_asymptotic_cutoff(bits: u32) -> f64 {
    let zeta = f64::from(bits + 16) * std::f64::consts::LN_2 / 2.0;
    (1.5 * zeta).powf(2.0 / 3.0).max(9.0)
}

/// Airy functions and derivatives, series below the cutoff, asymptotics above.
pub fn airy_all(tau: &Real, ctx: PrecisionContext) -> Result<AiryValues> {
    if !tau.is_finite() {
        return Err(Error::Domain("airy argument must be finite".into()));
    }
    let v = if tau.to_f64().abs() < airy_asymptotic_cutoff(ctx.bits()) {
        airy_maclaurin(tau, ctx)
    } else {
        airy_asymptotic(tau, ctx)?
    };
    Ok(AiryValues {
        ai: ctx.round(&v.ai),
        aip: ctx.round(&v.aip),
        bi: ctx.round(&v.bi),
        bip: ctx.round(&v.bip),
    })
}

fn airy_maclaurin(tau: &Real, ctx: PrecisionContext) -> AiryValues {
    // Terms grow to ~e^{ζ} while Ai shrinks to ~e^{−ζ}.
    let x = tau.to_f64().abs();
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let guard = (2.0 * zeta * std::f64::consts::LOG2_E).ceil() as u32 + 32;
    let w = ctx.widened(guard);
    let x = w.round(tau);
    let x3 = Float::with_val(w.bits(), x.clone().square() * &x);
    let eps = w.epsilon();

    // f = Σ c_k x^{3k}, g = Σ d_k x^{3k+1}; tf, tg are the current terms.
    let mut tf = w.one();
    let mut tg = x.clone();
    let mut f = w.one();
    let mut g = x.clone();
    let mut fp = w.zero();
    let mut gp = w.one();
    // derivative terms: d/dx of c_k x^{3k} = 3k c_k x^{3k−1}
    let mut k: u32 = 0;
    loop {
        k += 1;
        let k3 = 3 * k;
        tf *= &x3;
        tf /= (k3 - 1) * k3;
        tg *= &x3;
        tg /= k3 * (k3 + 1);
        // c_k x^{3k−1} = tf / x, derivative term 3k·tf/x; avoid dividing by 0.
        let dfp = if x.is_zero() {
            w.zero()
        } else {
            Float::with_val(w.bits(), &tf * k3) / &x
        };
        let dgp = if x.is_zero() {
            w.zero()
        } else {
            Float::with_val(w.bits(), &tg * (k3 + 1)) / &x
        };
        f += &tf;
        g += &tg;
        fp += &dfp;
        gp += &dgp;
        let big = Float::with_val(w.bits(), x3.abs_val()) / ((k3 + 3) * (k3 + 3));
        let settled = big < 1
            && tf.cmp_abs(&Float::with_val(w.bits(), &eps * f.abs_val())) != Some(std::cmp::Ordering::Greater)
            && tg.cmp_abs(&Float::with_val(w.bits(), &eps * g.abs_val())) != Some(std::cmp::Ordering::Greater)
            && dfp.cmp_abs(&Float::with_val(w.bits(), &eps * fp.abs_val())) != Some(std::cmp::Ordering::Greater)
            && dgp.cmp_abs(&Float::with_val(w.bits(), &eps * gp.abs_val())) != Some(std::cmp::Ordering::Greater);
        if settled || (x.is_zero() && k > 1) {
            break;
        }
    }
    let (c1, c2) = airy_origin_constants(w);
    let sqrt3 = w.real(3).sqrt();
    let cf = Float::with_val(w.bits(), &c1 * &f);
    let cg = Float::with_val(w.bits(), &c2 * &g);
    let cfp = Float::with_val(w.bits(), &c1 * &fp);
    let cgp = Float::with_val(w.bits(), &c2 * &gp);
    AiryValues {
        ai: Float::with_val(w.bits(), &cf - &cg),
        aip: Float::with_val(w.bits(), &cfp - &cgp),
        bi: Float::with_val(w.bits(), &cf + &cg) * &sqrt3,
        bip: Float::with_val(w.bits(), &cfp + &cgp) * &sqrt3,
    }
}

/// (Ai(0), −Ai′(0)) = (3^{−2/3}/Γ(2/3), 3^{−1/3}/Γ(1/3)).
fn airy_origin_constants(w: PrecisionContext) -> (Real, Real) {
    let three = w.real(3);
    let c1 = Float::with_val(w.bits(), three.clone().pow(&w.ratio(-2, 3))) / w.ratio(2, 3).gamma();
    let c2 = Float::with_val(w.bits(), three.pow(&w.ratio(-1, 3))) / w.ratio(1, 3).gamma();
    (c1, c2)
}

fn airy_asymptotic(tau: &Real, ctx: PrecisionContext) -> Result<AiryValues> {
    let z_abs = tau.to_f64().abs();
    let zeta_f = 2.0 / 3.0 * z_abs.powf(1.5);
    let w = ctx.widened(32 + zeta_f.log2().ceil().max(0.0) as u32);
    let z = Float::with_val(w.bits(), tau.abs_val());
    let zeta = Float::with_val(w.bits(), z.clone().pow(&w.ratio(3, 2))) * w.ratio(2, 3);
    // The cutoff guarantees the smallest term is below 2^{-(bits+16)}.
    let eps = ctx.widened(8).epsilon();

    // u_k, v_k scaled by ζ^{−k}.
    let mut us: Vec<Real> = vec![w.one()];
    let mut vs: Vec<Real> = vec![w.one()];
    let mut k: u32 = 0;
    loop {
        k += 1;
        let prev = us.last().expect("nonempty").clone();
        let num = u64::from(6 * k - 5) * u64::from(6 * k - 3) * u64::from(6 * k - 1);
        let den = u64::from(2 * k - 1) * 216 * u64::from(k);
        let u = prev * num / den / &zeta;
        let v = Float::with_val(w.bits(), -&u) * (6 * k + 1) / (6 * k - 1);
        let small = u.cmp_abs(&eps) != Some(std::cmp::Ordering::Greater);
        if u.cmp_abs(us.last().expect("nonempty")) == Some(std::cmp::Ordering::Greater) {
            return Err(Error::SeriesNonconvergence { terms: k as usize });
        }
        us.push(u);
        vs.push(v);
        if small {
            break;
        }
    }

    let sqrt_pi = w.pi().sqrt();
    let z14 = Float::with_val(w.bits(), z.clone().pow(&w.ratio(1, 4)));
    if *tau >= 0 {
        let alt = |c: &[Real]| -> (Real, Real) {
            let mut plus = w.zero();
            let mut minus = w.zero();
            for (i, ci) in c.iter().enumerate() {
                plus += ci;
                if i % 2 == 0 {
                    minus += ci;
                } else {
                    minus -= ci;
                }
            }
            (plus, minus)
        };
        let (su_p, su_m) = alt(&us);
        let (sv_p, sv_m) = alt(&vs);
        let em = Float::with_val(w.bits(), -&zeta).exp();
        let ep = zeta.clone().exp();
        let ai = Float::with_val(w.bits(), &em * &su_m) / (Float::with_val(w.bits(), &sqrt_pi * &z14) * 2u32);
        let aip = -Float::with_val(w.bits(), &z14 * &em) * &sv_m / (Float::with_val(w.bits(), &sqrt_pi * 2u32));
        let bi = Float::with_val(w.bits(), &ep * &su_p) / Float::with_val(w.bits(), &sqrt_pi * &z14);
        let bip = Float::with_val(w.bits(), &z14 * &ep) * &sv_p / &sqrt_pi;
        Ok(AiryValues { ai, aip, bi, bip })
    } else {
        // Even/odd split with alternating signs inside each half.
        let split = |c: &[Real]| -> (Real, Real) {
            let mut even = w.zero();
            let mut odd = w.zero();
            for (i, ci) in c.iter().enumerate() {
                let sign_neg = (i / 2) % 2 == 1;
                let target = if i % 2 == 0 { &mut even } else { &mut odd };
                if sign_neg {
                    *target -= ci;
                } else {
                    *target += ci;
                }
            }
            (even, odd)
        };
        let (ue, uo) = split(&us);
        let (ve, vo) = split(&vs);
        let phase = Float::with_val(w.bits(), &zeta - Float::with_val(w.bits(), w.pi() / 4u32));
        let (s, c) = phase.sin_cos(Float::new(w.bits()));
        let pre = Float::with_val(w.bits(), &sqrt_pi * &z14);
        let pre_d = Float::with_val(w.bits(), &z14 / &sqrt_pi);
        let ai = (Float::with_val(w.bits(), &c * &ue) + Float::with_val(w.bits(), &s * &uo)) / &pre;
        let aip = (Float::with_val(w.bits(), &s * &ve) - Float::with_val(w.bits(), &c * &vo)) * &pre_d;
        let bi = (Float::with_val(w.bits(), &c * &uo) - Float::with_val(w.bits(), &s * &ue)) / &pre;
        let bip = (Float::with_val(w.bits(), &c * &ve) + Float::with_val(w.bits(), &s * &vo)) * &pre_d;
        Ok(AiryValues { ai, aip, bi, bip })
    }
}
