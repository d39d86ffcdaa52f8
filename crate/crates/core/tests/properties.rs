use proptest::prelude::*;

use opk_core::airy_moments::{mu0_airy_halfint, mu0_airy_series, mu_k_airy, mu_k_airy_quad};
use opk_core::airy_polys::{eval_P, interlaces, zeros_P};
use opk_core::airy_recurrence::{recurrence_from_moments, string_system_residual};
use opk_core::freud6::{beta_freud6, freud6_moment_by_quadrature, mu_freud6, zeros_S};
use opk_core::numeric_core::log2_rel_diff;
use opk_core::{PrecisionContext, Real, WeightParams};

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits).unwrap()
}

fn close(a: &Real, b: &Real, log2_tol: f64) -> bool {
    a == b || log2_rel_diff(a, b) <= log2_tol
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn airy_coefficients_are_positive(t in -8.0f64..8.0, l in -0.9f64..3.0) {
        let c = recurrence_from_moments(&WeightParams::airy(t, l, ctx(256)).unwrap(), 8).unwrap();
        prop_assert!(c.alphas().iter().all(|a| *a > 0));
        prop_assert!(c.betas()[0] == 0);
        prop_assert!(c.betas()[1..].iter().all(|b| *b > 0));
        prop_assert!(c.diagnostics().log2_crosscheck <= -f64::from(c.ctx().bits()) / 2.0);
    }

    #[test]
    fn closed_form_moments_match_quadrature(t in -6.0f64..6.0, l in -0.9f64..3.0, k in 0usize..5) {
        let p = WeightParams::airy(t, l, ctx(128)).unwrap();
        prop_assert!(close(&mu_k_airy(&p, k).unwrap(), &mu_k_airy_quad(&p, k).unwrap(), -100.0));
    }

    #[test]
    fn half_integer_moment_is_an_airy_square_sum(t in -6.0f64..6.0) {
        let c = ctx(160);
        let tr = c.real(t);
        prop_assert!(close(&mu0_airy_series(&tr, &c.ratio(-1, 2), c).unwrap(), &mu0_airy_halfint(&tr, c).unwrap(), -130.0));
    }

    #[test]
    fn string_system_holds(t in -8.0f64..8.0, l in -0.9f64..3.0, n in 1usize..10) {
        let c = recurrence_from_moments(&WeightParams::airy(t, l, PrecisionContext::default()).unwrap(), 11).unwrap();
        let (a, b) = string_system_residual(n, &c).unwrap();
        prop_assert!(a.passes() && b.passes(), "{} {}", a.log2_relative(), b.log2_relative());
    }

    #[test]
    fn airy_zeros_interlace_and_are_positive(t in -8.0f64..8.0, l in -0.9f64..3.0) {
        let c = recurrence_from_moments(&WeightParams::airy(t, l, ctx(256)).unwrap(), 8).unwrap();
        let sets: Vec<_> = (1..=8).map(|n| zeros_P(n, &c).unwrap()).collect();
        for w in sets.windows(2) {
            prop_assert_eq!(interlaces(&w[0], &w[1]), Some(true));
        }
    }

    #[test]
    fn airy_zeros_grow_with_lambda(t in -4.0f64..4.0, l in -0.9f64..2.0, dl in 0.05f64..1.0) {
        let c0 = recurrence_from_moments(&WeightParams::airy(t, l, ctx(256)).unwrap(), 5).unwrap();
        let c1 = recurrence_from_moments(&WeightParams::airy(t, l + dl, ctx(256)).unwrap(), 5).unwrap();
        let (z0, z1) = (zeros_P(5, &c0).unwrap(), zeros_P(5, &c1).unwrap());
        for k in 1..=5 {
            prop_assert!(z0.x(k).strictly_below(z1.x(k)));
        }
    }

    #[test]
    fn coefficients_do_not_depend_on_precision(t in -8.0f64..8.0, l in -0.9f64..3.0) {
        let lo = recurrence_from_moments(&WeightParams::airy(t, l, ctx(256)).unwrap(), 6).unwrap();
        let hi = recurrence_from_moments(&WeightParams::airy(t, l, ctx(512)).unwrap(), 6).unwrap();
        for n in 1..=6 {
            prop_assert!(close(&lo.betas()[n], &hi.betas()[n], -200.0));
            prop_assert!(close(&lo.alphas()[n], &hi.alphas()[n], -200.0));
        }
    }
}

/// Christoffel weights at the zeros of P_n: 1/Σ_{k<n} P_k(x)²/h_k, h_k = μ_0 β_1⋯β_k.
fn gauss_rule(n: usize, c: &opk_core::airy_recurrence::RecurrenceCoeffs, mu0: &Real) -> Vec<(Real, Real)> {
    let b = c.ctx().bits();
    zeros_P(n, c)
        .unwrap()
        .mids()
        .into_iter()
        .map(|x| {
            let mut h = mu0.clone();
            let mut s = Real::with_val(b, 0);
            for k in 0..n {
                if k > 0 {
                    h *= &c.betas()[k];
                }
                let pk = eval_P(k, &x, c).unwrap();
                s += Real::with_val(b, pk.square_ref()) / &h;
            }
            (x, Real::with_val(b, s.recip_ref()))
        })
        .collect()
}

proptest! {
    #![proptest_config(config(12))]

    /// An n-point Gauss rule built from the recurrence integrates x^j exactly
    /// for j ≤ 2n − 1, so it must reproduce the closed-form moments.
    #[test]
    fn gauss_rule_reproduces_moments(t in -6.0f64..6.0, l in -0.9f64..3.0) {
        let n = 5;
        let p = WeightParams::airy(t, l, ctx(256)).unwrap();
        let c = recurrence_from_moments(&p, n).unwrap();
        let rule = gauss_rule(n, &c, &mu_k_airy(&p, 0).unwrap());
        for j in 0..2 * n {
            let mut q = Real::with_val(256, 0);
            for (x, w) in &rule {
                let mut xj = Real::with_val(256, 1);
                for _ in 0..j {
                    xj *= x;
                }
                q += xj * w;
            }
            prop_assert!(close(&q, &mu_k_airy(&p, j).unwrap(), -150.0), "j={}", j);
        }
    }

    #[test]
    fn freud_even_moments_match_quadrature_and_odd_vanish(t in -3.0f64..3.0, l in -0.9f64..2.0, k in 0usize..4) {
        let p = WeightParams::freud6(t, l, ctx(128)).unwrap();
        prop_assert!(close(&mu_freud6(&p, 2 * k).unwrap(), &freud6_moment_by_quadrature(&p, 2 * k).unwrap(), -100.0));
        prop_assert!(mu_freud6(&p, 2 * k + 1).unwrap().is_zero());
    }

    #[test]
    fn freud_zeros_are_symmetric_and_interlace(t in -3.0f64..3.0, l in -0.9f64..2.0) {
        let c = beta_freud6(&WeightParams::freud6(t, l, ctx(256)).unwrap(), 9).unwrap();
        prop_assert!(c.betas()[1..].iter().all(|b| *b > 0));
        let sets: Vec<_> = (1..=9).map(|n| zeros_S(n, &c).unwrap()).collect();
        for z in &sets {
            for k in 1..=z.n {
                prop_assert!(z.x(k).overlaps(&z.x(z.n + 1 - k).negated()));
            }
        }
        for w in sets.windows(2) {
            prop_assert_eq!(interlaces(&w[0], &w[1]), Some(true));
        }
    }

    /// S_{2m+1}(x; λ) = x S_{2m}(x; λ+1): the positive zeros coincide.
    #[test]
    fn odd_freud_zeros_are_even_zeros_one_lambda_up(t in -3.0f64..3.0, l in -0.9f64..2.0, m in 1usize..5) {
        // The shift must be exact; l + 1.0 in f64 would move the zeros off the enclosures.
        let p = WeightParams::freud6(t, l, ctx(256)).unwrap();
        let c0 = beta_freud6(&p, 2 * m + 1).unwrap();
        let c1 = beta_freud6(&p.with_lambda_shift(1), 2 * m).unwrap();
        let (odd, even) = (zeros_S(2 * m + 1, &c0).unwrap(), zeros_S(2 * m, &c1).unwrap());
        for j in 1..=m {
            prop_assert!(odd.x(j).overlaps(even.x(j)));
        }
    }
}
