use coulomb_core::{
    d_poly, laguerre_expression, negative_zeros, ode_residual, phi_derivative, phi_eval, phi_series, poly_zeros_d,
    poly_zeros_r, positive_zeros, r_explicit, r_poly, varphi_derivative, varphi_eval, zero_lower_bound, CoulombParams,
    Target,
};
use proptest::prelude::*;

fn family_ell() -> impl Strategy<Value = f64> {
    (-1.45f64..3.0).prop_filter("away from -1", |l| (l + 1.0).abs() > 0.05)
}

fn eta() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0).prop_filter("nonzero", |e| e.abs() > 0.05)
}

fn params(ell: f64, eta: f64) -> CoulombParams {
    CoulombParams::new(ell, eta).unwrap()
}

/// Alternation of two ascending lists, either list may come first. Pairs
/// from different lists closer than 1e−13 relative are below double
/// resolution and are skipped.
fn alternate(a: &[f64], b: &[f64]) -> bool {
    let mut m: Vec<(f64, u8)> = a.iter().map(|&x| (x, 0)).chain(b.iter().map(|&x| (x, 1))).collect();
    m.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut kept = Vec::with_capacity(m.len());
    let mut i = 0;
    while i < m.len() {
        if i + 1 < m.len() && m[i].1 != m[i + 1].1 && m[i + 1].0 - m[i].0 <= 1e-13 * m[i].0.abs().max(m[i + 1].0.abs())
        {
            i += 2;
        } else {
            kept.push(m[i]);
            i += 1;
        }
    }
    kept.windows(2).all(|w| w[0].1 != w[1].1 && w[0].0 < w[1].0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn series_coefficients_obey_recurrence(ell in family_ell(), eta in -3.0f64..3.0, order in 10usize..80) {
        let s = phi_series(&params(ell, eta), order).unwrap();
        for k in 2..s.coeffs.len() {
            prop_assert!(s.recurrence_residual(k) <= 1e-14, "k={k} res={}", s.recurrence_residual(k));
        }
    }

    #[test]
    fn laguerre_nonnegative(ell in family_ell(), eta in eta(), x in -20.0f64..20.0) {
        prop_assume!(x.abs() > 1e-3);
        let p = params(ell, eta);
        let (f, df) = (phi_eval(&p, x).unwrap().value, phi_derivative(&p, x).unwrap().value);
        let l = laguerre_expression(&p, x).unwrap();
        prop_assert!(l >= -1e-12 * (f * f + df * df).max(1.0), "L={l}");
    }

    #[test]
    fn reflection_in_eta(ell in family_ell(), eta in -3.0f64..3.0, x in -30.0f64..30.0) {
        let a = varphi_eval(&params(ell, -eta), x).unwrap().value;
        let b = varphi_eval(&params(ell, eta), -x).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-11 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE));
    }

    #[test]
    fn ode_is_satisfied(ell in family_ell(), eta in -3.0f64..3.0, x in -50.0f64..50.0) {
        prop_assume!(x.abs() > 1e-3);
        let r = ode_residual(&params(ell, eta), x).unwrap();
        prop_assert!(r <= 1e-8, "residual {r}");
    }

    #[test]
    fn derivative_matches_central_difference(ell in family_ell(), eta in eta(), x in -15.0f64..15.0) {
        let p = params(ell, eta);
        let h = 1e-5;
        let fd = (phi_eval(&p, x + h).unwrap().value - phi_eval(&p, x - h).unwrap().value) / (2.0 * h);
        let d = phi_derivative(&p, x).unwrap().value;
        prop_assert!((d - fd).abs() <= 1e-7 * d.abs().max(1.0), "d={d} fd={fd}");
    }

    #[test]
    fn zeros_are_simple_and_above_bound(ell in -0.95f64..3.0, eta in -2.0f64..2.0) {
        let p = params(ell, eta);
        let z = positive_zeros(&p, Target::Varphi, 6).unwrap();
        prop_assert_eq!(z.len(), 6);
        let bound = zero_lower_bound(&p);
        let slopes: Vec<f64> = z.zeros.iter().map(|&x| varphi_derivative(&p, x).unwrap().value).collect();
        for (&x, &s) in z.zeros.iter().zip(&slopes) {
            let v = varphi_eval(&p, x).unwrap();
            prop_assert!(x > bound);
            prop_assert!(v.value.abs() <= 10.0 * v.abs_err_bound + s.abs() * z.tol, "x={x} v={:?}", v);
        }
        prop_assert!(slopes.windows(2).all(|w| w[0].signum() == -w[1].signum()));
    }

    #[test]
    fn fprime_zeros_above_bound(ell in family_ell(), eta in -2.0f64..2.0) {
        let p = params(ell, eta);
        let z = positive_zeros(&p, Target::FPrime, 4).unwrap();
        let bound = zero_lower_bound(&p);
        prop_assert!(z.zeros.iter().all(|&x| x > bound));
    }

    #[test]
    fn negative_zeros_reflect(ell in family_ell(), eta in -2.0f64..2.0) {
        let n = negative_zeros(&params(ell, eta), Target::Varphi, 5).unwrap();
        let p = positive_zeros(&params(ell, -eta), Target::Varphi, 5).unwrap();
        let mirrored: Vec<f64> = p.zeros.iter().rev().map(|z| -z).collect();
        prop_assert_eq!(n.len(), mirrored.len());
        for (a, b) in n.zeros.iter().zip(&mirrored) {
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn adjacent_orders_interlace(ell in family_ell(), eta in eta()) {
        let (p, q) = (params(ell, eta), params(ell + 1.0, eta));
        for side in [positive_zeros, negative_zeros] {
            let a = side(&p, Target::Varphi, 8).unwrap();
            let b = side(&q, Target::Varphi, 8).unwrap();
            let n = a.len().min(b.len());
            let (mut a, mut b) = (a.zeros, b.zeros);
            a.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
            b.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
            for k in 0..n {
                prop_assert!(a[k].abs() < b[k].abs());
                if k + 1 < n {
                    prop_assert!(b[k].abs() < a[k + 1].abs());
                }
            }
        }
    }

    #[test]
    fn recurrence_and_explicit_agree(ell in -1.4f64..3.0, eta in -3.0f64..3.0, n in 0usize..15) {
        let p = params(ell, eta);
        prop_assume!(p.is_regular() && (ell + 1.0).abs() > 0.05);
        let a = r_poly(&p, n).unwrap();
        let b = r_explicit(&p, n).unwrap();
        let scale = a.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            prop_assert!((x - y).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn polynomial_zeros_interlace(ell in -1.4f64..3.0, eta in eta(), n in 1usize..20, h in 0.0f64..3.0) {
        let p = params(ell, eta);
        prop_assume!(p.is_regular() && (ell + 1.0).abs() > 0.05);
        let r = poly_zeros_r(&p, n).unwrap();
        let r1 = poly_zeros_r(&p, n + 1).unwrap();
        prop_assert_eq!(r.len(), n);
        prop_assert!(alternate(&r, &r1));
        let d = poly_zeros_d(&p, n, h).unwrap();
        prop_assert_eq!(d.len(), if h > 0.0 { n + 1 } else { n });
        prop_assert!(alternate(&r, &d));
        prop_assert!(d_poly(&p, n, h).is_ok());
    }
}
