//! Checks on the orthogonal polynomials R_n, D_n and on the Padé-type limits
//! and zero expansions built from them.

use super::Grid;
use crate::ortho::{
    check_family, dini_limit_residual, mittag_leffler_with, mittag_leffler_zeros, pade_limit_residual, poly_zeros_d,
    poly_zeros_r, r_explicit, r_poly, wronskian_r_sides, Polynomial,
};
use crate::params::CoulombParams;
use crate::report::{CheckReport, ReportBuilder};

pub const POLY_ELL: [f64; 5] = [-1.2, -0.4, 0.0, 1.0, 2.5];
pub const POLY_ETA: [f64; 4] = [-2.0, -1.0 / 3.0, 0.5, 3.0];
const EXPLICIT_MAX_N: usize = 20;
const EXPLICIT_TOL: f64 = 1e-10;
const CHAIN_MAX_N: usize = 40;
const SIGN_CHANGE_MAX_N: usize = 15;
const DINI_H: [f64; 4] = [0.0, 0.5, 1.0, 3.0];
const DINI_MAX_N: usize = 20;
/// (ℓ, η, x) at which the Padé-type limits are tracked.
pub const PADE_POINTS: [(f64, f64, f64); 9] = [
    (0.0, 1.0, 0.5),
    (0.0, 1.0, 1.0),
    (0.0, 1.0, 2.0),
    (0.5, -1.0, 0.5),
    (0.5, -1.0, 1.0),
    (0.5, -1.0, 2.0),
    (0.2, 0.5, 0.5),
    (0.2, 0.5, 1.0),
    (0.2, 0.5, 2.0),
];
pub const PADE_N: (usize, usize) = (10, 40);
pub const PADE_H: f64 = 1.0;
/// Frozen regression bounds on the residuals at n = 40. The limits converge
/// like 1/n, so these are far above rounding.
pub const PADE_REGRESSION_BOUND_R: f64 = 0.08;
pub const PADE_REGRESSION_BOUND_DINI: f64 = 0.12;
const WRONSKIAN_MAX_N: usize = 20;
const WRONSKIAN_TOL: f64 = 1e-9;
pub const ML_POINTS: [(f64, f64, f64); 6] = [
    (0.2, 0.5, 1.5),
    (0.2, 0.5, -2.5),
    (1.0, -1.0 / 3.0, 0.7),
    (1.0, -1.0 / 3.0, 4.2),
    (-0.4, 2.0, 3.3),
    (-0.4, 2.0, -1.1),
];
pub const ML_TERMS: (usize, usize) = (100, 200);

fn poly_params(grid: &Grid) -> Vec<CoulombParams> {
    let mut ps = Vec::new();
    for &l in &POLY_ELL {
        for &e in &POLY_ETA {
            ps.push(CoulombParams::new(l, e).unwrap());
        }
    }
    for p in grid.params(|p| check_family(p).is_ok()) {
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    ps
}

fn coeff_difference(a: &Polynomial, b: &Polynomial) -> f64 {
    let scale = b.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let n = a.coeffs.len().max(b.coeffs.len());
    (0..n)
        .map(|k| (a.coeffs.get(k).copied().unwrap_or(0.0) - b.coeffs.get(k).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
        / scale
}

/// Coefficients of R_n from the recurrence and from the explicit ₃F₂ form
/// agree to 1e−10 relative, n ≤ 20.
pub fn check_explicit_form(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("explicit-vs-recurrence", grid.describe(), EXPLICIT_TOL);
    for p in poly_params(grid) {
        for n in 0..=EXPLICIT_MAX_N {
            match (r_poly(&p, n), r_explicit(&p, n)) {
                (Ok(a), Ok(b)) => r.observe(-coeff_difference(&b, &a), 0.0, p.ell(), p.eta(), n as f64),
                (Err(e), _) | (_, Err(e)) => r.fail(format!("n={n}: {e}"), p.ell(), p.eta(), n as f64),
            }
        }
    }
    r.finish()
}

fn simple_gap(z: &[f64]) -> f64 {
    z.windows(2)
        .map(|w| (w[1] - w[0]) / w[1].abs().max(w[0].abs()).max(f64::MIN_POSITIVE))
        .fold(f64::INFINITY, f64::min)
}

/// Zeros of R_n are real and simple, and those of R_n and R_{n+1} alternate,
/// n ≤ 40.
pub fn check_jacobi_chain(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("jacobi-zeros-chain", grid.describe());
    let mut tied = 0;
    for p in poly_params(grid) {
        let mut prev: Option<Vec<f64>> = None;
        for n in 1..=CHAIN_MAX_N {
            let z = match poly_zeros_r(&p, n) {
                Ok(z) => z,
                Err(e) => {
                    r.fail(format!("n={n}: {e}"), p.ell(), p.eta(), n as f64);
                    prev = None;
                    continue;
                }
            };
            if z.len() != n || z.iter().any(|v| !v.is_finite()) {
                r.fail(format!("n={n}: expected {n} real zeros, got {}", z.len()), p.ell(), p.eta(), n as f64);
            }
            if n >= 2 {
                r.observe(simple_gap(&z), 4.0 * f64::EPSILON, p.ell(), p.eta(), n as f64);
            }
            if let Some(a) = &prev {
                let (a, b, ties) = drop_ties(a, &z);
                tied += ties;
                if let Some((m, at)) = relative_alternation(&a, &b) {
                    r.observe(m, 4.0 * f64::EPSILON, p.ell(), p.eta(), at);
                }
            }
            prev = Some(z);
        }
    }
    if tied > 0 {
        r.note(format!("{tied} zero pairs of R_n, R_n+1 coincide to rounding and were not compared"));
    }
    r.finish()
}

/// Relative separation below which two zeros count as unresolved.
const RESOLUTION: f64 = 1e-13;

/// Removes pairs (one zero from each list) closer than `RESOLUTION`
/// relative: the zeros of R_n converge so fast in n that their order is
/// below double resolution. Returns the remaining lists and the pair count.
fn drop_ties(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>, usize) {
    let close = |x: f64, y: f64| (x - y).abs() <= RESOLUTION * x.abs().max(y.abs());
    let mut keep_b = vec![true; b.len()];
    let mut out_a = Vec::with_capacity(a.len());
    let mut ties = 0;
    for &x in a {
        match b.iter().enumerate().position(|(j, &y)| keep_b[j] && close(x, y)) {
            Some(j) => {
                keep_b[j] = false;
                ties += 1;
            }
            None => out_a.push(x),
        }
    }
    let out_b = b.iter().zip(&keep_b).filter(|(_, &k)| k).map(|(&y, _)| y).collect();
    (out_a, out_b, ties)
}

/// Smallest gap relative to |x| in the merged ascending list when
/// neighbours always come from different lists, otherwise minus the
/// smallest same-list gap; with its location.
fn relative_alternation(a: &[f64], b: &[f64]) -> Option<(f64, f64)> {
    let mut merged: Vec<(f64, bool)> = a.iter().map(|&x| (x, false)).chain(b.iter().map(|&x| (x, true))).collect();
    merged.sort_by(|x, y| x.0.total_cmp(&y.0));
    merged
        .windows(2)
        .map(|w| {
            let gap = (w[1].0 - w[0].0) / w[0].0.abs().max(w[1].0.abs()).max(f64::MIN_POSITIVE);
            (if w[0].1 == w[1].1 { -gap.max(f64::MIN_POSITIVE) } else { gap }, w[1].0)
        })
        .min_by(|x, y| x.0.total_cmp(&y.0))
}

/// Each Jacobi eigenvalue lies within 1e−9 (relative to the spread of the
/// zeros) of a sign change of R_n found by bisection, n ≤ 15.
pub fn check_jacobi_matches_sign_changes(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("jacobi-zeros-match-sign-changes", grid.describe(), 1e-9);
    for p in poly_params(grid) {
        for n in 1..=SIGN_CHANGE_MAX_N {
            let (z, poly) = match (poly_zeros_r(&p, n), r_poly(&p, n)) {
                (Ok(z), Ok(q)) => (z, q),
                (Err(e), _) | (_, Err(e)) => {
                    r.fail(format!("n={n}: {e}"), p.ell(), p.eta(), n as f64);
                    continue;
                }
            };
            let spread = (z[z.len() - 1] - z[0]).abs().max(z[0].abs()).max(f64::MIN_POSITIVE);
            let pad = spread;
            let mids: Vec<f64> = std::iter::once(z[0] - pad)
                .chain(z.windows(2).map(|w| 0.5 * (w[0] + w[1])))
                .chain(std::iter::once(z[n - 1] + pad))
                .collect();
            for (k, w) in mids.windows(2).enumerate() {
                match bisect(|x| poly.eval(x), w[0], w[1]) {
                    Some(root) => r.observe(-(root - z[k]).abs() / spread, 0.0, p.ell(), p.eta(), z[k]),
                    None => r.fail(format!("n={n}: no sign change around zero {k}"), p.ell(), p.eta(), z[k]),
                }
            }
        }
    }
    r.finish()
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Option<f64> {
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return Some(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
}

/// Zeros of D_n(H; ·), H ≥ 0, are real and alternate with those of R_n.
pub fn check_dini_polynomial_zeros(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("dini-polynomial-zeros", grid.describe());
    for p in poly_params(grid) {
        for n in 1..=DINI_MAX_N {
            let rz = match poly_zeros_r(&p, n) {
                Ok(z) => z,
                Err(e) => {
                    r.fail(format!("n={n}: {e}"), p.ell(), p.eta(), n as f64);
                    continue;
                }
            };
            for h in DINI_H {
                match poly_zeros_d(&p, n, h) {
                    Ok(dz) => {
                        let expected = if h > 0.0 { n + 1 } else { n };
                        if dz.len() != expected {
                            r.fail(
                                format!("n={n} H={h}: {} real zeros, expected {expected}", dz.len()),
                                p.ell(),
                                p.eta(),
                                n as f64,
                            );
                            continue;
                        }
                        if let Some((m, at)) = relative_alternation(&rz, &dz) {
                            r.observe(m, 4.0 * f64::EPSILON, p.ell(), p.eta(), at);
                        }
                    }
                    Err(e) => r.fail(format!("n={n} H={h}: {e}"), p.ell(), p.eta(), n as f64),
                }
            }
        }
    }
    r.finish()
}

/// Residual sequences n = 10..=40 of both limits at every tracked point.
pub fn pade_sequences(ell: f64, eta: f64, x: f64) -> crate::Result<(Vec<f64>, Vec<f64>)> {
    let p = CoulombParams::new(ell, eta)?;
    let ns = PADE_N.0..=PADE_N.1;
    let rs = ns.clone().map(|n| pade_limit_residual(&p, n, x)).collect::<crate::Result<Vec<_>>>()?;
    let ds = ns.map(|n| dini_limit_residual(&p, n, PADE_H, x)).collect::<crate::Result<Vec<_>>>()?;
    Ok((rs, ds))
}

/// The residuals of (2x)^n R_n(1/(2x)) → φ and (2x)^{n+1} D_n(H; 1/(2x)) →
/// xφ' + Hφ decrease strictly in n from 10 to 40.
pub fn check_pade_decreasing(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("pade-decreasing", grid.describe());
    for (ell, eta, x) in PADE_POINTS {
        match pade_sequences(ell, eta, x) {
            Ok((rs, ds)) => {
                for seq in [rs, ds] {
                    for w in seq.windows(2) {
                        r.observe((w[0] - w[1]) / w[0], 1e-13, ell, eta, x);
                    }
                }
            }
            Err(e) => r.fail(format!("{e}"), ell, eta, x),
        }
    }
    r.finish()
}

/// Residuals at n = 40 stay below the frozen regression bounds.
pub fn check_pade_regression(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("pade-regression", grid.describe(), 0.0);
    for (ell, eta, x) in PADE_POINTS {
        let p = CoulombParams::new(ell, eta).unwrap();
        let n = PADE_N.1;
        match (pade_limit_residual(&p, n, x), dini_limit_residual(&p, n, PADE_H, x)) {
            (Ok(a), Ok(b)) => {
                r.observe(PADE_REGRESSION_BOUND_R - a, 0.0, ell, eta, x);
                r.observe(PADE_REGRESSION_BOUND_DINI - b, 0.0, ell, eta, x);
            }
            (Err(e), _) | (_, Err(e)) => r.fail(format!("{e}"), ell, eta, x),
        }
    }
    r.finish()
}

/// W[R_{n,ℓ}, R_{n+1,ℓ−1}] equals its sum of squares to 1e−9 and is
/// positive, for ℓ > −1/2, ℓ ≠ 0, n ≤ 20.
pub fn check_polynomial_wronskian(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("polynomial-wronskian-sum", grid.describe(), WRONSKIAN_TOL);
    let keep = |p: &CoulombParams| check_family(p).is_ok() && p.shifted(-1.0).is_ok_and(|q| check_family(&q).is_ok());
    let xs: Vec<f64> = (0..=40).map(|i| -2.0 + 0.1 * i as f64).collect();
    for p in grid.params(keep) {
        for n in 0..=WRONSKIAN_MAX_N {
            for &x in &xs {
                match wronskian_r_sides(&p, n, x) {
                    Ok(s) => {
                        r.observe(-s.relative_difference(), 0.0, p.ell(), p.eta(), x);
                        if !(s.direct > 0.0) {
                            r.fail(format!("n={n}: Wronskian {} is not positive", s.direct), p.ell(), p.eta(), x);
                        }
                    }
                    Err(e) => r.fail(format!("n={n}: {e}"), p.ell(), p.eta(), x),
                }
            }
        }
    }
    r.finish()
}

/// Residuals (r1, r2) of the zero expansions with the first 100 and first
/// 200 zeros per half-line.
pub fn mittag_leffler_pair(ell: f64, eta: f64, xs: &[f64]) -> crate::Result<Vec<[f64; 4]>> {
    let p = CoulombParams::new(ell, eta)?;
    let (small, large) = ML_TERMS;
    let all = mittag_leffler_zeros(&p, large)?;
    let sub: Vec<f64> = all[large - small..large + small].to_vec();
    xs.iter()
        .map(|&x| {
            let a = mittag_leffler_with(&p, x, &sub)?;
            let b = mittag_leffler_with(&p, x, &all)?;
            Ok([a.r1, b.r1, a.r2, b.r2])
        })
        .collect()
}

/// Doubling the number of zeros in the expansions from 100 to 200 per
/// half-line decreases both residuals.
pub fn check_mittag_leffler(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("mittag-leffler-decreasing", grid.describe());
    let mut i = 0;
    while i < ML_POINTS.len() {
        let (ell, eta, _) = ML_POINTS[i];
        let xs: Vec<f64> = ML_POINTS.iter().filter(|q| q.0 == ell && q.1 == eta).map(|q| q.2).collect();
        match mittag_leffler_pair(ell, eta, &xs) {
            Ok(v) => {
                for (x, [a1, b1, a2, b2]) in xs.iter().zip(v) {
                    r.observe((a1 - b1) / a1, 1e-13, ell, eta, *x);
                    r.observe((a2 - b2) / a2, 1e-13, ell, eta, *x);
                }
            }
            Err(e) => r.fail(format!("{e}"), ell, eta, f64::NAN),
        }
        i += xs.len();
    }
    r.finish()
}
