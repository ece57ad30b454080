//! Laguerre inequality, its two-sided refinement, and the uniform bounds on
//! |F|², |F'|² that follow from it.

use std::f64::consts::PI;

use super::{in_family, zeros_from_origin, Grid};
use crate::params::CoulombParams;
use crate::report::{CheckReport, ReportBuilder};
use crate::special::{gamow_constant, CoulombF, Domain, Phi};
use crate::zeros::{zero_lower_bound, Target};

const EPS: f64 = f64::EPSILON;
/// Zeros of F and F' at which the reversed bounds are checked.
const ZERO_COUNT: usize = 10;
/// Tolerance for non-strict inequalities, relative to the bound.
const NONSTRICT_TOL: f64 = 1e-12;

fn build_f(r: &mut ReportBuilder, p: &CoulombParams, domain: Domain) -> Option<CoulombF> {
    match CoulombF::new(p, domain) {
        Ok(f) => Some(f),
        Err(e) => {
            r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
            None
        }
    }
}

/// (F, F') with absolute error estimates.
fn f_pair(f: &CoulombF, x: f64) -> crate::Result<(f64, f64, f64, f64)> {
    let v = f.value(x)?;
    let d = f.derivative(x)?;
    Ok((v.value, d.value, v.abs_err_bound, d.abs_err_bound))
}

/// (φ')² − φφ'' ≥ 0 on the whole real line, relative to max(1, φ² + φ'²).
pub fn check_laguerre(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("laguerre-nonnegative", grid.describe(), NONSTRICT_TOL);
    let domain = grid.domain();
    let xs = grid.xs_mirrored();
    for p in grid.params(in_family) {
        let phi = match Phi::new(&p, domain) {
            Ok(v) => v,
            Err(e) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        for &x in &xs {
            match phi.jet(x) {
                Ok(j) => {
                    let l = j.df * j.df - j.f * j.d2f;
                    let err = 2.0 * j.df.abs() * j.err_df + j.f.abs() * j.err_d2f + j.d2f.abs() * j.err_f;
                    let scale = (j.f * j.f + j.df * j.df).max(1.0);
                    r.observe(l / scale, err / scale, p.ell(), p.eta(), x);
                }
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}

/// f = C²x^{2ℓ+3}·((φ')² − φφ'') written through F and F', with its error.
fn scaled_laguerre(p: &CoulombParams, x: f64, f: f64, df: f64, ef: f64, edf: f64) -> (f64, f64) {
    let l1 = p.ell() + 1.0;
    let w = x - 2.0 * p.eta() - l1 * l1 / x;
    let v = w * f * f + x * df * df;
    let err = 2.0 * w.abs() * f.abs() * ef + 2.0 * x * df.abs() * edf + 4.0 * EPS * (w.abs() * f * f + x * df * df);
    (v, err)
}

/// x − η − s < C²x^{2ℓ+3}·L[φ](x) < x − η + s for x > 0, s = √((ℓ+1)²+η²).
pub fn check_laguerre_sandwich(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("laguerre-sandwich", grid.describe());
    let domain = grid.domain();
    for p in grid.params(in_family) {
        let Some(f) = build_f(&mut r, &p, domain) else {
            continue;
        };
        let s = p.rho_norm();
        for &x in &grid.xs() {
            match f_pair(&f, x) {
                Ok((v, d, ev, ed)) => {
                    let (lv, err) = scaled_laguerre(&p, x, v, d, ev, ed);
                    let lo = x - p.eta() - s;
                    let hi = x - p.eta() + s;
                    let scale = x.max(1.0);
                    r.observe((lv - lo).min(hi - lv) / scale, err / scale, p.ell(), p.eta(), x);
                }
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}

/// Abscissa at which the asymptotic ratio is sampled.
pub const ASYMPTOTIC_X: f64 = 45.0;

/// The ratio of C²x^{2ℓ+3}·L[φ] to its upper bound lies in [1/2, 3/2] at x = 45.
pub fn check_sandwich_asymptotics(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("laguerre-sandwich-ratio-at-45", grid.describe(), 0.0);
    let domain = grid.domain();
    for p in grid.params(in_family) {
        let Some(f) = build_f(&mut r, &p, domain) else {
            continue;
        };
        let x = ASYMPTOTIC_X;
        match f_pair(&f, x) {
            Ok((v, d, ev, ed)) => {
                let (lv, err) = scaled_laguerre(&p, x, v, d, ev, ed);
                let g = x - p.eta() + p.rho_norm();
                let ratio = lv / g;
                r.observe((ratio - 0.5).min(1.5 - ratio), err / g, p.ell(), p.eta(), x);
            }
            Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
        }
    }
    r.finish()
}

/// |F|² < x/(x − η − s) and |F'|² < 1 + (s − η)/x for x > η + s.
pub fn check_upper_bounds(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("f-and-fprime-squared-upper-bounds", grid.describe());
    let domain = grid.domain();
    for p in grid.params(in_family) {
        let Some(f) = build_f(&mut r, &p, domain) else {
            continue;
        };
        let s = p.rho_norm();
        let b = zero_lower_bound(&p);
        for &x in grid.xs().iter().filter(|&&x| x > b) {
            match f_pair(&f, x) {
                Ok((v, d, ev, ed)) => {
                    let bf = x / (x - p.eta() - s);
                    let bd = 1.0 + (s - p.eta()) / x;
                    let mf = (bf - v * v) / bf;
                    let md = (bd - d * d) / bd;
                    let (m, e) = if mf < md { (mf, 2.0 * v.abs() * ev / bf) } else { (md, 2.0 * d.abs() * ed / bd) };
                    r.observe(m, e, p.ell(), p.eta(), x);
                }
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}

/// |F(β)|² > β/(β − η + s) at zeros β of F' and |F'(α)|² > 1 − (s + η)/α at
/// zeros α of F, first ten of each.
pub fn check_reversed_bounds(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("reversed-bounds-at-zeros", grid.describe());
    let domain = grid.domain();
    for p in grid.params(in_family) {
        let Some(f) = build_f(&mut r, &p, domain) else {
            continue;
        };
        let s = p.rho_norm();
        let (alphas, betas) = match (
            zeros_from_origin(&p, Target::Varphi, ZERO_COUNT, domain),
            zeros_from_origin(&p, Target::FPrime, ZERO_COUNT, domain),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        if alphas.len() < ZERO_COUNT || betas.len() < ZERO_COUNT {
            r.note(format!("ell={} eta={}: fewer than {ZERO_COUNT} zeros in the window", p.ell(), p.eta()));
        }
        for &beta in &betas {
            match f.value(beta) {
                Ok(v) => {
                    let bound = beta / (beta - p.eta() + s);
                    r.observe(
                        (v.value * v.value - bound) / bound,
                        2.0 * v.value.abs() * v.abs_err_bound / bound,
                        p.ell(),
                        p.eta(),
                        beta,
                    );
                }
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), beta),
            }
        }
        for &alpha in &alphas {
            match f.derivative(alpha) {
                Ok(d) => {
                    let bound = 1.0 - (s + p.eta()) / alpha;
                    let scale = bound.abs().max(1.0);
                    r.observe(
                        (d.value * d.value - bound) / scale,
                        2.0 * d.value.abs() * d.abs_err_bound / scale,
                        p.ell(),
                        p.eta(),
                        alpha,
                    );
                }
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), alpha),
            }
        }
    }
    r.finish()
}

fn zero_bound_check(grid: &Grid, claim: &str, target: Target, keep: impl Fn(&CoulombParams) -> bool) -> CheckReport {
    let mut r = ReportBuilder::strict(claim, grid.describe());
    let domain = grid.domain();
    for p in grid.params(|p| in_family(p) && keep(p)) {
        let b = zero_lower_bound(&p);
        match zeros_from_origin(&p, target, ZERO_COUNT, domain) {
            Ok(z) => {
                for &x in &z {
                    r.observe((x - b) / b.max(1.0), 1e-11, p.ell(), p.eta(), x);
                }
            }
            Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN),
        }
    }
    r.finish()
}

/// Positive zeros of F' exceed η + √(η² + (ℓ+1)²).
pub fn check_fprime_zero_lower_bound(grid: &Grid) -> CheckReport {
    zero_bound_check(grid, "fprime-zero-lower-bound", Target::FPrime, |_| true)
}

/// For ℓ > −1, positive zeros of F exceed η + √(η² + (ℓ+1)²).
pub fn check_f_zero_lower_bound(grid: &Grid) -> CheckReport {
    zero_bound_check(grid, "f-zero-lower-bound", Target::Varphi, |p| p.ell() > -1.0 && p.eta() != 0.0)
}

/// For ℓ > −1 the smallest positive zero of F' precedes that of F.
pub fn check_first_fprime_zero_first(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("first-fprime-zero-before-first-f-zero", grid.describe());
    let domain = grid.domain();
    for p in grid.params(|p| in_family(p) && p.ell() > -1.0 && p.eta() != 0.0) {
        match (zeros_from_origin(&p, Target::Varphi, 1, domain), zeros_from_origin(&p, Target::FPrime, 1, domain)) {
            (Ok(a), Ok(b)) if !a.is_empty() && !b.is_empty() => {
                r.observe((a[0] - b[0]) / a[0].max(1.0), 1e-11, p.ell(), p.eta(), b[0]);
            }
            (Ok(_), Ok(_)) => r.note(format!("ell={} eta={}: no zero in the window", p.ell(), p.eta())),
            (Err(e), _) | (_, Err(e)) => r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN),
        }
    }
    r.finish()
}

/// |J_ν(x)|² ≤ 2/(π(x − |ν − 1/2|)) for ν ∈ {1/2, 3/2, 5/2}, through
/// J_ν(x)² = 2F_{ν−1/2,0}(x)²/(πx).
pub fn check_bessel_bound(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("bessel-squared-bound", grid.describe(), NONSTRICT_TOL);
    let domain = grid.domain();
    for ell in [0.0, 1.0, 2.0] {
        let p = CoulombParams::new(ell, 0.0).unwrap();
        let Some(f) = build_f(&mut r, &p, domain) else {
            continue;
        };
        let nu = ell + 0.5;
        let shift = (nu - 0.5f64).abs();
        for &x in grid.xs().iter().filter(|&&x| x > shift) {
            match f.value(x) {
                Ok(v) => {
                    let j2 = 2.0 * v.value * v.value / (PI * x);
                    let bound = 2.0 / (PI * (x - shift));
                    let err = 4.0 * v.value.abs() * v.abs_err_bound / (PI * x) + 4.0 * EPS * j2;
                    r.observe((bound - j2) / bound, err / bound, ell, 0.0, x);
                }
                Err(e) => r.fail(format!("{e}"), ell, 0.0, x),
            }
        }
    }
    r.finish()
}

/// At ℓ = −1 the regular solution is F_{−1,η} = sign(η)·F_{0,η}, so the ℓ = 0
/// bound |F_{−1,η}|² < x/(x − η − √(1+η²)) holds for x > η + √(1+η²).
pub fn check_ell_minus_one_bound(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("ell-minus-one-squared-bound", grid.describe());
    let domain = grid.domain();
    let etas: Vec<f64> = grid.eta.iter().copied().filter(|&e| e != 0.0).collect();
    for eta in etas {
        let p0 = CoulombParams::new(0.0, eta).unwrap();
        let Some(f) = build_f(&mut r, &p0, domain) else {
            continue;
        };
        let b = zero_lower_bound(&p0);
        for &x in grid.xs().iter().filter(|&&x| x > b) {
            match f.value(x) {
                Ok(v) => {
                    let bound = x / (x - b);
                    r.observe(
                        (bound - v.value * v.value) / bound,
                        2.0 * v.value.abs() * v.abs_err_bound / bound,
                        -1.0,
                        eta,
                        x,
                    );
                }
                Err(e) => r.fail(format!("{e}"), -1.0, eta, x),
            }
        }
    }
    r.finish()
}

/// |C x^{ℓ+1} φ_{ℓ,η}(−x)|² < e^{−2πη}·x/(x + η − s) for x > s − η, with φ
/// evaluated on the negative axis.
pub fn check_negative_axis_bound(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("negative-axis-squared-bound", grid.describe());
    let domain = grid.domain();
    for p in grid.params(in_family) {
        let (phi, c) = match (Phi::new(&p, domain), gamow_constant(&p)) {
            (Ok(phi), Ok(c)) => (phi, c),
            (Err(e), _) | (_, Err(e)) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        let s = p.rho_norm();
        let start = s - p.eta();
        let damp = (-2.0 * PI * p.eta()).exp();
        for &x in grid.xs().iter().filter(|&&x| x > start) {
            match phi.value(-x) {
                Ok(v) => {
                    let amp = c * x.powf(p.ell() + 1.0);
                    let f = amp * v.value;
                    let bound = damp * x / (x + p.eta() - s);
                    let err = 2.0 * f.abs() * amp.abs() * v.abs_err_bound + 8.0 * EPS * f * f;
                    r.observe((bound - f * f) / bound, err / bound, p.ell(), p.eta(), -x);
                }
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), -x),
            }
        }
    }
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn small_grid(ell: Vec<f64>, eta: Vec<f64>) -> Grid {
        Grid {
            ell,
            eta,
            x: super::super::XGrid { min: 0.05, max: 50.0, points: 120, spacing: super::super::Spacing::Log },
        }
    }

    #[test]
    fn sine_case_bounds() {
        let g = small_grid(vec![0.0], vec![0.0]);
        assert!(check_laguerre(&g).passed);
        assert!(check_laguerre_sandwich(&g).passed);
        assert!(check_upper_bounds(&g).passed);
        let r = check_reversed_bounds(&g);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn reversed_bound_at_pi_by_hand() {
        // F_{0,0} = sin: cos²π = 1 > π/(π + 1)
        let p = CoulombParams::new(0.0, 0.0).unwrap();
        let f = CoulombF::new(&p, Domain::default()).unwrap();
        let d = f.derivative(PI).unwrap().value;
        assert!((d * d - 1.0).abs() < 1e-14);
        assert!(d * d > PI / (PI + 1.0));
    }

    #[test]
    fn single_laguerre_point() {
        let g = Grid {
            ell: vec![-1.4],
            eta: vec![3.0],
            x: super::super::XGrid { min: 7.0, max: 7.0, points: 1, spacing: super::super::Spacing::Lin },
        };
        let r = check_laguerre(&g);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.points, 2);
    }

    #[test]
    fn bessel_bound_is_tight_for_half_order() {
        let r = check_bessel_bound(&small_grid(vec![0.0], vec![0.0]));
        assert!(r.passed, "{r:?}");
        assert!(r.worst_margin < 1e-2, "{r:?}");
        assert_ne!(r.status, Status::Violation);
    }
}
