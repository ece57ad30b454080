//! Residuals of the defining ODE and of the ladder relations, and the sign
//! of the adjacent-order Wronskian.

use super::{in_family, Grid};
use crate::params::CoulombParams;
use crate::report::{CheckReport, ReportBuilder};
use crate::special::{recurrence_residuals, residual_with, Phi, Varphi};

const RESIDUAL_TOL: f64 = 1e-8;

/// The Coulomb ODE (for x > 0) and the equation for φ (for x < 0) hold to 1e−8.
pub fn check_ode_residual(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("ode-residual", grid.describe(), RESIDUAL_TOL);
    let domain = grid.domain();
    for p in grid.params(|p| p.is_regular()) {
        let phi = match Phi::new(&p, domain) {
            Ok(v) => v,
            Err(e) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        for &x in &grid.xs_mirrored() {
            match residual_with(&phi, x) {
                Ok(res) => r.observe(-res, 0.0, p.ell(), p.eta(), x),
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}

/// The raising, lowering and three-term relations in ℓ hold to 1e−8 for
/// ℓ > −1/2, ℓ ≠ 0.
pub fn check_recurrence_residuals(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("recurrence-residuals", grid.describe(), RESIDUAL_TOL);
    let keep = |p: &CoulombParams| p.ell() > -0.5 && p.ell() != 0.0 && p.is_regular();
    for p in grid.params(keep) {
        for &x in &grid.xs() {
            match recurrence_residuals(&p, x) {
                Ok(v) => r.observe(-v.r1_down.max(v.r1_up).max(v.r2), 0.0, p.ell(), p.eta(), x),
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}

/// (ℓ+1)·W[varphi_ℓ, x·varphi_{ℓ+1}] > 0 on the real line for ℓ > −3/2,
/// ℓ ≠ −1, η ≠ 0, relative to varphi_ℓ² + x²varphi_ℓ'² + x²varphi_{ℓ+1}².
pub fn check_adjacent_wronskian_sign(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("adjacent-wronskian-sign", grid.describe());
    let domain = grid.domain();
    for p in grid.params(|p| in_family(p) && p.eta() != 0.0) {
        let l1 = p.ell() + 1.0;
        let pair = Varphi::new(&p, domain).and_then(|a| Ok((a, Varphi::new(&p.shifted(1.0)?, domain)?)));
        let (a, b) = match pair {
            Ok(v) => v,
            Err(e) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        for &x in &grid.xs_mirrored() {
            match a.jet(x).and_then(|ja| Ok((ja, b.jet(x)?))) {
                Ok((ja, jb)) => {
                    let w = ja.f * (jb.f + x * jb.df) - x * ja.df * jb.f;
                    let scale = ja.f * ja.f + x * x * (ja.df * ja.df + jb.f * jb.f + jb.df * jb.df);
                    r.observe(l1.signum() * w / scale, 8.0 * f64::EPSILON, p.ell(), p.eta(), x);
                }
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}
