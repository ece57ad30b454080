//! Zero interlacing of φ_ℓ against xφ_{ℓ+1}, of φ against xφ' + Hφ, and the
//! positive Wronskian behind them.

use super::{in_family, Grid};
use crate::params::CoulombParams;
use crate::report::{CheckReport, ReportBuilder};
use crate::special::{ladder_residuals, Domain, Varphi};
use crate::zeros::{
    alternation_margin, interlace_check, negative_zeros_in, positive_zeros_in, real_zeros, Pattern, Target, ZeroSet,
};

const ZERO_COUNT: usize = 10;
/// Half-width of the window in which all real zeros are compared.
const REAL_WINDOW: f64 = 30.0;
const DINI_H: [f64; 3] = [0.5, 1.0, 3.0];
const IDENTITY_TOL: f64 = 1e-9;

fn trimmed(mut a: ZeroSet, mut b: ZeroSet) -> (ZeroSet, ZeroSet) {
    let n = a.len().min(b.len());
    a.zeros.truncate(n);
    b.zeros.truncate(n);
    (a, b)
}

/// Compares the first zeros of varphi_ℓ and varphi_{ℓ+1} on both half-lines.
fn adjacent_pattern(r: &mut ReportBuilder, p: &CoulombParams, pattern: Pattern, domain: Domain) {
    let q = match p.shifted(1.0) {
        Ok(q) => q,
        Err(e) => return r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN),
    };
    type Finder = fn(&CoulombParams, Target, usize, Domain) -> crate::Result<ZeroSet>;
    for (side, finder) in [("positive", positive_zeros_in as Finder), ("negative", negative_zeros_in as Finder)] {
        let sets = finder(p, Target::Varphi, ZERO_COUNT, domain)
            .and_then(|a| Ok((a, finder(&q, Target::Varphi, ZERO_COUNT, domain)?)));
        let (a, b) = match sets {
            Ok((mut a, mut b)) => {
                if side == "negative" {
                    // ordered by distance from the origin
                    a.zeros.reverse();
                    b.zeros.reverse();
                }
                trimmed(a, b)
            }
            Err(e) => {
                r.fail(format!("{side}: {e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        if a.len() < ZERO_COUNT {
            r.note(format!("ell={} eta={}: {} {side} zeros in the window", p.ell(), p.eta(), a.len()));
        }
        match interlace_check(&a, &b, pattern) {
            Ok(c) => {
                if let Some(w) = c.worst_point {
                    let x = if side == "negative" { -w.x } else { w.x };
                    r.observe(c.worst_margin, 4.0 * f64::EPSILON, p.ell(), p.eta(), x);
                }
            }
            Err(e) => r.fail(format!("{side}: {e}"), p.ell(), p.eta(), f64::NAN),
        }
    }
}

/// Configurations checked in addition to the grid by the adjacent-order checks.
pub const SEPARATION_CONFIGS: [(f64, f64); 4] = [(-1.0 / 3.0, -1.0 / 3.0), (0.0, 1.0), (2.0, -2.0), (2.0, 0.0)];
pub const LOW_ORDER_CONFIGS: [(f64, f64); 2] = [(-5.0 / 3.0, 1.0 / 3.0), (-1.7, 0.5)];

fn with_configs(grid: &Grid, configs: &[(f64, f64)], keep: impl Fn(&CoulombParams) -> bool) -> Vec<CoulombParams> {
    let mut ps: Vec<CoulombParams> = configs.iter().filter_map(|&(l, e)| CoulombParams::new(l, e).ok()).collect();
    for p in grid.params(&keep) {
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    ps
}

/// For ℓ > −3/2, ℓ ≠ −1: 0 < ρ_{ℓ,1} < ρ_{ℓ+1,1} < ρ_{ℓ,2} < … on each half-line.
pub fn check_separation(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("separation-adjacent-order", grid.describe());
    let domain = grid.domain();
    let keep = |p: &CoulombParams| in_family(p) && p.eta() != 0.0 && p.shifted(1.0).is_ok_and(|q| q.is_regular());
    for p in with_configs(grid, &SEPARATION_CONFIGS, keep) {
        adjacent_pattern(&mut r, &p, Pattern::AFirst, domain);
    }
    r.finish()
}

/// For ℓ ≤ −3/2, η ≠ 0: 0 < ρ_{ℓ+1,1} < ρ_{ℓ,1} < ρ_{ℓ+1,2} < … on each half-line.
pub fn check_interlace_below_three_halves(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("interlace-below-minus-three-halves", grid.describe());
    let domain = grid.domain();
    let keep = |p: &CoulombParams| {
        p.ell() <= -1.5 && p.eta() != 0.0 && p.is_regular() && p.shifted(1.0).is_ok_and(|q| q.is_regular())
    };
    for p in with_configs(grid, &LOW_ORDER_CONFIGS, keep) {
        adjacent_pattern(&mut r, &p, Pattern::BFirst, domain);
    }
    r.finish()
}

fn uv_pair(p: &CoulombParams) -> bool {
    p.ell() != -1.0 && p.eta() != 0.0 && p.is_regular() && p.shifted(1.0).is_ok_and(|q| q.is_regular())
}

/// (ℓ+1)·x^{−2(ℓ+1)}·W[U_ℓ, V_{ℓ+1}] expanded through varphi, against the
/// positive form (varphi_ℓ² + 4((ℓ+1)²+η²)x²varphi_{ℓ+1}²)/2.
pub(crate) struct UvWronskian {
    pub direct: f64,
    pub positive_form: f64,
    /// Size of the terms entering `direct`.
    pub scale: f64,
}

pub(crate) fn uv_wronskian(a: &Varphi, b: &Varphi, x: f64) -> crate::Result<UvWronskian> {
    let p = a.params();
    let (ell, eta) = (p.ell(), p.eta());
    let l1 = ell + 1.0;
    let ja = a.jet(x)?;
    let jb = b.jet(x)?;
    let t1 = (2.0 * ell + 3.0 + 2.0 * eta * x / l1) * ja.f * jb.f;
    let t2 = x * ja.f * jb.df;
    let t3 = -x * ja.df * jb.f;
    let rho2 = l1 * l1 + eta * eta;
    let positive_form = 0.5 * (ja.f * ja.f + 4.0 * rho2 * x * x * jb.f * jb.f);
    Ok(UvWronskian {
        direct: l1 * (t1 + t2 + t3),
        positive_form,
        scale: l1.abs() * (t1.abs() + t2.abs() + t3.abs()) + positive_form,
    })
}

/// h_{ℓ,η}(x) > 0 for x ≠ 0, from the direct Wronskian expansion.
pub fn check_uv_wronskian(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("uv-wronskian-positive", grid.describe());
    let domain = grid.domain();
    let mut ps = grid.params(uv_pair);
    for &(l, e) in &LOW_ORDER_CONFIGS {
        let p = CoulombParams::new(l, e).unwrap();
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    for p in ps {
        let pair = Varphi::new(&p, domain).and_then(|a| Ok((a, Varphi::new(&p.shifted(1.0)?, domain)?)));
        let (a, b) = match pair {
            Ok(v) => v,
            Err(e) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        for &x in &grid.xs_mirrored() {
            match uv_wronskian(&a, &b, x) {
                Ok(w) => r.observe(w.direct / w.scale, 8.0 * f64::EPSILON, p.ell(), p.eta(), x),
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}

/// U'_ℓ and V'_{ℓ+1} as stated through F_{ℓ+1} and F_ℓ (the raising relation
/// at ℓ and the lowering relation at ℓ+1), plus the expanded Wronskian
/// against its positive form.
pub fn check_uv_derivative_identities(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("uv-derivative-identities", grid.describe(), IDENTITY_TOL);
    let domain = grid.domain();
    for p in grid.params(uv_pair) {
        let q = p.shifted(1.0).unwrap();
        let pair = Varphi::new(&p, domain).and_then(|a| Ok((a, Varphi::new(&q, domain)?)));
        let (a, b) = match pair {
            Ok(v) => v,
            Err(e) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        for &x in &grid.xs_mirrored() {
            match uv_wronskian(&a, &b, x) {
                Ok(w) => r.observe(-(w.direct - w.positive_form).abs() / w.scale, 0.0, p.ell(), p.eta(), x),
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
            if x > 0.0 {
                match ladder_residuals(&p, x).map(|(up, down)| up.max(down)) {
                    Ok(res) => r.observe(-res, 0.0, p.ell(), p.eta(), x),
                    Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
                }
            }
        }
    }
    r.finish()
}

fn alternation(r: &mut ReportBuilder, p: &CoulombParams, a: &[f64], b: &[f64]) {
    if a.len() + b.len() < 2 {
        r.note(format!("ell={} eta={}: fewer than two zeros in [-{REAL_WINDOW}, {REAL_WINDOW}]", p.ell(), p.eta()));
        return;
    }
    let (m, at) = alternation_margin(a, b);
    r.observe(m, 4.0 * f64::EPSILON, p.ell(), p.eta(), at);
}

fn dini_family(p: &CoulombParams) -> bool {
    in_family(p) && p.eta() != 0.0
}

/// For H > 0 the real zeros of xφ and xφ' + Hφ alternate.
pub fn check_dini_zero_interlace(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("dini-zero-interlace", grid.describe());
    for p in grid.params(dini_family) {
        let phi = match real_zeros(&p, Target::Varphi, REAL_WINDOW) {
            Ok(z) => {
                let mut v = z;
                v.push(0.0);
                v.sort_by(f64::total_cmp);
                v
            }
            Err(e) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        for h in DINI_H {
            match real_zeros(&p, Target::Dini(h), REAL_WINDOW) {
                Ok(d) => alternation(&mut r, &p, &phi, &d),
                Err(e) => r.fail(format!("H={h}: {e}"), p.ell(), p.eta(), f64::NAN),
            }
        }
    }
    r.finish()
}

/// The real zeros of φ and φ' alternate.
pub fn check_derivative_zero_interlace(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("derivative-zero-interlace", grid.describe());
    for p in grid.params(dini_family) {
        let z = real_zeros(&p, Target::Varphi, REAL_WINDOW)
            .and_then(|a| Ok((a, real_zeros(&p, Target::VarphiPrime, REAL_WINDOW)?)));
        match z {
            Ok((a, b)) => alternation(&mut r, &p, &a, &b),
            Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN),
        }
    }
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::super::{Spacing, XGrid};
    use super::*;

    fn grid(ell: Vec<f64>, eta: Vec<f64>) -> Grid {
        Grid { ell, eta, x: XGrid { min: 0.01, max: 20.0, points: 60, spacing: Spacing::Log } }
    }

    #[test]
    fn uv_wronskian_matches_positive_form() {
        let p = CoulombParams::new(0.2, 0.5).unwrap();
        let d = Domain::default();
        let a = Varphi::new(&p, d).unwrap();
        let b = Varphi::new(&p.shifted(1.0).unwrap(), d).unwrap();
        for x in [-7.0, -1.0, 0.3, 2.0, 11.0] {
            let w = uv_wronskian(&a, &b, x).unwrap();
            assert!((w.direct - w.positive_form).abs() <= 1e-11 * w.scale, "x={x}");
            assert!(w.direct > 0.0);
        }
    }

    #[test]
    fn small_grid_interlacing() {
        let g = grid(vec![0.2], vec![0.5]);
        for c in [check_separation, check_uv_wronskian, check_uv_derivative_identities, check_derivative_zero_interlace]
        {
            let r = c(&g);
            assert!(r.passed, "{r:?}");
        }
    }
}
