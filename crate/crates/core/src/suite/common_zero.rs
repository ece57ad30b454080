//! φ_ℓ against φ_{ℓ+2}: the skip-two relation, its Wronskian, interlacing
//! with the zeros of x(x − ρ*)φ_{ℓ+2}, and the parameter ℓ* at which ρ* is a
//! common zero.

use serde::{Deserialize, Serialize};

use super::Grid;
use crate::error::Result;
use crate::params::CoulombParams;
use crate::report::{CheckReport, ReportBuilder};
use crate::special::{Domain, Phi};
use crate::zeros::{alternation_margin, common_zero_candidate, find_ell_star, real_zeros, Target, ELL_STAR_WINDOW};

const RELATION_TOL: f64 = 1e-9;
const NONNEGATIVE_TOL: f64 = 1e-12;
/// Configuration with a candidate ρ* = −1.92 that is not a zero of φ_ℓ.
pub const CANDIDATE_CONFIG: (f64, f64) = (-0.4, 0.5);
pub const CANDIDATE_WINDOW: f64 = 15.0;
pub const ELL_STAR_ETA: f64 = 1.0 / 3.0;
pub const ELL_STAR_BRACKET: (f64, f64) = (-0.103, -0.102);
const ELL_STAR_TOL: f64 = 1e-12;
const COMMON_ZERO_TOL: f64 = 1e-8;

fn skip_two_family(p: &CoulombParams) -> bool {
    p.ell() > -1.0 && p.eta() != 0.0 && p.is_regular()
}

struct Triple {
    a: Phi,
    b: Phi,
    c: Phi,
}

impl Triple {
    fn new(p: &CoulombParams, domain: Domain) -> Result<Self> {
        Ok(Self {
            a: Phi::new(p, domain)?,
            b: Phi::new(&p.shifted(1.0)?, domain)?,
            c: Phi::new(&p.shifted(2.0)?, domain)?,
        })
    }
}

fn coefficients(p: &CoulombParams, x: f64) -> (f64, f64, f64) {
    let (ell, eta) = (p.ell(), p.eta());
    let l2 = ell + 2.0;
    let slope = eta / ((ell + 1.0) * l2);
    let c = (l2 * l2 + eta * eta) / (l2 * l2 * (2.0 * ell + 3.0) * (2.0 * ell + 5.0));
    (1.0 + slope * x, slope, c)
}

/// |φ_ℓ − (1 + ηx/((ℓ+1)(ℓ+2)))φ_{ℓ+1} + c·x²φ_{ℓ+2}| relative to the
/// largest term, c = ((ℓ+2)²+η²)/((ℓ+2)²(2ℓ+3)(2ℓ+5)).
pub fn skip_two_relation_residual(p: &CoulombParams, x: f64) -> Result<f64> {
    let t = Triple::new(p, covering(x))?;
    relation_with(&t, p, x)
}

fn relation_with(t: &Triple, p: &CoulombParams, x: f64) -> Result<f64> {
    let (a, _, c) = coefficients(p, x);
    let terms = [t.a.value(x)?.value, -a * t.b.value(x)?.value, c * x * x * t.c.value(x)?.value];
    let scale = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(if scale == 0.0 { 0.0 } else { terms.iter().sum::<f64>().abs() / scale })
}

/// Both sides of W[φ_ℓ, (x/2)Aφ_{ℓ+2}] = (A²/2)·W[φ_{ℓ+1}, xφ_{ℓ+2}] +
/// (c/2)·x²φ_{ℓ+2}², A = 1 + ηx/((ℓ+1)(ℓ+2)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkipTwoWronskian {
    pub direct: f64,
    pub expanded: f64,
    pub scale: f64,
}

pub fn skip_two_wronskian_sides(p: &CoulombParams, x: f64) -> Result<SkipTwoWronskian> {
    let t = Triple::new(p, covering(x))?;
    wronskian_with(&t, p, x)
}

fn wronskian_with(t: &Triple, p: &CoulombParams, x: f64) -> Result<SkipTwoWronskian> {
    let (a, slope, c) = coefficients(p, x);
    let ja = t.a.jet(x)?;
    let jb = t.b.jet(x)?;
    let jc = t.c.jet(x)?;
    let g = 0.5 * x * a * jc.f;
    let dg = 0.5 * a * jc.f + 0.5 * x * slope * jc.f + 0.5 * x * a * jc.df;
    let direct = ja.f * dg - ja.df * g;
    let w1 = jb.f * (jc.f + x * jc.df) - jb.df * x * jc.f;
    let expanded = 0.5 * a * a * w1 + 0.5 * c * x * x * jc.f * jc.f;
    let scale = (ja.f * dg).abs()
        + (ja.df * g).abs()
        + 0.5 * a * a * (jb.f * (jc.f.abs() + (x * jc.df).abs())).abs()
        + 0.5 * a * a * (jb.df * x * jc.f).abs()
        + 0.5 * (c * x * x * jc.f * jc.f).abs();
    Ok(SkipTwoWronskian { direct, expanded, scale })
}

fn covering(x: f64) -> Domain {
    let d = Domain::default();
    Domain { max_abs_x: d.max_abs_x.max(x.abs()) }
}

/// The three-term relation between φ_ℓ, φ_{ℓ+1} and φ_{ℓ+2} holds to 1e−9.
pub fn check_skip_two_relation(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("three-term-relation", grid.describe(), RELATION_TOL);
    let domain = grid.domain();
    for p in grid.params(skip_two_family) {
        let t = match Triple::new(&p, domain) {
            Ok(t) => t,
            Err(e) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        for &x in &grid.xs_mirrored() {
            match relation_with(&t, &p, x) {
                Ok(res) => r.observe(-res, 0.0, p.ell(), p.eta(), x),
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}

/// The Wronskian of φ_ℓ and (x/2)Aφ_{ℓ+2} matches its expansion to 1e−9
/// and is nonnegative on the real line.
pub fn check_skip_two_wronskian(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("skip-two-wronskian", grid.describe(), RELATION_TOL);
    let domain = grid.domain();
    for p in grid.params(skip_two_family) {
        let t = match Triple::new(&p, domain) {
            Ok(t) => t,
            Err(e) => {
                r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN);
                continue;
            }
        };
        for &x in &grid.xs_mirrored() {
            match wronskian_with(&t, &p, x) {
                Ok(w) => {
                    r.observe(-(w.direct - w.expanded).abs() / w.scale, 0.0, p.ell(), p.eta(), x);
                    if w.direct < -NONNEGATIVE_TOL * w.scale {
                        r.fail(format!("negative Wronskian {} at x = {x}", w.direct), p.ell(), p.eta(), x);
                    }
                }
                Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), x),
            }
        }
    }
    r.finish()
}

fn candidate_params(grid: &Grid) -> Vec<CoulombParams> {
    let mut ps = vec![CoulombParams::new(CANDIDATE_CONFIG.0, CANDIDATE_CONFIG.1).unwrap()];
    for p in grid.params(skip_two_family) {
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    ps
}

/// Zeros of φ_ℓ on [−15, 15] with {0, ρ*} ∪ zeros(φ_{ℓ+2}), ascending.
pub fn candidate_sets(p: &CoulombParams) -> Result<(Vec<f64>, Vec<f64>)> {
    let rho = common_zero_candidate(p)?;
    let a = real_zeros(p, Target::Varphi, CANDIDATE_WINDOW)?;
    let mut b = real_zeros(&p.shifted(2.0)?, Target::Varphi, CANDIDATE_WINDOW)?;
    b.push(0.0);
    if rho.abs() <= CANDIDATE_WINDOW {
        b.push(rho);
    }
    b.sort_by(f64::total_cmp);
    Ok((a, b))
}

fn nearest_gap(zeros: &[f64], x: f64) -> f64 {
    zeros.iter().map(|z| (z - x).abs()).fold(f64::INFINITY, f64::min)
}

/// When ρ* is not a zero of φ_ℓ, the zeros of φ_ℓ interlace with those of
/// x(x − ρ*)φ_{ℓ+2}. Pairs where ρ* sits on a zero of φ_ℓ are skipped.
pub fn check_interlace_with_candidate(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("interlace-with-common-zero-candidate", grid.describe());
    for p in candidate_params(grid) {
        match candidate_sets(&p) {
            Ok((a, b)) => {
                let rho = common_zero_candidate(&p).unwrap();
                if nearest_gap(&a, rho) < 1e-6 {
                    r.note(format!("ell={} eta={}: rho* is a zero of phi; skipped", p.ell(), p.eta()));
                    continue;
                }
                let (m, at) = alternation_margin(&a, &b);
                if m.is_finite() {
                    r.observe(m, 4.0 * f64::EPSILON, p.ell(), p.eta(), at);
                }
            }
            Err(e) => r.fail(format!("{e}"), p.ell(), p.eta(), f64::NAN),
        }
    }
    r.finish()
}

/// At (ℓ, η) = (−2/5, 1/2) the candidate is −1.92 and is not a zero of φ_ℓ.
pub fn check_candidate_not_a_zero(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("candidate-not-a-zero", grid.describe());
    let (ell, eta) = CANDIDATE_CONFIG;
    let p = CoulombParams::new(ell, eta).unwrap();
    let rho = common_zero_candidate(&p).unwrap();
    if (rho + 1.92).abs() > 1e-12 {
        r.fail(format!("candidate {rho} differs from -1.92"), ell, eta, rho);
    }
    match real_zeros(&p, Target::Varphi, CANDIDATE_WINDOW) {
        Ok(z) => r.observe(nearest_gap(&z, rho) / rho.abs(), 1e-11, ell, eta, rho),
        Err(e) => r.fail(format!("{e}"), ell, eta, rho),
    }
    r.finish()
}

/// The ℓ* at which ρ* is a zero of φ_ℓ for η = 1/3 is bracketed inside
/// (−0.103, −0.102), and ρ* is then also a zero of φ_{ℓ+2}.
pub fn check_ell_star(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::new("ell-star-bracket", grid.describe(), 0.0);
    let eta = ELL_STAR_ETA;
    match find_ell_star(eta, ELL_STAR_WINDOW, ELL_STAR_TOL) {
        Ok(s) => {
            let (lo, hi) = ELL_STAR_BRACKET;
            r.observe((s.lo - lo).min(hi - s.hi), 0.0, s.ell, eta, s.rho_star);
            let other = CoulombParams::new(s.ell + 2.0, eta)
                .and_then(|q| Phi::new(&q, Domain::default()))
                .and_then(|phi| Ok((phi.value(s.rho_star)?.value, phi.derivative(s.rho_star)?.value)));
            match other {
                Ok((v, d)) => r.observe(COMMON_ZERO_TOL - (v / d).abs(), 0.0, s.ell, eta, s.rho_star),
                Err(e) => r.fail(format!("{e}"), s.ell, eta, s.rho_star),
            }
        }
        Err(e) => r.fail(format!("{e}"), f64::NAN, eta, f64::NAN),
    }
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_at_sample_point() {
        let p = CoulombParams::new(0.0, 1.0).unwrap();
        assert!(skip_two_relation_residual(&p, 3.0).unwrap() < 1e-13);
    }

    #[test]
    fn wronskian_sides_agree() {
        let p = CoulombParams::new(0.3, -0.7).unwrap();
        for x in [-4.0, -0.5, 0.8, 6.0] {
            let w = skip_two_wronskian_sides(&p, x).unwrap();
            assert!((w.direct - w.expanded).abs() < 1e-12 * w.scale, "{x}: {w:?}");
            assert!(w.direct >= 0.0);
        }
    }

    #[test]
    fn candidate_example() {
        let p = CoulombParams::new(-0.4, 0.5).unwrap();
        assert!((common_zero_candidate(&p).unwrap() + 1.92).abs() < 1e-15);
    }
}
