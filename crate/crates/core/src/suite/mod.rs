//! Executable checks of the bounds, identities, interlacing and monotonicity
//! properties over parameter grids. Each check returns a `CheckReport`.

mod bounds;
mod common_zero;
mod identities;
mod interlace;
mod monotone;
mod poly;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::CoulombParams;
use crate::report::{CheckReport, Status};
use crate::special::{Domain, DEFAULT_MAX_ABS_X};
use crate::zeros::{Target, ZeroFinder, SCAN_EPSILON};

pub use bounds::{
    check_bessel_bound, check_ell_minus_one_bound, check_f_zero_lower_bound, check_first_fprime_zero_first,
    check_fprime_zero_lower_bound, check_laguerre, check_laguerre_sandwich, check_negative_axis_bound,
    check_reversed_bounds, check_sandwich_asymptotics, check_upper_bounds,
};
pub use common_zero::{
    check_candidate_not_a_zero, check_ell_star, check_interlace_with_candidate, check_skip_two_relation,
    check_skip_two_wronskian, skip_two_relation_residual, skip_two_wronskian_sides, SkipTwoWronskian,
};
pub use identities::{check_adjacent_wronskian_sign, check_ode_residual, check_recurrence_residuals};
pub use interlace::{
    check_derivative_zero_interlace, check_dini_zero_interlace, check_interlace_below_three_halves, check_separation,
    check_uv_derivative_identities, check_uv_wronskian,
};
pub use monotone::{check_ell_chain, check_monotone_ell, check_monotone_eta, check_negative_zero_monotone_eta};
pub use poly::{
    check_dini_polynomial_zeros, check_explicit_form, check_jacobi_chain, check_jacobi_matches_sign_changes,
    check_mittag_leffler, check_pade_decreasing, check_pade_regression, check_polynomial_wronskian, PADE_POINTS,
    PADE_REGRESSION_BOUND_DINI, PADE_REGRESSION_BOUND_R,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Log,
    Lin,
}

/// Abscissa grid on the positive half-line; checks mirror it where the
/// claim covers negative x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

/// Parameter grid: every (ℓ, η) pair combined with every abscissa. Checks
/// drop the pairs outside their hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub ell: Vec<f64>,
    pub eta: Vec<f64>,
    pub x: XGrid,
}

/// Largest |x| a grid file may request.
pub const MAX_GRID_X: f64 = 1000.0;
const MAX_GRID_POINTS: usize = 100_000;

impl Default for Grid {
    fn default() -> Self {
        Self {
            ell: vec![-1.7, -1.4, -0.6, -1.0 / 3.0, 0.0, 0.2, 1.0, 2.5],
            eta: vec![-2.0, -1.0 / 3.0, 1.0 / 3.0, 0.5, 3.0],
            x: XGrid { min: 1e-3, max: DEFAULT_MAX_ABS_X, points: 600, spacing: Spacing::Log },
        }
    }
}

impl Grid {
    pub fn from_json(s: &str) -> Result<Self> {
        let g: Grid = serde_json::from_str(s).map_err(|e| Error::Parameter(format!("grid file: {e}")))?;
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Parameter(format!("grid file: {m}")));
        if self.ell.is_empty() || self.eta.is_empty() {
            return bad("ell and eta lists must be non-empty".into());
        }
        if self.ell.iter().chain(&self.eta).any(|v| !v.is_finite()) {
            return bad("ell and eta values must be finite".into());
        }
        let x = &self.x;
        if !(x.min > 0.0 && x.min <= x.max && x.max <= MAX_GRID_X) {
            return bad(format!("need 0 < x.min <= x.max <= {MAX_GRID_X}"));
        }
        if x.points == 0 || x.points > MAX_GRID_POINTS {
            return bad(format!("x.points must be in 1..={MAX_GRID_POINTS}"));
        }
        Ok(())
    }

    /// Positive abscissae, ascending.
    pub fn xs(&self) -> Vec<f64> {
        let XGrid { min, max, points, spacing } = self.x;
        if points == 1 {
            return vec![max];
        }
        let t = |i: usize| i as f64 / (points - 1) as f64;
        (0..points)
            .map(|i| {
                if i == points - 1 {
                    max
                } else {
                    match spacing {
                        Spacing::Log => (min.ln() + (max.ln() - min.ln()) * t(i)).exp(),
                        Spacing::Lin => min + (max - min) * t(i),
                    }
                }
            })
            .collect()
    }

    /// Abscissae with their negatives, ascending.
    pub fn xs_mirrored(&self) -> Vec<f64> {
        let pos = self.xs();
        pos.iter().rev().map(|x| -x).chain(pos.iter().copied()).collect()
    }

    /// Evaluation window covering the grid.
    pub fn domain(&self) -> Domain {
        Domain { max_abs_x: self.x.max.max(DEFAULT_MAX_ABS_X) }
    }

    /// All (ℓ, η) pairs satisfying `keep`.
    pub fn params(&self, keep: impl Fn(&CoulombParams) -> bool) -> Vec<CoulombParams> {
        let mut out = Vec::new();
        for &l in &self.ell {
            for &e in &self.eta {
                if let Ok(p) = CoulombParams::new(l, e) {
                    if keep(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        let x = &self.x;
        format!("ell={:?} eta={:?} x={} pts {:?} on [{}, {}]", self.ell, self.eta, x.points, x.spacing, x.min, x.max)
    }
}

/// ℓ > −3/2, ℓ ≠ −1, away from the poles of Γ(2ℓ+2).
pub(crate) fn in_family(p: &CoulombParams) -> bool {
    p.ell() > -1.5 && p.ell() != -1.0 && p.is_regular()
}

/// First `count` positive zeros, scanned from the origin so that no lower
/// bound is assumed.
pub(crate) fn zeros_from_origin(p: &CoulombParams, target: Target, count: usize, domain: Domain) -> Result<Vec<f64>> {
    let set = ZeroFinder::new(p, target, domain)?.starting_at(SCAN_EPSILON).zeros(count)?;
    Ok(set.zeros)
}

/// Named groups of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Laguerre,
    Bounds,
    Interlace,
    Monotone,
    Poly,
    CommonZero,
    Identities,
}

impl Suite {
    pub const NAMES: [&'static str; 8] =
        ["all", "laguerre", "bounds", "interlace", "monotone", "poly", "common-zero", "identities"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "laguerre" => Suite::Laguerre,
            "bounds" => Suite::Bounds,
            "interlace" => Suite::Interlace,
            "monotone" => Suite::Monotone,
            "poly" => Suite::Poly,
            "common-zero" => Suite::CommonZero,
            "identities" => Suite::Identities,
            _ => return Err(Error::Parameter(format!("unknown suite {s:?}; expected one of {:?}", Suite::NAMES))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::All,
            Suite::Laguerre,
            Suite::Bounds,
            Suite::Interlace,
            Suite::Monotone,
            Suite::Poly,
            Suite::CommonZero,
            Suite::Identities,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

type Check = fn(&Grid) -> CheckReport;

fn members(suite: Suite) -> Vec<Check> {
    let laguerre: Vec<Check> = vec![check_laguerre];
    let bounds: Vec<Check> = vec![
        check_laguerre_sandwich,
        check_sandwich_asymptotics,
        check_upper_bounds,
        check_reversed_bounds,
        check_fprime_zero_lower_bound,
        check_f_zero_lower_bound,
        check_first_fprime_zero_first,
        check_bessel_bound,
        check_ell_minus_one_bound,
        check_negative_axis_bound,
    ];
    let interlace: Vec<Check> = vec![
        check_separation,
        check_interlace_below_three_halves,
        check_uv_wronskian,
        check_uv_derivative_identities,
        check_dini_zero_interlace,
        check_derivative_zero_interlace,
    ];
    let monotone: Vec<Check> =
        vec![check_monotone_ell, check_monotone_eta, check_negative_zero_monotone_eta, check_ell_chain];
    let poly: Vec<Check> = vec![
        check_explicit_form,
        check_jacobi_chain,
        check_jacobi_matches_sign_changes,
        check_dini_polynomial_zeros,
        check_pade_decreasing,
        check_pade_regression,
        check_polynomial_wronskian,
        check_mittag_leffler,
    ];
    let common: Vec<Check> = vec![
        check_skip_two_relation,
        check_skip_two_wronskian,
        check_interlace_with_candidate,
        check_candidate_not_a_zero,
        check_ell_star,
    ];
    let identities: Vec<Check> = vec![
        check_ode_residual,
        check_recurrence_residuals,
        check_skip_two_relation,
        check_skip_two_wronskian,
        check_polynomial_wronskian,
        check_uv_wronskian,
        check_adjacent_wronskian_sign,
    ];
    match suite {
        Suite::Laguerre => laguerre,
        Suite::Bounds => bounds,
        Suite::Interlace => interlace,
        Suite::Monotone => monotone,
        Suite::Poly => poly,
        Suite::CommonZero => common,
        Suite::Identities => identities,
        Suite::All => {
            let mut all: Vec<Check> = Vec::new();
            for group in [laguerre, bounds, interlace, monotone, poly, common, identities] {
                for c in group {
                    if !all.iter().any(|&d| d as usize == c as usize) {
                        all.push(c);
                    }
                }
            }
            all
        }
    }
}

/// Runs every check of the suite; reports are sorted by claim id.
pub fn run_suite(suite: Suite, grid: &Grid) -> Vec<CheckReport> {
    let mut reports: Vec<CheckReport> = members(suite).into_iter().map(|c| c(grid)).collect();
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    reports
}

/// Overall verdict of a set of reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AllPassed,
    InconclusiveOnly,
    Violation,
}

pub fn verdict(reports: &[CheckReport]) -> Verdict {
    if reports.iter().any(|r| r.status == Status::Violation) {
        Verdict::Violation
    } else if reports.iter().any(|r| !r.passed) {
        Verdict::InconclusiveOnly
    } else {
        Verdict::AllPassed
    }
}
