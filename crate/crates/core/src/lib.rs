//! Regular Coulomb wave functions of real order: evaluation, real zeros,
//! the associated orthogonal polynomials, and executable checks of their
//! bounds, interlacing and monotonicity properties.

// `!(a < b)` is used deliberately so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod continuation;
pub mod error;
pub mod gamma;
pub mod ortho;
pub mod params;
pub mod report;
pub mod series;
pub mod special;
pub mod suite;
mod sum;
pub mod zeros;

pub use error::{Error, Result};
pub use ortho::{
    d_poly, dini_limit_residual, mittag_leffler_residual, pade_limit_residual, poly_zeros_d, poly_zeros_r, r_explicit,
    r_poly, recurrence_coeffs, wronskian_r_positivity, MittagLefflerResiduals, Polynomial, Provenance,
    RecurrenceCoeffs,
};
pub use params::{CoulombParams, Regime};
pub use report::{CheckReport, ReportBuilder, Status, WorstPoint};
pub use series::{phi_series, SeriesExpansion};
pub use special::{
    f_derivative, f_eval, gamow_constant, ladder_residuals, laguerre_expression, ode_residual, phi_derivative,
    phi_eval, recurrence_residuals, varphi_derivative, varphi_eval, CoulombF, Domain, EvalResult, Phi,
    RecurrenceResiduals, Varphi,
};
pub use suite::{run_suite, verdict, Grid, Spacing, Suite, Verdict, XGrid};
pub use zeros::{
    common_zero_candidate, find_ell_star, interlace_check, negative_zeros, positive_zeros, refine, scan_brackets,
    trace_zero, zero_lower_bound, Axis, Bracket, EllStar, Pattern, Target, Trajectory, ZeroFinder, ZeroSet,
};
