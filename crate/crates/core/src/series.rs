//! Power series of φ_{ℓ,η} about the origin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::CoulombParams;
use crate::sum::CompensatedSum;

/// Relative size of the last two retained terms at which summation stops.
pub const TAIL_REL_TOL: f64 = 1e-16;

/// Truncated Maclaurin coefficients a_0..a_K of φ_{ℓ,η}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesExpansion {
    pub params: CoulombParams,
    pub coeffs: Vec<f64>,
    /// Truncation order K.
    pub order: usize,
    /// Largest |x| at which the last two terms are below `TAIL_REL_TOL`
    /// times the largest retained term.
    pub radius_hint: f64,
}

/// Value and first two derivatives of a function at one point, each with
/// an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
    pub err_f: f64,
    pub err_df: f64,
    pub err_d2f: f64,
    pub terms: usize,
}

pub(crate) fn check_series_params(p: &CoulombParams) -> Result<()> {
    if p.ell() == -1.0 && p.eta() != 0.0 {
        return Err(Error::Parameter(format!(
            "phi is undefined at ell = -1 with eta = {} (a_1 = eta/(ell+1))",
            p.eta()
        )));
    }
    p.require_regular("phi")
}

/// Next coefficient from k(k+2ℓ+1)a_k = 2η a_{k−1} − a_{k−2}.
#[inline]
fn next_coeff(ell: f64, eta: f64, k: usize, a1: f64, a2: f64) -> f64 {
    let kf = k as f64;
    (2.0 * eta * a1 - a2) / (kf * (kf + 2.0 * ell + 1.0))
}

/// Coefficients a_0..a_K of φ_{ℓ,η}(x) = Σ a_k x^k.
pub fn phi_series(p: &CoulombParams, order: usize) -> Result<SeriesExpansion> {
    check_series_params(p)?;
    if order < 2 {
        return Err(Error::Parameter(format!("series order must be >= 2, got {order}")));
    }
    let (ell, eta) = (p.ell(), p.eta());
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(1.0);
    coeffs.push(eta / (ell + 1.0));
    for k in 2..=order {
        let a = next_coeff(ell, eta, k, coeffs[k - 1], coeffs[k - 2]);
        coeffs.push(a);
    }
    let radius_hint = radius_hint(&coeffs);
    Ok(SeriesExpansion { params: *p, coeffs, order, radius_hint })
}

fn radius_hint(coeffs: &[f64]) -> f64 {
    let k = coeffs.len() - 1;
    let ok = |r: f64| {
        let tail = coeffs[k].abs() * r.powi(k as i32) + coeffs[k - 1].abs() * r.powi(k as i32 - 1);
        let max_term = coeffs.iter().enumerate().map(|(j, a)| a.abs() * r.powi(j as i32)).fold(0.0, f64::max);
        tail <= TAIL_REL_TOL * max_term
    };
    if !ok(1e-3) {
        return 0.0;
    }
    let (mut lo, mut hi) = (1e-3, 1e-3);
    while ok(hi) && hi < 1e6 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

impl SeriesExpansion {
    /// Σ a_k x^k with compensated accumulation, no tail estimate.
    pub fn eval(&self, x: f64) -> f64 {
        let mut s = CompensatedSum::new();
        let mut pw = 1.0;
        for &a in &self.coeffs {
            s.add(a * pw);
            pw *= x;
        }
        s.value()
    }

    /// Residual of the defining recurrence at index k, relative to the
    /// magnitude of its terms.
    pub fn recurrence_residual(&self, k: usize) -> f64 {
        let (ell, eta) = (self.params.ell(), self.params.eta());
        let kf = k as f64;
        let a = &self.coeffs;
        let t1 = kf * (kf + 2.0 * ell + 1.0) * a[k];
        let t2 = 2.0 * eta * a[k - 1];
        let t3 = a[k - 2];
        let scale = t1.abs().max(t2.abs()).max(t3.abs());
        if scale == 0.0 {
            0.0
        } else {
            (t1 - t2 + t3).abs() / scale
        }
    }
}

/// φ, φ', φ'' at x from the Maclaurin series, generating coefficients until
/// K ≥ 2|x| + 30 and the last two terms fall below `TAIL_REL_TOL` times the
/// running maximum of the partial sums.
pub(crate) fn series_jet(ell: f64, eta: f64, x: f64) -> Jet {
    let min_order = (2.0 * x.abs()).ceil() as usize + 30;
    let mut s0 = CompensatedSum::new();
    let mut s1 = CompensatedSum::new();
    let mut s2 = CompensatedSum::new();
    // weighted magnitudes for the coefficient-rounding estimate
    let (mut w0, mut w1, mut w2) = (0.0, 0.0, 0.0);
    let (mut a_prev2, mut a_prev) = (1.0f64, eta / (ell + 1.0));
    s0.add(1.0);
    s0.add(a_prev * x);
    s1.add(a_prev);
    w0 += 1.0 + 2.0 * (a_prev * x).abs();
    w1 += 2.0 * a_prev.abs();
    let mut running_max = s0.value().abs().max(1.0);
    // x^(k-2), x^(k-1), x^k
    let mut k = 1usize;
    let mut tail = f64::INFINITY;
    let mut tail_deriv = f64::INFINITY;
    while k < 2000 {
        k += 1;
        let a = next_coeff(ell, eta, k, a_prev, a_prev2);
        let kf = k as f64;
        let xk2 = x.powi(k as i32 - 2);
        let t2 = kf * (kf - 1.0) * a * xk2;
        let t1 = kf * a * xk2 * x;
        let t0 = a * xk2 * x * x;
        s0.add(t0);
        s1.add(t1);
        s2.add(t2);
        w0 += (kf + 2.0) * t0.abs();
        w1 += (kf + 2.0) * t1.abs();
        w2 += (kf + 2.0) * t2.abs();
        running_max = running_max.max(s0.value().abs());
        let prev_t0 = a_prev * x.powi(k as i32 - 1);
        tail = t0.abs() + prev_t0.abs();
        tail_deriv = t2.abs() + t1.abs();
        a_prev2 = a_prev;
        a_prev = a;
        if k >= min_order
            && tail <= TAIL_REL_TOL * running_max
            && tail_deriv <= TAIL_REL_TOL * running_max.max(s2.value().abs()).max(s1.value().abs())
        {
            break;
        }
        if a == 0.0 && a_prev2 == 0.0 {
            tail = 0.0;
            tail_deriv = 0.0;
            break;
        }
    }
    let eps = f64::EPSILON;
    Jet {
        f: s0.value(),
        df: s1.value(),
        d2f: s2.value(),
        err_f: eps * w0 + tail + eps * x.abs() * s1.value().abs(),
        err_df: eps * w1 + tail_deriv + eps * x.abs() * s2.value().abs(),
        err_d2f: eps * w2 + tail_deriv,
        terms: k + 1,
    }
}
