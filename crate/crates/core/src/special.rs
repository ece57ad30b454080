//! Evaluation of φ_{ℓ,η}, varphi_{ℓ,η}, F_{ℓ,η} and derived expressions.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::{Ladder, SERIES_RADIUS};
use crate::error::{Error, Result};
use crate::gamma::{ln_gamma_signed, log_gamma_complex, recip_gamma};
use crate::params::{CoulombParams, Regime};
use crate::series::{check_series_params, series_jet, Jet};

/// Default bound on |x| for evaluation.
pub const DEFAULT_MAX_ABS_X: f64 = 50.0;

/// Evaluation window |x| ≤ max_abs_x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub max_abs_x: f64,
}

impl Default for Domain {
    fn default() -> Self {
        Self { max_abs_x: DEFAULT_MAX_ABS_X }
    }
}

impl Domain {
    pub fn new(max_abs_x: f64) -> Result<Self> {
        if !(max_abs_x.is_finite() && max_abs_x > 0.0) {
            return Err(Error::Parameter(format!("max |x| must be positive and finite, got {max_abs_x}")));
        }
        Ok(Self { max_abs_x })
    }

    pub fn check(&self, x: f64) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::Domain { x, reason: "not finite".into() });
        }
        if x.abs() > self.max_abs_x {
            return Err(Error::Domain { x, reason: format!("|x| exceeds the evaluation limit {}", self.max_abs_x) });
        }
        Ok(())
    }
}

/// A value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_bound: f64,
    pub terms_used: usize,
}

impl EvalResult {
    fn new(value: f64, abs_err_bound: f64, terms_used: usize) -> Self {
        Self { value, abs_err_bound, terms_used }
    }
}

/// Gamow constant 2^ℓ e^{−πη/2} |Γ(ℓ+1+iη)| / Γ(2ℓ+2).
///
/// Carries the sign of Γ(2ℓ+2), so it is negative for ℓ ∈ (−3/2, −1) and
/// other intervals where Γ(2ℓ+2) < 0.
pub fn gamow_constant(p: &CoulombParams) -> Result<f64> {
    let (ln_c, sign) = ln_gamow(p)?;
    Ok(sign * ln_c.exp())
}

/// ln|C| and the sign of C.
pub fn ln_gamow(p: &CoulombParams) -> Result<(f64, f64)> {
    p.require_regular("Gamow constant")?;
    let (ell, eta) = (p.ell(), p.eta());
    let lg = log_gamma_complex(Complex64::new(ell + 1.0, eta))?;
    let (lg2, sign) = ln_gamma_signed(2.0 * ell + 2.0)?;
    Ok((ell * LN_2 - PI * eta / 2.0 + lg.re - lg2, sign))
}

/// φ_{ℓ,η} prepared for repeated evaluation on a fixed domain.
#[derive(Debug, Clone)]
pub struct Phi {
    params: CoulombParams,
    domain: Domain,
    pos: Ladder,
    neg: Ladder,
}

impl Phi {
    pub fn new(p: &CoulombParams, domain: Domain) -> Result<Self> {
        Self::with_reach(p, domain, domain.max_abs_x, domain.max_abs_x)
    }

    /// Builds only as much of the continuation as needed for x ∈ [−neg, pos].
    fn with_reach(p: &CoulombParams, domain: Domain, pos: f64, neg: f64) -> Result<Self> {
        check_series_params(p)?;
        let mut lp = Ladder::new(p.ell(), p.eta());
        lp.extend_to(pos);
        let mut ln = Ladder::new(p.ell(), -p.eta());
        ln.extend_to(neg);
        Ok(Self { params: *p, domain, pos: lp, neg: ln })
    }

    fn for_point(p: &CoulombParams, x: f64) -> Result<Self> {
        let domain = Domain::default();
        domain.check(x)?;
        Self::with_reach(p, domain, x.max(0.0), (-x).max(0.0))
    }

    pub fn params(&self) -> &CoulombParams {
        &self.params
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub(crate) fn jet(&self, x: f64) -> Result<Jet> {
        self.domain.check(x)?;
        Ok(self.jet_unchecked(x))
    }

    fn jet_unchecked(&self, x: f64) -> Jet {
        if x.abs() <= SERIES_RADIUS {
            series_jet(self.params.ell(), self.params.eta(), x)
        } else if x > 0.0 {
            self.pos.jet(x)
        } else {
            // φ_{ℓ,η}(x) = φ_{ℓ,−η}(−x)
            let j = self.neg.jet(-x);
            Jet { df: -j.df, ..j }
        }
    }

    pub fn value(&self, x: f64) -> Result<EvalResult> {
        let j = self.jet(x)?;
        Ok(EvalResult::new(j.f, j.err_f, j.terms))
    }

    pub fn derivative(&self, x: f64) -> Result<EvalResult> {
        let j = self.jet(x)?;
        Ok(EvalResult::new(j.df, j.err_df, j.terms))
    }

    pub fn second_derivative(&self, x: f64) -> Result<EvalResult> {
        let j = self.jet(x)?;
        Ok(EvalResult::new(j.d2f, j.err_d2f, j.terms))
    }

    /// (φ, φ') at x without error bookkeeping.
    pub fn pair(&self, x: f64) -> Result<(f64, f64)> {
        let j = self.jet(x)?;
        Ok((j.f, j.df))
    }
}

/// φ_{ℓ,η}(x) for |x| ≤ 50.
pub fn phi_eval(p: &CoulombParams, x: f64) -> Result<EvalResult> {
    Phi::for_point(p, x)?.value(x)
}

/// φ'_{ℓ,η}(x) for |x| ≤ 50.
pub fn phi_derivative(p: &CoulombParams, x: f64) -> Result<EvalResult> {
    Phi::for_point(p, x)?.derivative(x)
}

/// φ''_{ℓ,η}(x) for |x| ≤ 50.
pub fn phi_second_derivative(p: &CoulombParams, x: f64) -> Result<EvalResult> {
    Phi::for_point(p, x)?.second_derivative(x)
}

/// F_{ℓ,η} = C x^{ℓ+1} φ on the positive half-line.
#[derive(Debug, Clone)]
pub struct CoulombF {
    phi: Phi,
    c: f64,
}

impl CoulombF {
    pub fn new(p: &CoulombParams, domain: Domain) -> Result<Self> {
        let phi = Phi::new(p, domain)?;
        Ok(Self { c: gamow_constant(p)?, phi })
    }

    fn from_phi(phi: Phi) -> Result<Self> {
        Ok(Self { c: gamow_constant(phi.params())?, phi })
    }

    pub fn phi(&self) -> &Phi {
        &self.phi
    }

    pub fn gamow(&self) -> f64 {
        self.c
    }

    fn check_positive(x: f64) -> Result<()> {
        if x > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain { x, reason: "F requires x > 0".into() })
        }
    }

    pub fn value(&self, x: f64) -> Result<EvalResult> {
        Self::check_positive(x)?;
        let j = self.phi.jet(x)?;
        let s = self.c * x.powf(self.phi.params.ell() + 1.0);
        let v = s * j.f;
        Ok(EvalResult::new(v, s.abs() * j.err_f + 4.0 * f64::EPSILON * v.abs(), j.terms))
    }

    pub fn derivative(&self, x: f64) -> Result<EvalResult> {
        Self::check_positive(x)?;
        let j = self.phi.jet(x)?;
        let l1 = self.phi.params.ell() + 1.0;
        let s = self.c * x.powf(l1 - 1.0);
        let v = s * (l1 * j.f + x * j.df);
        let err = s.abs() * (l1.abs() * j.err_f + x * j.err_df) + 4.0 * f64::EPSILON * v.abs();
        Ok(EvalResult::new(v, err, j.terms))
    }

    /// F'' from the differentiated expansion (not from the ODE).
    pub fn second_derivative(&self, x: f64) -> Result<EvalResult> {
        Self::check_positive(x)?;
        let j = self.phi.jet(x)?;
        let ell = self.phi.params.ell();
        let s = self.c * x.powf(ell - 1.0);
        let v = s * (ell * (ell + 1.0) * j.f + 2.0 * (ell + 1.0) * x * j.df + x * x * j.d2f);
        let err = s.abs()
            * ((ell * (ell + 1.0)).abs() * j.err_f + 2.0 * (ell + 1.0).abs() * x * j.err_df + x * x * j.err_d2f);
        Ok(EvalResult::new(v, err, j.terms))
    }
}

fn f_for_point(p: &CoulombParams, x: f64) -> Result<CoulombF> {
    CoulombF::check_positive(x)?;
    CoulombF::from_phi(Phi::for_point(p, x)?)
}

/// F_{ℓ,η}(x) for 0 < x ≤ 50.
pub fn f_eval(p: &CoulombParams, x: f64) -> Result<EvalResult> {
    f_for_point(p, x)?.value(x)
}

/// F'_{ℓ,η}(x) for 0 < x ≤ 50.
pub fn f_derivative(p: &CoulombParams, x: f64) -> Result<EvalResult> {
    f_for_point(p, x)?.derivative(x)
}

#[derive(Debug, Clone)]
enum VarphiKind {
    /// varphi = φ / Γ(2ℓ+2)
    Regular { scale: f64 },
    /// varphi = scale · x^n · φ_{(n−1)/2}
    Limit { n: i32, scale: f64 },
}

/// varphi_{ℓ,η} = φ_{ℓ,η}/Γ(2ℓ+2), extended to half-integer ℓ by its limit.
#[derive(Debug, Clone)]
pub struct Varphi {
    params: CoulombParams,
    phi: Phi,
    kind: VarphiKind,
}

/// c_n(η) in varphi_{−(n+1)/2,η}(x) = c_n(η)·x^n·varphi_{(n−1)/2,η}(x).
///
/// c_n = (2i)^n Γ((n+1)/2 − iη)/Γ((1−n)/2 − iη), which is real:
/// 4^k ∏_{m=1}^{k} (η² + (m−½)²) for n = 2k and
/// 2^n η ∏_{m=1}^{k−1} (η² + m²) for n = 2k−1.
pub fn half_integer_limit_constant(n: u32, eta: f64) -> f64 {
    let e2 = eta * eta;
    if n.is_multiple_of(2) {
        (1..=n / 2).map(|m| 4.0 * (e2 + (m as f64 - 0.5).powi(2))).product()
    } else {
        let k = n.div_ceil(2);
        2f64.powi(n as i32) * eta * (1..k).map(|m| e2 + (m as f64).powi(2)).product::<f64>()
    }
}

impl Varphi {
    pub fn new(p: &CoulombParams, domain: Domain) -> Result<Self> {
        match p.regime() {
            Regime::Regular => {
                let phi = Phi::new(p, domain)?;
                Ok(Self { params: *p, phi, kind: VarphiKind::Regular { scale: recip_gamma(2.0 * p.ell() + 2.0) } })
            }
            Regime::HalfInteger { n } => {
                let base = CoulombParams::new((n as f64 - 1.0) / 2.0, p.eta())?;
                let phi = Phi::new(&base, domain)?;
                let scale = half_integer_limit_constant(n, p.eta()) * recip_gamma(n as f64 + 1.0);
                Ok(Self { params: *p, phi, kind: VarphiKind::Limit { n: n as i32, scale } })
            }
        }
    }

    pub fn params(&self) -> &CoulombParams {
        &self.params
    }

    pub fn domain(&self) -> Domain {
        self.phi.domain()
    }

    pub(crate) fn jet(&self, x: f64) -> Result<Jet> {
        let j = self.phi.jet(x)?;
        Ok(match self.kind {
            VarphiKind::Regular { scale } => Jet {
                f: scale * j.f,
                df: scale * j.df,
                d2f: scale * j.d2f,
                err_f: scale.abs() * j.err_f,
                err_df: scale.abs() * j.err_df,
                err_d2f: scale.abs() * j.err_d2f,
                terms: j.terms,
            },
            VarphiKind::Limit { n, scale } => {
                let nf = n as f64;
                let xn = x.powi(n);
                let xn1 = x.powi(n - 1);
                let xn2 = if n >= 2 { x.powi(n - 2) } else { 0.0 };
                Jet {
                    f: scale * xn * j.f,
                    df: scale * (nf * xn1 * j.f + xn * j.df),
                    d2f: scale * (nf * (nf - 1.0) * xn2 * j.f + 2.0 * nf * xn1 * j.df + xn * j.d2f),
                    err_f: (scale * xn).abs() * j.err_f,
                    err_df: scale.abs() * (nf * xn1.abs() * j.err_f + xn.abs() * j.err_df),
                    err_d2f: scale.abs()
                        * (nf * (nf - 1.0) * xn2.abs() * j.err_f
                            + 2.0 * nf * xn1.abs() * j.err_df
                            + xn.abs() * j.err_d2f),
                    terms: j.terms,
                }
            }
        })
    }

    pub fn value(&self, x: f64) -> Result<EvalResult> {
        let j = self.jet(x)?;
        Ok(EvalResult::new(j.f, j.err_f, j.terms))
    }

    pub fn derivative(&self, x: f64) -> Result<EvalResult> {
        let j = self.jet(x)?;
        Ok(EvalResult::new(j.df, j.err_df, j.terms))
    }
}

/// varphi_{ℓ,η}(x) for |x| ≤ 50, any finite ℓ.
pub fn varphi_eval(p: &CoulombParams, x: f64) -> Result<EvalResult> {
    Domain::default().check(x)?;
    Varphi::new(p, Domain::default())?.value(x)
}

/// varphi'_{ℓ,η}(x) for |x| ≤ 50, any finite ℓ.
pub fn varphi_derivative(p: &CoulombParams, x: f64) -> Result<EvalResult> {
    Domain::default().check(x)?;
    Varphi::new(p, Domain::default())?.derivative(x)
}

/// (φ')² − φφ'' written with φ and φ' only:
/// [(x² − 2ηx − (ℓ+1)²)/x²]·φ² + (φ' + (ℓ+1)φ/x)².
pub fn laguerre_from_values(p: &CoulombParams, x: f64, phi: f64, dphi: f64) -> f64 {
    let (l1, eta) = (p.ell() + 1.0, p.eta());
    let w = (x * x - 2.0 * eta * x - l1 * l1) / (x * x);
    let d = dphi + l1 * phi / x;
    w * phi * phi + d * d
}

pub fn laguerre_expression(p: &CoulombParams, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain { x, reason: "Laguerre expression has a 1/x factor".into() });
    }
    let (f, df) = Phi::for_point(p, x)?.pair(x)?;
    Ok(laguerre_from_values(p, x, f, df))
}

/// Residual of the Coulomb ODE relative to max(1, |F|) for x > 0; for x < 0
/// the residual of φ'' + 2(ℓ+1)φ'/x + (1 − 2η/x)φ relative to max(1, |φ|).
pub fn ode_residual(p: &CoulombParams, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain { x, reason: "the ODE is singular at the origin".into() });
    }
    let phi = Phi::for_point(p, x)?;
    residual_with(&phi, x)
}

pub(crate) fn residual_with(phi: &Phi, x: f64) -> Result<f64> {
    let p = phi.params();
    let (ell, eta) = (p.ell(), p.eta());
    if x > 0.0 {
        let f = CoulombF::from_phi(phi.clone())?;
        let v = f.value(x)?.value;
        let d2 = f.second_derivative(x)?.value;
        let r = d2 + (1.0 - 2.0 * eta / x - ell * (ell + 1.0) / (x * x)) * v;
        Ok(r.abs() / v.abs().max(1.0))
    } else {
        let j = phi.jet(x)?;
        let r = j.d2f + 2.0 * (ell + 1.0) * j.df / x + (1.0 - 2.0 * eta / x) * j.f;
        Ok(r.abs() / j.f.abs().max(1.0))
    }
}

/// Relative residuals of the three-term relations linking F_{ℓ−1}, F_ℓ, F_{ℓ+1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceResiduals {
    /// ℓF' = −(ℓ²/x + η)F + √(ℓ²+η²)F_{ℓ−1}
    pub r1_down: f64,
    /// (ℓ+1)F' = ((ℓ+1)²/x + η)F − √((ℓ+1)²+η²)F_{ℓ+1}
    pub r1_up: f64,
    /// (ℓ+1)√(ℓ²+η²)F_{ℓ−1} − (2ℓ+1)(η + ℓ(ℓ+1)/x)F_ℓ + ℓ√((ℓ+1)²+η²)F_{ℓ+1} = 0
    pub r2: f64,
}

fn rel(terms: &[f64]) -> f64 {
    let s: f64 = terms.iter().sum();
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    if scale == 0.0 {
        0.0
    } else {
        s.abs() / scale
    }
}

pub fn recurrence_residuals(p: &CoulombParams, x: f64) -> Result<RecurrenceResiduals> {
    CoulombF::check_positive(x)?;
    let (ell, eta) = (p.ell(), p.eta());
    let fm = f_for_point(&p.shifted(-1.0)?, x)?.value(x)?.value;
    let f0 = f_for_point(p, x)?;
    let (v, dv) = (f0.value(x)?.value, f0.derivative(x)?.value);
    let fp = f_for_point(&p.shifted(1.0)?, x)?.value(x)?.value;
    let l1 = ell + 1.0;
    let s_up = l1.hypot(eta);
    let s_dn = ell.hypot(eta);
    Ok(RecurrenceResiduals {
        r1_up: rel(&[l1 * dv, -(l1 * l1 / x + eta) * v, s_up * fp]),
        r1_down: rel(&[ell * dv, (ell * ell / x + eta) * v, -s_dn * fm]),
        r2: rel(&[l1 * s_dn * fm, -(2.0 * ell + 1.0) * (eta + ell * l1 / x) * v, ell * s_up * fp]),
    })
}

/// Relative residuals of the raising relation at ℓ and the lowering relation
/// at ℓ+1, which only involve F_ℓ and F_{ℓ+1}.
pub fn ladder_residuals(p: &CoulombParams, x: f64) -> Result<(f64, f64)> {
    CoulombF::check_positive(x)?;
    let (ell, eta) = (p.ell(), p.eta());
    let f0 = f_for_point(p, x)?;
    let f1 = f_for_point(&p.shifted(1.0)?, x)?;
    let (v, dv) = (f0.value(x)?.value, f0.derivative(x)?.value);
    let (w, dw) = (f1.value(x)?.value, f1.derivative(x)?.value);
    let l1 = ell + 1.0;
    let s = l1.hypot(eta);
    let a = l1 * l1 / x + eta;
    Ok((rel(&[l1 * dv, -a * v, s * w]), rel(&[l1 * dw, a * w, -s * v])))
}
