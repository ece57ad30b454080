//! Orthogonal polynomials R_{n,ℓ,η} attached to φ_{ℓ,η} by Padé
//! approximation, the Dini-type polynomials D_{n,ℓ,η}(H; ·), and their zeros.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::CoulombParams;
use crate::special::{Domain, Phi, Varphi};
use crate::zeros::{Target, ZeroFinder};

/// Largest degree for which R_n is built.
pub const MAX_DEGREE: usize = 200;
/// Largest degree for the explicit hypergeometric form and for coefficient
/// vectors used in scaled evaluation.
pub const MAX_EXPLICIT_DEGREE: usize = 60;
/// Relative imaginary residue tolerated in the explicit form.
pub const CONDITIONING_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Recurrence,
    Explicit,
}

/// Dense real polynomial c_0 + c_1 x + … + c_n x^n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
    pub provenance: Provenance,
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = if self.coeffs.len() <= 1 {
            vec![0.0]
        } else {
            self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect()
        };
        Polynomial { coeffs, provenance: self.provenance }
    }

    /// x^m·p(1/x) for m = coefficient count − 1, evaluated by Horner on the
    /// reversed coefficients; finite at x = 0.
    pub fn eval_reversed(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    fn sub_scaled(&mut self, other: &Polynomial, s: f64) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0.0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= s * b;
        }
    }
}

/// α_n, β_n of the three-term recurrence and ζ_n = β_1⋯β_n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceCoeffs {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub zeta: f64,
}

/// Polynomial family admissible for ℓ > −3/2, ℓ ≠ −1.
pub(crate) fn check_family(p: &CoulombParams) -> Result<()> {
    let ell = p.ell();
    if !(ell > -1.5) || ell == -1.0 {
        return Err(Error::Parameter(format!(
            "orthogonal polynomial family needs ell > -3/2 and ell != -1, got ell = {ell}"
        )));
    }
    Ok(())
}

fn alpha(ell: f64, eta: f64, n: usize) -> f64 {
    let m = ell + n as f64;
    -eta / (2.0 * (m + 1.0) * (m + 2.0))
}

fn beta(ell: f64, eta: f64, n: usize) -> f64 {
    let m = ell + n as f64;
    let a = 2.0 * m + 1.0;
    ((m + 1.0).powi(2) + eta * eta) / (2.0 * a * (a + 1.0) * (a + 2.0) * (m + 1.0))
}

/// Recurrence coefficients at index n. β_0 is returned for completeness; it
/// is not part of the recurrence and is singular at ℓ = −1/2.
pub fn recurrence_coeffs(p: &CoulombParams, n: usize) -> Result<RecurrenceCoeffs> {
    check_family(p)?;
    let (ell, eta) = (p.ell(), p.eta());
    let zeta = (1..=n).map(|k| beta(ell, eta, k)).product();
    Ok(RecurrenceCoeffs { n, alpha: alpha(ell, eta, n), beta: beta(ell, eta, n), zeta })
}

fn check_degree(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::Parameter(format!("degree {n} exceeds the supported maximum {max}")));
    }
    Ok(())
}

/// Monic R_n from y_{n+1} = (x − α_n)y_n − β_n y_{n−1}, y_0 = 1, y_1 = x − α_0.
pub fn r_poly(p: &CoulombParams, n: usize) -> Result<Polynomial> {
    check_family(p)?;
    check_degree(n, MAX_DEGREE)?;
    Ok(r_chain(p, n).pop().unwrap())
}

/// R_0, …, R_n.
fn r_chain(p: &CoulombParams, n: usize) -> Vec<Polynomial> {
    let (ell, eta) = (p.ell(), p.eta());
    let mut out = Vec::with_capacity(n + 1);
    out.push(Polynomial { coeffs: vec![1.0], provenance: Provenance::Recurrence });
    if n == 0 {
        return out;
    }
    out.push(Polynomial { coeffs: vec![-alpha(ell, eta, 0), 1.0], provenance: Provenance::Recurrence });
    for k in 1..n {
        let (a, b) = (alpha(ell, eta, k), beta(ell, eta, k));
        let yk = &out[k];
        let mut next = vec![0.0; k + 2];
        for (j, &c) in yk.coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= a * c;
        }
        for (j, &c) in out[k - 1].coeffs.iter().enumerate() {
            next[j] -= b * c;
        }
        out.push(Polynomial { coeffs: next, provenance: Provenance::Recurrence });
    }
    out
}

/// R_n(x) evaluated through the recurrence at the point.
pub fn r_value(p: &CoulombParams, n: usize, x: f64) -> Result<f64> {
    check_family(p)?;
    check_degree(n, MAX_DEGREE)?;
    Ok(r_value_unchecked(p.ell(), p.eta(), n, x).0)
}

/// (R_n(x), R_{n−1}(x)).
fn r_value_unchecked(ell: f64, eta: f64, n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut prev, mut cur) = (1.0, x - alpha(ell, eta, 0));
    for k in 1..n {
        let next = (x - alpha(ell, eta, k)) * cur - beta(ell, eta, k) * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// R_n from the terminating ₃F₂ representation, in complex arithmetic.
pub fn r_explicit(p: &CoulombParams, n: usize) -> Result<Polynomial> {
    check_family(p)?;
    check_degree(n, MAX_EXPLICIT_DEGREE)?;
    let (ell, eta) = (p.ell(), p.eta());
    let nf = n as f64;
    let ie = Complex64::new(0.0, eta);
    let a = Complex64::new(-ell - nf - 1.0, -eta);
    let b = -2.0 * ell - 2.0 * nf - 2.0;
    let mut coeffs = vec![0.0; n + 1];
    let mut worst_imag = 0.0f64;
    // prefactor (a)_k i^k / (k! (b)_k), built incrementally
    let mut pre = Complex64::new(1.0, 0.0);
    for k in 0..=n {
        if k > 0 {
            let kf = (k - 1) as f64;
            pre = pre * (a + kf) * Complex64::new(0.0, 1.0) / ((kf + 1.0) * (b + kf));
        }
        let kf = k as f64;
        let u = Complex64::new(2.0 * nf + 2.0 * ell + 3.0 - kf, 0.0);
        let v = ie + ell + 1.0;
        let w = ie + nf + ell + 2.0 - kf;
        let c = 2.0 * ell + 2.0;
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut mag = 1.0f64;
        for m in 0..k {
            let mf = m as f64;
            term = term * (mf - kf) * (u + mf) * (v + mf) / ((w + mf) * (c + mf) * (mf + 1.0));
            sum += term;
            mag += term.norm();
        }
        let coeff = pre * sum;
        let cscale = pre.norm() * mag;
        worst_imag = worst_imag.max(coeff.im.abs() / cscale.max(f64::MIN_POSITIVE));
        coeffs[n - k] = coeff.re;
    }
    if worst_imag > CONDITIONING_TOL {
        return Err(Error::Conditioning { residue: worst_imag });
    }
    Ok(Polynomial { coeffs, provenance: Provenance::Explicit })
}

fn dini_constant(ell: f64, eta: f64) -> f64 {
    (1.0 + eta * eta / ((ell + 1.0) * (ell + 1.0))) / (4.0 * (2.0 * ell + 3.0))
}

/// D_n(H; x) = (η/(2(ℓ+1)) + Hx)·R_{n,ℓ}(x) − (1 + η²/(ℓ+1)²)/(4(2ℓ+3))·R_{n−1,ℓ+1}(x).
pub fn d_poly(p: &CoulombParams, n: usize, h: f64) -> Result<Polynomial> {
    check_family(p)?;
    if n == 0 {
        return Err(Error::Parameter("D_n needs n >= 1".into()));
    }
    check_degree(n, MAX_DEGREE)?;
    let (ell, eta) = (p.ell(), p.eta());
    let r = r_poly(p, n)?;
    let r1 = r_poly(&p.shifted(1.0)?, n - 1)?;
    let mut coeffs = vec![0.0; n + 2];
    let e0 = eta / (2.0 * (ell + 1.0));
    for (j, &c) in r.coeffs.iter().enumerate() {
        coeffs[j] += e0 * c;
        coeffs[j + 1] += h * c;
    }
    let mut d = Polynomial { coeffs, provenance: Provenance::Recurrence };
    d.sub_scaled(&r1, dini_constant(ell, eta));
    Ok(d)
}

fn d_value(ell: f64, eta: f64, n: usize, h: f64, x: f64) -> f64 {
    let (rn, _) = r_value_unchecked(ell, eta, n, x);
    let (rn1, _) = r_value_unchecked(ell + 1.0, eta, n - 1, x);
    (eta / (2.0 * (ell + 1.0)) + h * x) * rn - dini_constant(ell, eta) * rn1
}

/// Number of eigenvalues below λ of the Jacobi matrix with diagonal
/// α_0..α_{n−1} and squared off-diagonals β_1..β_{n−1}.
fn sturm_count(diag: &[f64], off2: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        d = diag[i] - lambda - if i > 0 { off2[i - 1] / d } else { 0.0 };
        if d == 0.0 {
            d = -f64::EPSILON * (diag[i].abs() + lambda.abs() + f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of a symmetric tridiagonal matrix by Sturm bisection, ascending.
fn jacobi_eigenvalues(diag: &[f64], off2: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off2[i - 1].sqrt() } else { 0.0 } + if i + 1 < n { off2[i].sqrt() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = 1e-12 * (hi - lo).max(lo.abs()).max(hi.abs()).max(f64::MIN_POSITIVE);
    let (lo, hi) = (lo - pad, hi + pad);
    (0..n)
        .map(|k| {
            // smallest λ with count(λ) ≥ k+1
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if sturm_count(diag, off2, m) > k {
                    b = m;
                } else {
                    a = m;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Zeros of R_n as eigenvalues of its Jacobi matrix, ascending.
pub fn poly_zeros_r(p: &CoulombParams, n: usize) -> Result<Vec<f64>> {
    check_family(p)?;
    check_degree(n, MAX_DEGREE)?;
    let (ell, eta) = (p.ell(), p.eta());
    let diag: Vec<f64> = (0..n).map(|k| alpha(ell, eta, k)).collect();
    let off2: Vec<f64> = (1..n).map(|k| beta(ell, eta, k)).collect();
    Ok(jacobi_eigenvalues(&diag, &off2))
}

fn bisect_poly<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> Option<f64> {
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if (fa < 0.0) == (fb < 0.0) {
        return None;
    }
    for _ in 0..300 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Real zeros of D_n(H; ·) for H ≥ 0: one between consecutive zeros of R_n
/// and one beyond each extreme zero (for H = 0 only on the side selected by
/// the sign of η/(ℓ+1)).
pub fn poly_zeros_d(p: &CoulombParams, n: usize, h: f64) -> Result<Vec<f64>> {
    check_family(p)?;
    if !(h >= 0.0) {
        return Err(Error::Parameter(format!("zero reality is established only for H >= 0, got {h}")));
    }
    if n == 0 {
        return Err(Error::Parameter("D_n needs n >= 1".into()));
    }
    let (ell, eta) = (p.ell(), p.eta());
    let rz = poly_zeros_r(p, n)?;
    let f = |x: f64| d_value(ell, eta, n, h, x);
    let fail = |lo: f64, hi: f64| {
        Error::Violation(format!("no sign change of D_{n}(H={h}) on [{lo}, {hi}] for ell = {ell}, eta = {eta}"))
    };
    let mut out = Vec::with_capacity(n + 1);
    let e0 = eta / (ell + 1.0);
    let outward = |from: f64, dir: f64| -> Result<f64> {
        let mut w = from.abs().max(1.0);
        for _ in 0..200 {
            let to = from + dir * w;
            if (f(to) < 0.0) != (f(from) < 0.0) {
                let (a, b) = if dir > 0.0 { (from, to) } else { (to, from) };
                return bisect_poly(f, a, b).ok_or_else(|| fail(a, b));
            }
            w *= 2.0;
        }
        Err(fail(from, from + dir * w))
    };
    let left = h > 0.0 || e0 < 0.0;
    let right = h > 0.0 || e0 > 0.0;
    if left {
        out.push(outward(rz[0], -1.0)?);
    }
    for w in rz.windows(2) {
        out.push(bisect_poly(f, w[0], w[1]).ok_or_else(|| fail(w[0], w[1]))?);
    }
    if right {
        out.push(outward(rz[n - 1], 1.0)?);
    }
    Ok(out)
}

/// (2x)^n R_n(1/(2x)) via y_{n+1} = (1 − 2xα_n)y_n − 4x²β_n y_{n−1}.
fn scaled_r(ell: f64, eta: f64, n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, 1.0 - 2.0 * x * alpha(ell, eta, 0));
    for k in 1..n {
        let next = (1.0 - 2.0 * x * alpha(ell, eta, k)) * cur - 4.0 * x * x * beta(ell, eta, k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// (2x)^n R_n(1/(2x)): Horner on reversed coefficients for n ≤ 60, the
/// scaled recurrence beyond.
pub fn pade_scaled(p: &CoulombParams, n: usize, x: f64) -> Result<f64> {
    check_family(p)?;
    check_degree(n, MAX_DEGREE)?;
    if n <= MAX_EXPLICIT_DEGREE {
        Ok(r_poly(p, n)?.eval_reversed(2.0 * x))
    } else {
        Ok(scaled_r(p.ell(), p.eta(), n, x))
    }
}

/// (2x)^{n+1} D_n(H; 1/(2x)).
pub fn dini_scaled(p: &CoulombParams, n: usize, h: f64, x: f64) -> Result<f64> {
    check_family(p)?;
    if n == 0 {
        return Err(Error::Parameter("D_n needs n >= 1".into()));
    }
    check_degree(n, MAX_DEGREE)?;
    if n <= MAX_EXPLICIT_DEGREE {
        Ok(d_poly(p, n, h)?.eval_reversed(2.0 * x))
    } else {
        let (ell, eta) = (p.ell(), p.eta());
        Ok((eta * x / (ell + 1.0) + h) * scaled_r(ell, eta, n, x)
            - dini_constant(ell, eta) * 4.0 * x * x * scaled_r(ell + 1.0, eta, n - 1, x))
    }
}

fn check_pade_x(x: f64) -> Result<()> {
    if !(x.abs() <= 10.0) {
        return Err(Error::Domain { x, reason: "Padé residuals are evaluated for |x| <= 10".into() });
    }
    Ok(())
}

/// |(2x)^n R_n(1/(2x)) − φ_{ℓ,η}(x)|.
pub fn pade_limit_residual(p: &CoulombParams, n: usize, x: f64) -> Result<f64> {
    check_pade_x(x)?;
    let v = pade_scaled(p, n, x)?;
    let phi = Phi::new(p, Domain::default())?.value(x)?.value;
    Ok((v - phi).abs())
}

/// |(2x)^{n+1} D_n(H; 1/(2x)) − (xφ' + Hφ)|.
pub fn dini_limit_residual(p: &CoulombParams, n: usize, h: f64, x: f64) -> Result<f64> {
    check_pade_x(x)?;
    let v = dini_scaled(p, n, h, x)?;
    let (f, df) = Phi::new(p, Domain::default())?.pair(x)?;
    Ok((v - (x * df + h * f)).abs())
}

fn check_wronskian_family(p: &CoulombParams) -> Result<()> {
    check_family(p)?;
    check_family(&p.shifted(-1.0)?).map_err(|_| Error::Regime {
        ell: p.ell(),
        eta: p.eta(),
        reason: "W[R_(n,l), R_(n+1,l-1)] needs l > -1/2 and l != 0".into(),
    })
}

/// The two sides of W[R_{n,ℓ}, R_{n+1,ℓ−1}](x) = Σ_k (∏_{j<k} β_0(ℓ+j))·R²_{n−k,ℓ+k}(x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WronskianSides {
    /// R_{n,ℓ}R'_{n+1,ℓ−1} − R'_{n,ℓ}R_{n+1,ℓ−1} from the polynomials.
    pub direct: f64,
    /// The positive sum of squares.
    pub sum_of_squares: f64,
}

impl WronskianSides {
    pub fn relative_difference(&self) -> f64 {
        (self.direct - self.sum_of_squares).abs() / self.sum_of_squares.abs().max(f64::MIN_POSITIVE)
    }
}

pub fn wronskian_r_sides(p: &CoulombParams, n: usize, x: f64) -> Result<WronskianSides> {
    check_wronskian_family(p)?;
    check_degree(n + 1, MAX_EXPLICIT_DEGREE)?;
    let a = r_poly(p, n)?;
    let b = r_poly(&p.shifted(-1.0)?, n + 1)?;
    let direct = a.eval(x) * b.derivative().eval(x) - a.derivative().eval(x) * b.eval(x);
    let (ell, eta) = (p.ell(), p.eta());
    let mut weight = 1.0;
    let mut sum = 0.0;
    for k in 0..=n {
        let r = r_value_unchecked(ell + k as f64, eta, n - k, x).0;
        sum += weight * r * r;
        weight *= beta(ell + k as f64, eta, 0);
    }
    Ok(WronskianSides { direct, sum_of_squares: sum })
}

/// W[R_{n,ℓ}, R_{n+1,ℓ−1}](x), positive for ℓ > −1/2, ℓ ≠ 0.
pub fn wronskian_r_positivity(p: &CoulombParams, n: usize, x: f64) -> Result<f64> {
    Ok(wronskian_r_sides(p, n, x)?.direct)
}

/// P_n(x) = R_n(x/2)/√ζ_n, the orthonormal form of the family.
pub fn normalized_eval(p: &CoulombParams, n: usize, x: f64) -> Result<f64> {
    let c = recurrence_coeffs(p, n)?;
    Ok(r_value(p, n, x / 2.0)? / c.zeta.sqrt())
}

/// Residuals of the truncated zero expansions
/// r1 = |x·varphi_{ℓ+1}/varphi_ℓ − (ℓ+1)/(2((ℓ+1)²+η²))·Σ x/(x_k(x_k − x))| and
/// r2 = |φ'/φ − η/(ℓ+1) − Σ x/(x_k(x − x_k))|, summing over the first N
/// positive and first N negative zeros of φ_ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MittagLefflerResiduals {
    pub r1: f64,
    pub r2: f64,
    pub terms: usize,
}

/// Evaluation window large enough to hold N zeros on both half-lines.
pub fn mittag_leffler_domain(p: &CoulombParams, n_terms: usize) -> Domain {
    let w = std::f64::consts::PI * (n_terms as f64 + 10.0) + 20.0 * p.eta().abs() + 50.0;
    Domain { max_abs_x: w.max(crate::special::DEFAULT_MAX_ABS_X) }
}

/// Zeros of φ_ℓ used by `mittag_leffler_with`: N per half-line.
pub fn mittag_leffler_zeros(p: &CoulombParams, n_terms: usize) -> Result<Vec<f64>> {
    check_family(p)?;
    let domain = mittag_leffler_domain(p, n_terms);
    let pos = ZeroFinder::new(p, Target::Varphi, domain)?.starting_at(0.0).zeros(n_terms)?;
    let neg = ZeroFinder::new(&p.reflected(), Target::Varphi, domain)?.starting_at(0.0).zeros(n_terms)?;
    if pos.truncated || neg.truncated {
        return Err(Error::Domain {
            x: domain.max_abs_x,
            reason: format!("fewer than {n_terms} zeros found on a half-line"),
        });
    }
    Ok(neg.zeros.iter().rev().map(|z| -z).chain(pos.zeros.iter().copied()).collect())
}

pub fn mittag_leffler_residual(p: &CoulombParams, x: f64, n_terms: usize) -> Result<MittagLefflerResiduals> {
    let zeros = mittag_leffler_zeros(p, n_terms)?;
    mittag_leffler_with(p, x, &zeros)
}

/// As `mittag_leffler_residual` with a precomputed zero list.
pub fn mittag_leffler_with(p: &CoulombParams, x: f64, zeros: &[f64]) -> Result<MittagLefflerResiduals> {
    check_family(p)?;
    if p.eta() == 0.0 {
        return Err(Error::Parameter("the zero expansions are stated for eta != 0".into()));
    }
    for &z in zeros {
        if (x - z).abs() < 1e-6 {
            return Err(Error::PoleProximity { x, zero: z, distance: (x - z).abs() });
        }
    }
    let (ell, eta) = (p.ell(), p.eta());
    let l1 = ell + 1.0;
    let domain = Domain::default();
    let v0 = Varphi::new(p, domain)?.value(x)?.value;
    let v1 = Varphi::new(&p.shifted(1.0)?, domain)?.value(x)?.value;
    let (f, df) = Phi::new(p, domain)?.pair(x)?;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    // smallest terms first
    let mut order: Vec<f64> = zeros.to_vec();
    order.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    for &z in &order {
        s1 += x / (z * (z - x));
        s2 += x / (z * (x - z));
    }
    let lhs1 = x * v1 / v0;
    let rhs1 = l1 / (2.0 * (l1 * l1 + eta * eta)) * s1;
    let lhs2 = df / f;
    let rhs2 = eta / l1 + s2;
    Ok(MittagLefflerResiduals { r1: (lhs1 - rhs1).abs(), r2: (lhs2 - rhs2).abs(), terms: zeros.len() / 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(l: f64, e: f64) -> CoulombParams {
        CoulombParams::new(l, e).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let p = params(0.0, 1.0);
        let c0 = recurrence_coeffs(&p, 0).unwrap();
        assert_eq!(c0.alpha, -0.25);
        let c1 = recurrence_coeffs(&p, 1).unwrap();
        assert!((c1.beta - 1.0 / 48.0).abs() < 1e-17);
        assert!((c1.alpha + 1.0 / 12.0).abs() < 1e-17);
        assert_eq!(recurrence_coeffs(&params(0.0, 0.0), 5).unwrap().alpha, 0.0);
        assert!(recurrence_coeffs(&params(-1.0, 1.0), 1).is_err());
        assert!(recurrence_coeffs(&params(-1.6, 1.0), 1).is_err());
    }

    #[test]
    fn low_degree_polynomials() {
        let p = params(0.0, 1.0);
        assert_eq!(r_poly(&p, 0).unwrap().coeffs, vec![1.0]);
        assert_eq!(r_poly(&p, 1).unwrap().coeffs, vec![0.25, 1.0]);
        // (x + 1/12)(x + 1/4) − 1/48
        let r2 = r_poly(&p, 2).unwrap();
        let want = [1.0 / 48.0 - 1.0 / 48.0, 1.0 / 3.0, 1.0];
        for (a, b) in r2.coeffs.iter().zip(want) {
            assert!((a - b).abs() < 1e-16);
        }
        assert!(r_poly(&p, MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn explicit_matches_recurrence() {
        for &(l, e) in &[(0.5, 2.0), (0.0, 1.0), (-1.2, -2.0), (2.5, 0.5), (-0.4, -1.0 / 3.0)] {
            let p = params(l, e);
            for n in 0..=20 {
                let a = r_poly(&p, n).unwrap();
                let b = r_explicit(&p, n).unwrap();
                let scale = a.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                    assert!((x - y).abs() <= 1e-10 * scale, "({l},{e}) n={n}: {x} vs {y}");
                }
                assert_eq!(b.provenance, Provenance::Explicit);
            }
        }
    }

    #[test]
    fn d_examples() {
        let p = params(0.0, 1.0);
        let d = d_poly(&p, 1, 0.0).unwrap();
        // (1/2)(x + 1/4) − 1/6
        assert!((d.coeffs[0] - (0.125 - 1.0 / 6.0)).abs() < 1e-16);
        assert!((d.coeffs[1] - 0.5).abs() < 1e-16);
        assert_eq!(d.degree(), 1);
        let d = d_poly(&params(0.2, 0.5), 6, 1.0).unwrap();
        assert_eq!(d.degree(), 7);
        assert_eq!(d.leading(), 1.0);
        let z = poly_zeros_d(&p, 1, 0.0).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z[0] - (1.0 / 3.0 - 0.25)).abs() < 1e-15);
        assert_eq!(poly_zeros_d(&p, 1, 1.0).unwrap().len(), 2);
    }

    #[test]
    fn jacobi_zeros() {
        let p = params(0.0, 1.0);
        assert!((poly_zeros_r(&p, 1).unwrap()[0] + 0.25).abs() < 1e-16);
        // x² + x/3 = 0
        let z = poly_zeros_r(&p, 2).unwrap();
        assert!((z[0] + 1.0 / 3.0).abs() < 1e-15 && z[1].abs() < 1e-15);
        let q = params(0.3, -0.7);
        for n in 1..=15 {
            let r = r_poly(&q, n).unwrap();
            for z in poly_zeros_r(&q, n).unwrap() {
                let d = r.derivative().eval(z);
                assert!((r.eval(z) / d).abs() < 1e-9, "n={n}");
            }
        }
    }

    #[test]
    fn scaled_evaluations_agree() {
        let p = params(0.2, 0.5);
        for &x in &[-3.0, 0.0, 0.5, 2.0] {
            let a = r_poly(&p, 40).unwrap().eval_reversed(2.0 * x);
            let b = scaled_r(0.2, 0.5, 40, x);
            assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
            let c = d_poly(&p, 40, 1.5).unwrap().eval_reversed(2.0 * x);
            let d = (0.5 * x / 1.2 + 1.5) * b - dini_constant(0.2, 0.5) * 4.0 * x * x * scaled_r(1.2, 0.5, 39, x);
            assert!((c - d).abs() < 1e-12 * c.abs().max(1.0));
        }
    }

    #[test]
    fn pade_anchor_points() {
        let p = params(0.4, -1.3);
        let phi = Phi::new(&p, Domain::default()).unwrap().value(1.7).unwrap().value;
        assert_eq!(pade_limit_residual(&p, 0, 1.7).unwrap(), (1.0 - phi).abs());
        assert_eq!(dini_limit_residual(&p, 5, 2.0, 0.0).unwrap(), 0.0);
        assert!(pade_limit_residual(&p, 5, 10.5).is_err());
    }

    #[test]
    fn wronskian_examples() {
        let w = wronskian_r_sides(&params(1.0, 1.0), 0, 0.3).unwrap();
        assert_eq!(w.direct, 1.0);
        for &(l, e, n, x) in &[(1.0, 1.0, 3, 0.2), (0.5, -2.0, 5, -1.0), (2.5, 0.5, 12, 0.05)] {
            let w = wronskian_r_sides(&params(l, e), n, x).unwrap();
            assert!(w.direct > 0.0);
            assert!(w.relative_difference() < 1e-9, "{w:?}");
        }
        assert!(wronskian_r_sides(&params(0.0, 1.0), 2, 0.1).is_err());
        assert!(wronskian_r_sides(&params(-0.6, 1.0), 2, 0.1).is_err());
    }

    #[test]
    fn mittag_leffler_at_origin_side() {
        let p = params(0.2, 0.5);
        let z100 = mittag_leffler_zeros(&p, 100).unwrap();
        let a = mittag_leffler_with(&p, 1.0, &z100).unwrap();
        assert!(a.r1 < 1e-2 && a.r2 < 1e-2, "{a:?}");
        assert!(mittag_leffler_with(&p, z100[100], &z100).is_err());
    }
}
