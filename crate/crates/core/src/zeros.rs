//! Real zeros of varphi_{ℓ,η} and related functions: bracketing, Brent
//! refinement, interlacing checks and zero trajectories.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::CoulombParams;
use crate::report::{CheckReport, ReportBuilder};
use crate::special::{Domain, Varphi};

/// Bracket width accepted by default when refining.
pub const DEFAULT_TOL: f64 = 1e-11;
/// Scan start when no lower bound applies.
pub const SCAN_EPSILON: f64 = 1e-6;
const MAX_ITER: usize = 200;
const MAX_HALVINGS: u32 = 6;

/// Function whose zeros are sought, in terms of v = varphi_{ℓ,η}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// v
    Varphi,
    /// v'
    VarphiPrime,
    /// (ℓ+1)v + xv', which has the positive zeros of F'_{ℓ,η}
    FPrime,
    /// xv' + Hv
    Dini(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo_sign: i8,
    pub f_hi_sign: i8,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let (sl, sh) = (sign(f_lo), sign(f_hi));
        if !(lo < hi) || sl * sh != -1 {
            return Err(Error::Bracket { lo, hi, reason: "endpoints must satisfy lo < hi with opposite signs".into() });
        }
        Ok(Self { lo, hi, f_lo_sign: sl, f_hi_sign: sh })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn sign(v: f64) -> i8 {
    if v < 0.0 {
        -1
    } else {
        1
    }
}

/// Ascending real zeros of one target on one half-line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub params: CoulombParams,
    pub target: Target,
    pub zeros: Vec<f64>,
    pub tol: f64,
    /// Fewer zeros than requested were found inside the evaluation domain.
    pub truncated: bool,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// η + √(η² + (ℓ+1)²).
pub fn zero_lower_bound(p: &CoulombParams) -> f64 {
    p.eta() + p.rho_norm()
}

/// Evaluates one target of one (ℓ, η) on the positive half-line.
#[derive(Debug, Clone)]
pub struct ZeroFinder {
    params: CoulombParams,
    target: Target,
    v: Varphi,
    start: f64,
}

impl ZeroFinder {
    /// Default scan start: the lower bound η + √(η²+(ℓ+1)²) for `Varphi`
    /// with ℓ > −1, otherwise `SCAN_EPSILON`.
    pub fn new(p: &CoulombParams, target: Target, domain: Domain) -> Result<Self> {
        let v = Varphi::new(p, domain)?;
        if v.value(1.0)?.value == 0.0 && v.derivative(1.0)?.value == 0.0 {
            return Err(Error::Regime { ell: p.ell(), eta: p.eta(), reason: "varphi vanishes identically".into() });
        }
        let start = match target {
            Target::Varphi if p.ell() > -1.0 => zero_lower_bound(p).max(SCAN_EPSILON),
            _ => SCAN_EPSILON,
        };
        Ok(Self { params: *p, target, v, start })
    }

    /// Overrides the scan start.
    pub fn starting_at(mut self, start: f64) -> Self {
        self.start = start.max(SCAN_EPSILON);
        self
    }

    pub fn params(&self) -> &CoulombParams {
        &self.params
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn domain(&self) -> Domain {
        self.v.domain()
    }

    pub fn varphi(&self) -> &Varphi {
        &self.v
    }

    /// Target value and its error estimate.
    pub fn eval(&self, x: f64) -> Result<(f64, f64)> {
        let j = self.v.jet(x)?;
        Ok(match self.target {
            Target::Varphi => (j.f, j.err_f),
            Target::VarphiPrime => (j.df, j.err_df),
            Target::FPrime => {
                let l1 = self.params.ell() + 1.0;
                (l1 * j.f + x * j.df, l1.abs() * j.err_f + x.abs() * j.err_df)
            }
            Target::Dini(h) => (x * j.df + h * j.f, x.abs() * j.err_df + h.abs() * j.err_f),
        })
    }

    /// Derivative of the target.
    pub fn eval_derivative(&self, x: f64) -> Result<f64> {
        let j = self.v.jet(x)?;
        Ok(match self.target {
            Target::Varphi => j.df,
            Target::VarphiPrime => j.d2f,
            Target::FPrime => (self.params.ell() + 2.0) * j.df + x * j.d2f,
            Target::Dini(h) => x * j.d2f + (1.0 + h) * j.df,
        })
    }

    fn value(&self, x: f64) -> Result<f64> {
        Ok(self.eval(x)?.0)
    }

    /// Local wavenumber √max(0, 1 − 2η/x − ℓ(ℓ+1)/x²) of the Coulomb equation.
    fn wavenumber(&self, x: f64) -> f64 {
        let (ell, eta) = (self.params.ell(), self.params.eta());
        (1.0 - 2.0 * eta / x - ell * (ell + 1.0) / (x * x)).max(0.0).sqrt()
    }

    fn step(&self, x: f64, base: f64) -> f64 {
        base / self.wavenumber(x).max(1.0)
    }

    fn scan_once(&self, from: f64, to: f64, base: f64) -> Result<Vec<Bracket>> {
        let mut out = Vec::new();
        let mut x0 = from;
        let mut f0 = self.value(x0)?;
        while x0 < to {
            let x1 = (x0 + self.step(x0, base)).min(to);
            let f1 = self.value(x1)?;
            if sign(f0) != sign(f1) {
                out.push(Bracket::new(x0, x1, f0, f1)?);
            }
            x0 = x1;
            f0 = f1;
        }
        Ok(out)
    }

    /// Sign-change brackets on [start, x_max], halving the scan step until
    /// two successive resolutions agree on the count.
    pub fn brackets_between(&self, from: f64, to: f64) -> Result<Vec<Bracket>> {
        self.domain().check(to)?;
        if !(from < to) {
            return Ok(Vec::new());
        }
        let mut base = PI / 8.0;
        let mut prev = self.scan_once(from, to, base)?;
        for _ in 0..MAX_HALVINGS {
            base *= 0.5;
            let next = self.scan_once(from, to, base)?;
            let stable = next.len() == prev.len();
            prev = next;
            if stable {
                break;
            }
        }
        Ok(prev)
    }

    pub fn brackets(&self, x_max: f64, max_count: usize) -> Result<Vec<Bracket>> {
        let mut b = self.brackets_between(self.start, x_max)?;
        b.truncate(max_count);
        Ok(b)
    }

    /// Brent refinement to machine precision; errors if the final bracket is
    /// wider than `tol` or the zero fails the simplicity check.
    pub fn refine(&self, b: &Bracket, tol: f64) -> Result<f64> {
        let (z, lo, hi) = brent(|x| self.value(x), b.lo, b.hi)?;
        if hi - lo > tol.max(4.0 * f64::EPSILON * z.abs()) {
            return Err(Error::Convergence { lo, hi, iterations: MAX_ITER });
        }
        let d = self.eval_derivative(z)?;
        let orient = b.f_hi_sign as f64;
        if d == 0.0 || d.signum() != orient {
            return Err(Error::NotSimple { x: z });
        }
        Ok(z)
    }

    /// The first `count` zeros on (start, domain].
    pub fn zeros(&self, count: usize) -> Result<ZeroSet> {
        let br = self.brackets(self.domain().max_abs_x, count)?;
        let zeros = br.iter().map(|b| self.refine(b, DEFAULT_TOL)).collect::<Result<Vec<_>>>()?;
        Ok(ZeroSet {
            params: self.params,
            target: self.target,
            truncated: zeros.len() < count,
            zeros,
            tol: DEFAULT_TOL,
        })
    }

    /// All zeros in (from, to].
    pub fn zeros_between(&self, from: f64, to: f64) -> Result<Vec<f64>> {
        self.brackets_between(from.max(SCAN_EPSILON), to)?.iter().map(|b| self.refine(b, DEFAULT_TOL)).collect()
    }
}

/// Brent's method on a sign-change bracket. Returns the zero and the final
/// bracket.
fn brent<F: Fn(f64) -> Result<f64>>(f: F, lo: f64, hi: f64) -> Result<(f64, f64, f64)> {
    let eps = f64::EPSILON;
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok((a, a, a));
    }
    if fb == 0.0 {
        return Ok((b, b, b));
    }
    if sign(fa) == sign(fb) {
        return Err(Error::Bracket { lo, hi, reason: "no sign change".into() });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    let mut width = (b - a).abs();
    for it in 0..MAX_ITER {
        if sign(fb) == sign(fc) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * eps * b.abs() + 0.5 * f64::MIN_POSITIVE;
        let m = 0.5 * (c - b);
        if fb == 0.0 {
            return Ok((b, b, b));
        }
        if m.abs() <= tol1 {
            let (l, h) = if b < c { (b, c) } else { (c, b) };
            return Ok((b, l, h));
        }
        // rounding noise can stall interpolation; force a bisection unless
        // the bracket halved over the last four steps
        let stalled = it % 4 == 3 && {
            let w = (c - b).abs();
            let s = w > 0.5 * width;
            width = w;
            s
        };
        if !stalled && e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::Convergence { lo, hi, iterations: MAX_ITER })
}

/// Sign-change brackets of the target on (0, x_max] with the default start.
pub fn scan_brackets(p: &CoulombParams, target: Target, x_max: f64, max_count: usize) -> Result<Vec<Bracket>> {
    ZeroFinder::new(p, target, Domain::default())?.brackets(x_max, max_count)
}

pub fn refine(p: &CoulombParams, target: Target, b: &Bracket, tol: f64) -> Result<f64> {
    ZeroFinder::new(p, target, Domain::default())?.refine(b, tol)
}

/// First `count` positive zeros within |x| ≤ 50.
pub fn positive_zeros(p: &CoulombParams, target: Target, count: usize) -> Result<ZeroSet> {
    positive_zeros_in(p, target, count, Domain::default())
}

/// First `count` negative zeros within |x| ≤ 50, ascending.
pub fn negative_zeros(p: &CoulombParams, target: Target, count: usize) -> Result<ZeroSet> {
    negative_zeros_in(p, target, count, Domain::default())
}

pub fn positive_zeros_in(p: &CoulombParams, target: Target, count: usize, domain: Domain) -> Result<ZeroSet> {
    ZeroFinder::new(p, target, domain)?.zeros(count)
}

/// Negative zeros are the negated positive zeros of the same target with η
/// replaced by −η.
pub fn negative_zeros_in(p: &CoulombParams, target: Target, count: usize, domain: Domain) -> Result<ZeroSet> {
    let mut set = positive_zeros_in(&p.reflected(), target, count, domain)?;
    set.zeros = set.zeros.iter().rev().map(|z| -z).collect();
    set.params = *p;
    Ok(set)
}

/// All real nonzero zeros of the target in [−w, w], ascending.
pub fn real_zeros(p: &CoulombParams, target: Target, w: f64) -> Result<Vec<f64>> {
    let domain = Domain::default().widened(w);
    let pos = ZeroFinder::new(p, target, domain)?.zeros_between(SCAN_EPSILON, w)?;
    let neg = ZeroFinder::new(&p.reflected(), target, domain)?.zeros_between(SCAN_EPSILON, w)?;
    Ok(neg.iter().rev().map(|z| -z).chain(pos).collect())
}

impl Domain {
    fn widened(self, w: f64) -> Domain {
        Domain { max_abs_x: self.max_abs_x.max(w) }
    }
}

/// Which set holds the zero closest to the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    AFirst,
    BFirst,
}

/// Relative gaps of an alternating merge a1 < b1 < a2 < … (or b-first),
/// ordered by |x|. Returns the smallest gap and the |x| at which it occurs.
fn interlace_margin(a: &[f64], b: &[f64], pattern: Pattern) -> (f64, f64) {
    let by_abs = |z: &[f64]| {
        let mut v: Vec<f64> = z.iter().map(|x| x.abs()).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let (first, second) = match pattern {
        Pattern::AFirst => (by_abs(a), by_abs(b)),
        Pattern::BFirst => (by_abs(b), by_abs(a)),
    };
    let mut seq = Vec::with_capacity(a.len() + b.len());
    let n = first.len().max(second.len());
    for i in 0..n {
        if let Some(&z) = first.get(i) {
            seq.push(z);
        } else {
            break;
        }
        if let Some(&z) = second.get(i) {
            seq.push(z);
        } else {
            break;
        }
    }
    let mut worst = (f64::INFINITY, f64::NAN);
    for w in seq.windows(2) {
        let g = (w[1] - w[0]) / w[1].abs().max(1.0);
        if g < worst.0 {
            worst = (g, w[1]);
        }
    }
    worst
}

/// Checks strict alternation of two zero sets on the same half-line, ordered
/// by distance from the origin whatever the order of the input lists.
pub fn interlace_check(a: &ZeroSet, b: &ZeroSet, pattern: Pattern) -> Result<CheckReport> {
    if a.len().abs_diff(b.len()) > 1 {
        return Err(Error::LengthMismatch { a: a.len(), b: b.len() });
    }
    let claim = match pattern {
        Pattern::AFirst => "interlace-a-first",
        Pattern::BFirst => "interlace-b-first",
    };
    let spec = format!(
        "a: ell={} eta={} ({} zeros); b: ell={} eta={} ({} zeros)",
        a.params.ell(),
        a.params.eta(),
        a.len(),
        b.params.ell(),
        b.params.eta(),
        b.len()
    );
    let mut r = ReportBuilder::strict(claim, spec);
    let (m, at) = interlace_margin(&a.zeros, &b.zeros, pattern);
    if m.is_finite() {
        r.observe(m, 4.0 * f64::EPSILON, a.params.ell(), a.params.eta(), at);
    } else {
        r.note("fewer than two zeros; nothing to compare");
    }
    Ok(r.finish())
}

/// Smallest relative gap in the merged ascending sequence if consecutive
/// entries always come from different sets, otherwise minus the smallest
/// same-set gap. Returns (margin, location).
pub fn alternation_margin(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut merged: Vec<(f64, u8)> = a.iter().map(|&z| (z, 0)).chain(b.iter().map(|&z| (z, 1))).collect();
    merged.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut worst = (f64::INFINITY, f64::NAN);
    for w in merged.windows(2) {
        let gap = (w[1].0 - w[0].0) / w[1].0.abs().max(w[0].0.abs()).max(1.0);
        let m = if w[0].1 == w[1].1 { -gap.max(f64::MIN_POSITIVE) } else { gap };
        if m < worst.0 {
            worst = (m, w[1].0);
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Ell,
    Eta,
}

/// The k-th positive zero of varphi along a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub axis: Axis,
    pub grid: Vec<f64>,
    pub zero_index: usize,
    pub values: Vec<f64>,
    pub continuity_ok: bool,
    /// Per-step continuity verdicts; entry i covers grid[i] → grid[i+1].
    pub continuity: Vec<bool>,
    pub monotone_increasing: bool,
    pub min_forward_difference: f64,
}

fn sweep_params(p0: &CoulombParams, axis: Axis, s: f64) -> Result<CoulombParams> {
    match axis {
        Axis::Ell => CoulombParams::new(s, p0.eta()),
        Axis::Eta => CoulombParams::new(p0.ell(), s),
    }
}

fn sweep_grid(range: (f64, f64), steps: usize) -> Result<Vec<f64>> {
    let (a, b) = range;
    if !(a < b) || steps == 0 {
        return Err(Error::Parameter(format!("sweep needs from < to and steps >= 1, got [{a}, {b}] with {steps}")));
    }
    Ok((0..=steps).map(|i| if i == steps { b } else { a + (b - a) * i as f64 / steps as f64 }).collect())
}

/// k-th positive zero (1-based) found from scratch.
fn cold_zero(p: &CoulombParams, k: usize) -> Result<f64> {
    let f = ZeroFinder::new(p, Target::Varphi, Domain::default())?.starting_at(SCAN_EPSILON);
    let set = f.zeros(k)?;
    set.zeros.get(k - 1).copied().ok_or(Error::LostZero { k, at: f64::NAN })
}

/// Zero of varphi nearest to `guess`, searched outwards from it.
fn nearest_zero(p: &CoulombParams, guess: f64, k: usize, at: f64) -> Result<f64> {
    let domain = Domain::default();
    let f = ZeroFinder::new(p, Target::Varphi, domain)?;
    let mut r = 0.25 * f.step(guess.max(SCAN_EPSILON), 4.0).min(guess.max(SCAN_EPSILON));
    for _ in 0..12 {
        let lo = (guess - r).max(SCAN_EPSILON);
        let hi = (guess + r).min(domain.max_abs_x);
        if lo < hi {
            let br = f.scan_once(lo, hi, (hi - lo) / 64.0)?;
            if let Some(b) = br.iter().min_by(|x, y| {
                let dx = (0.5 * (x.lo + x.hi) - guess).abs();
                let dy = (0.5 * (y.lo + y.hi) - guess).abs();
                dx.total_cmp(&dy)
            }) {
                return f.refine(b, DEFAULT_TOL);
            }
        }
        r *= 2.0;
    }
    Err(Error::LostZero { k, at })
}

fn finish_trajectory(axis: Axis, grid: Vec<f64>, k: usize, values: Vec<f64>) -> Trajectory {
    let mut continuity = Vec::with_capacity(values.len().saturating_sub(1));
    let mut min_diff = f64::INFINITY;
    for i in 1..values.len() {
        let dg = grid[i] - grid[i - 1];
        let slope = if i >= 2 { ((values[i - 1] - values[i - 2]) / (grid[i - 1] - grid[i - 2])).abs() } else { 1.0 };
        continuity.push((values[i] - values[i - 1]).abs() <= 5.0 * dg * (slope + 1.0));
        min_diff = min_diff.min(values[i] - values[i - 1]);
    }
    Trajectory {
        axis,
        continuity_ok: continuity.iter().all(|&c| c),
        continuity,
        monotone_increasing: min_diff > 0.0,
        min_forward_difference: min_diff,
        grid,
        zero_index: k,
        values,
    }
}

/// Follows the k-th positive zero of varphi (k ≥ 1) across `steps` equal
/// steps of `range`, warm-starting each point from the previous values.
pub fn trace_zero(p0: &CoulombParams, axis: Axis, range: (f64, f64), steps: usize, k: usize) -> Result<Trajectory> {
    if k == 0 {
        return Err(Error::Parameter("zero index k is 1-based".into()));
    }
    let grid = sweep_grid(range, steps)?;
    let mut values: Vec<f64> = Vec::with_capacity(grid.len());
    for (i, &s) in grid.iter().enumerate() {
        let p = sweep_params(p0, axis, s)?;
        let z = if i == 0 {
            cold_zero(&p, k).map_err(|_| Error::LostZero { k, at: s })?
        } else {
            let prev = values[i - 1];
            let guess = if i >= 2 { 2.0 * prev - values[i - 2] } else { prev };
            let guess = if guess > 0.0 { guess } else { prev };
            nearest_zero(&p, guess, k, s)?
        };
        values.push(z);
    }
    Ok(finish_trajectory(axis, grid, k, values))
}

/// As `trace_zero`, but every grid point is computed from scratch.
pub fn trace_zero_cold(
    p0: &CoulombParams,
    axis: Axis,
    range: (f64, f64),
    steps: usize,
    k: usize,
) -> Result<Trajectory> {
    if k == 0 {
        return Err(Error::Parameter("zero index k is 1-based".into()));
    }
    let grid = sweep_grid(range, steps)?;
    let values = grid
        .iter()
        .map(|&s| cold_zero(&sweep_params(p0, axis, s)?, k).map_err(|_| Error::LostZero { k, at: s }))
        .collect::<Result<Vec<_>>>()?;
    Ok(finish_trajectory(axis, grid, k, values))
}

/// ρ* = −(ℓ+1)(ℓ+2)/η, the only possible common zero of φ_ℓ and φ_{ℓ+2}.
pub fn common_zero_candidate(p: &CoulombParams) -> Result<f64> {
    if p.eta() == 0.0 {
        return Err(Error::Parameter("common zero candidate needs eta != 0".into()));
    }
    Ok(-(p.ell() + 1.0) * (p.ell() + 2.0) / p.eta())
}

/// Result of the search for ℓ with varphi_{ℓ,η}(ρ*(ℓ)) = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllStar {
    pub ell: f64,
    pub lo: f64,
    pub hi: f64,
    pub rho_star: f64,
    pub eta: f64,
}

/// Default window for `find_ell_star`.
pub const ELL_STAR_WINDOW: (f64, f64) = (-0.5, -0.01);

fn g_ell_star(eta: f64, ell: f64) -> Result<f64> {
    let p = CoulombParams::new(ell, eta)?;
    let rho = common_zero_candidate(&p)?;
    Ok(Varphi::new(&p, Domain::default())?.value(rho)?.value)
}

/// Bisection on g(ℓ) = varphi_{ℓ,η}(ρ*(ℓ)) over `window` down to width `tol`.
pub fn find_ell_star(eta: f64, window: (f64, f64), tol: f64) -> Result<EllStar> {
    if eta == 0.0 || !eta.is_finite() {
        return Err(Error::Parameter("find_ell_star needs a finite eta != 0".into()));
    }
    let (mut lo, mut hi) = window;
    if !(lo < hi) {
        return Err(Error::Parameter(format!("empty search window [{lo}, {hi}]")));
    }
    let mut glo = g_ell_star(eta, lo)?;
    let ghi = g_ell_star(eta, hi)?;
    if sign(glo) == sign(ghi) {
        return Err(Error::NoSignChange { lo, hi });
    }
    let tol = tol.max(4.0 * f64::EPSILON);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g_ell_star(eta, mid)?;
        if sign(gm) == sign(glo) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    let ell = 0.5 * (lo + hi);
    Ok(EllStar { ell, lo, hi, rho_star: -(ell + 1.0) * (ell + 2.0) / eta, eta })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(l: f64, e: f64) -> CoulombParams {
        CoulombParams::new(l, e).unwrap()
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(zero_lower_bound(&params(0.0, 0.0)), 1.0);
        assert!((zero_lower_bound(&params(1.0, -1.0)) - (5f64.sqrt() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn sine_zeros() {
        let b = scan_brackets(&params(0.0, 0.0), Target::Varphi, 10.0, 10).unwrap();
        assert_eq!(b.len(), 3);
        for (k, br) in b.iter().enumerate() {
            let z = (k + 1) as f64 * PI;
            assert!(br.lo < z && z < br.hi);
        }
        let set = positive_zeros(&params(0.0, 0.0), Target::Varphi, 3).unwrap();
        for (k, z) in set.zeros.iter().enumerate() {
            assert!((z - (k + 1) as f64 * PI).abs() < 1e-13);
        }
        let neg = negative_zeros(&params(0.0, 0.0), Target::Varphi, 2).unwrap();
        assert!((neg.zeros[0] + 2.0 * PI).abs() < 1e-13 && (neg.zeros[1] + PI).abs() < 1e-13);
    }

    #[test]
    fn refine_examples() {
        let p = params(0.0, 0.0);
        let b = Bracket::new(3.0, 4.0, 1.0, -1.0).unwrap();
        assert!((refine(&p, Target::Varphi, &b, 1e-12).unwrap() - PI).abs() < 1e-14);
        let b = Bracket::new(6.0, 7.0, -1.0, 1.0).unwrap();
        assert!((refine(&p, Target::Varphi, &b, 1e-12).unwrap() - 2.0 * PI).abs() < 1e-14);
        assert!(Bracket::new(4.0, 3.0, 1.0, -1.0).is_err());
        assert!(Bracket::new(3.0, 4.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn matches_bisection_oracle() {
        let p = params(0.0, 1.0);
        let f = ZeroFinder::new(&p, Target::Varphi, Domain::default()).unwrap();
        let b = f.brackets(50.0, 1).unwrap()[0];
        let z = f.refine(&b, DEFAULT_TOL).unwrap();
        let (mut lo, mut hi) = (b.lo, b.hi);
        let slo = f.eval(lo).unwrap().0.signum();
        while hi - lo > 1e-12 {
            let m = 0.5 * (lo + hi);
            if f.eval(m).unwrap().0.signum() == slo {
                lo = m;
            } else {
                hi = m;
            }
        }
        assert!((z - 0.5 * (lo + hi)).abs() < 1e-10);
        assert!(z > 1.0 + 2f64.sqrt());
    }

    #[test]
    fn scan_matches_dense_oracle() {
        for &(l, e) in &[(-5.0 / 3.0, 1.0 / 3.0), (0.2, -0.2), (-1.4, 3.0), (2.5, -2.0)] {
            let p = params(l, e);
            let f = ZeroFinder::new(&p, Target::Varphi, Domain::default()).unwrap().starting_at(SCAN_EPSILON);
            let b = f.brackets(15.0, 100).unwrap();
            let mut dense = 0;
            let mut prev = f.eval(1e-3).unwrap().0;
            for i in 2..=15000 {
                let v = f.eval(i as f64 * 1e-3).unwrap().0;
                if (v < 0.0) != (prev < 0.0) {
                    dense += 1;
                }
                prev = v;
            }
            assert_eq!(b.len(), dense, "({l},{e})");
        }
    }

    #[test]
    fn reflection_of_zero_sets() {
        let a = negative_zeros(&params(0.2, 0.2), Target::Varphi, 5).unwrap();
        let b = positive_zeros(&params(0.2, -0.2), Target::Varphi, 5).unwrap();
        for (x, y) in a.zeros.iter().zip(b.zeros.iter().rev()) {
            assert!((x + y).abs() < 1e-10);
        }
    }

    #[test]
    fn bessel_interlacing() {
        let a = positive_zeros(&params(1.0, 0.0), Target::Varphi, 10).unwrap();
        let b = positive_zeros(&params(2.0, 0.0), Target::Varphi, 10).unwrap();
        assert!(interlace_check(&a, &b, Pattern::AFirst).unwrap().passed);
        assert!(!interlace_check(&a, &b, Pattern::BFirst).unwrap().passed);
        let c = positive_zeros(&params(1.0, 0.0), Target::Varphi, 5).unwrap();
        assert!(matches!(interlace_check(&a, &c, Pattern::AFirst), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn common_zero_examples() {
        assert!((common_zero_candidate(&params(-0.4, 0.5)).unwrap() + 1.92).abs() < 1e-15);
        assert_eq!(common_zero_candidate(&params(0.0, 1.0)).unwrap(), -2.0);
        assert_eq!(common_zero_candidate(&params(-1.0, 0.3)).unwrap(), 0.0);
        assert!(common_zero_candidate(&params(0.0, 0.0)).is_err());
        assert!(find_ell_star(0.0, ELL_STAR_WINDOW, 1e-10).is_err());
    }

    #[test]
    fn alternation() {
        assert!(alternation_margin(&[1.0, 3.0], &[2.0, 4.0]).0 > 0.0);
        assert!(alternation_margin(&[1.0, 2.0], &[3.0]).0 < 0.0);
    }
}
