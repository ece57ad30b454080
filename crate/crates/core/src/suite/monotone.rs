//! Monotonicity of the positive zeros in ℓ and η, and the interlacing chain
//! that follows from it.

use super::{zeros_from_origin, Grid};
use crate::params::CoulombParams;
use crate::report::{CheckReport, ReportBuilder};
use crate::zeros::{negative_zeros_in, trace_zero, Axis, Target, Trajectory};

const KS: [usize; 3] = [1, 2, 3];
pub const ELL_SWEEP: (f64, f64) = (-0.4, 3.0);
pub const ELL_SWEEP_ETA: f64 = -0.2;
pub const ETA_SWEEP: (f64, f64) = (-3.0, 3.0);
pub const ETA_SWEEP_ELL: f64 = 0.2;
const STEPS: usize = 68;
const GRID_STEPS: usize = 34;
/// Pair (ℓ, L) with −1/2 < ℓ < L ≤ ℓ + 1 for the chain check.
pub const CHAIN_PAIR: (f64, f64) = (0.2, 0.9);
const CHAIN_ZEROS: usize = 10;

fn observe_trajectory(r: &mut ReportBuilder, t: &Trajectory, ell: f64, eta: f64) {
    let step = t.grid[1] - t.grid[0];
    let i = t
        .values
        .windows(2)
        .enumerate()
        .min_by(|a, b| (a.1[1] - a.1[0]).total_cmp(&(b.1[1] - b.1[0])))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let at = t.values[i];
    let (ell, eta) = match t.axis {
        Axis::Ell => (t.grid[i], eta),
        Axis::Eta => (ell, t.grid[i]),
    };
    // The forward difference is compared against its rounding, not against x.
    r.observe(t.min_forward_difference / step, 1e-10 / step, ell, eta, at);
    if !t.continuity_ok {
        r.fail(format!("k={}: trajectory lost continuity", t.zero_index), ell, eta, at);
    }
}

fn sweep(r: &mut ReportBuilder, p0: &CoulombParams, axis: Axis, range: (f64, f64), steps: usize) {
    for k in KS {
        match trace_zero(p0, axis, range, steps, k) {
            Ok(t) => observe_trajectory(r, &t, p0.ell(), p0.eta()),
            Err(e) => r.fail(format!("k={k}: {e}"), p0.ell(), p0.eta(), f64::NAN),
        }
    }
}

/// ℓ ↦ ρ_{ℓ,η,k} is strictly increasing on (−1/2, ∞), k = 1, 2, 3.
pub fn check_monotone_ell(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("zero-increasing-in-ell", grid.describe());
    let p0 = CoulombParams::new(ELL_SWEEP.0, ELL_SWEEP_ETA).unwrap();
    sweep(&mut r, &p0, Axis::Ell, ELL_SWEEP, STEPS);
    for &eta in &grid.eta {
        if eta != ELL_SWEEP_ETA {
            let p = CoulombParams::new(ELL_SWEEP.0, eta).unwrap();
            sweep(&mut r, &p, Axis::Ell, ELL_SWEEP, GRID_STEPS);
        }
    }
    r.finish()
}

/// η ↦ ρ_{ℓ,η,k} is strictly increasing for ℓ > −1/2, k = 1, 2, 3.
pub fn check_monotone_eta(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("zero-increasing-in-eta", grid.describe());
    let p0 = CoulombParams::new(ETA_SWEEP_ELL, ETA_SWEEP.0).unwrap();
    sweep(&mut r, &p0, Axis::Eta, ETA_SWEEP, STEPS);
    for &ell in grid.ell.iter().filter(|&&l| l > -0.5 && l != ETA_SWEEP_ELL) {
        let p = CoulombParams::new(ell, ETA_SWEEP.0).unwrap();
        sweep(&mut r, &p, Axis::Eta, ETA_SWEEP, GRID_STEPS);
    }
    r.finish()
}

/// The k-th negative zero, found afresh at every η, also increases with η.
pub fn check_negative_zero_monotone_eta(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("negative-zero-increasing-in-eta", grid.describe());
    let domain = grid.domain();
    let etas: Vec<f64> =
        (0..=GRID_STEPS).map(|i| ETA_SWEEP.0 + (ETA_SWEEP.1 - ETA_SWEEP.0) * i as f64 / GRID_STEPS as f64).collect();
    let step = etas[1] - etas[0];
    let mut ells = vec![ETA_SWEEP_ELL];
    ells.extend(grid.ell.iter().copied().filter(|&l| l > -0.5 && l != ETA_SWEEP_ELL));
    for ell in ells {
        let mut prev: Option<Vec<f64>> = None;
        for &eta in &etas {
            let p = CoulombParams::new(ell, eta).unwrap();
            let z = match negative_zeros_in(&p, Target::Varphi, KS.len(), domain) {
                Ok(s) if s.len() == KS.len() => s.zeros.into_iter().rev().collect::<Vec<_>>(),
                Ok(_) => {
                    r.fail("fewer than three negative zeros in the window", ell, eta, f64::NAN);
                    prev = None;
                    continue;
                }
                Err(e) => {
                    r.fail(format!("{e}"), ell, eta, f64::NAN);
                    prev = None;
                    continue;
                }
            };
            if let Some(pz) = &prev {
                for (a, b) in pz.iter().zip(&z) {
                    r.observe((b - a) / step, 1e-10 / step, ell, eta, *b);
                }
            }
            prev = Some(z);
        }
    }
    r.finish()
}

/// 0 < ρ_{ℓ,1} < ρ_{L,1} < ρ_{ℓ+1,1} < ρ_{ℓ,2} < … for −1/2 < ℓ < L < ℓ + 1.
pub fn check_ell_chain(grid: &Grid) -> CheckReport {
    let mut r = ReportBuilder::strict("ell-chain-interlace", grid.describe());
    let domain = grid.domain();
    let (l, big_l) = CHAIN_PAIR;
    for &eta in &grid.eta {
        let sets: crate::Result<Vec<Vec<f64>>> = [l, big_l, l + 1.0]
            .iter()
            .map(|&ell| zeros_from_origin(&CoulombParams::new(ell, eta)?, Target::Varphi, CHAIN_ZEROS, domain))
            .collect();
        let sets = match sets {
            Ok(s) => s,
            Err(e) => {
                r.fail(format!("{e}"), l, eta, f64::NAN);
                continue;
            }
        };
        let n = sets.iter().map(Vec::len).min().unwrap_or(0);
        let mut seq = Vec::with_capacity(3 * n);
        for k in 0..n {
            seq.extend(sets.iter().map(|s| s[k]));
        }
        for w in seq.windows(2) {
            r.observe((w[1] - w[0]) / w[1].max(1.0), 4.0 * f64::EPSILON, l, eta, w[1]);
        }
    }
    r.finish()
}
