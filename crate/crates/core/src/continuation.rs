//! Analytic continuation of φ along the positive half-line.
//!
//! Past `SERIES_RADIUS` the Maclaurin series loses accuracy to cancellation,
//! so φ is carried forward by local Taylor expansions of the ODE
//! x·φ'' + 2(ℓ+1)·φ' + (x − 2η)·φ = 0. The expansion centres form a fixed
//! ladder independent of the evaluation point, which makes every value
//! bit-reproducible no matter how far the ladder was built.

use crate::series::{series_jet, Jet};

/// Beyond this |x| values come from the continuation ladder.
pub const SERIES_RADIUS: f64 = 1.5;
const MAX_STEP: f64 = 1.0;
const MAX_TERMS: usize = 400;
const TAIL_TOL: f64 = 1e-17;

#[derive(Debug, Clone)]
pub(crate) struct Ladder {
    ell: f64,
    eta: f64,
    centres: Vec<f64>,
    f: Vec<f64>,
    df: Vec<f64>,
    /// accumulated relative error of the state at each centre
    rel: Vec<f64>,
    terms: Vec<usize>,
}

struct Local {
    f: f64,
    df: f64,
    d2f: f64,
    abs0: f64,
    abs1: f64,
    abs2: f64,
    terms: usize,
}

/// Sums the Taylor expansion about `c` with φ(c) = f, φ'(c) = df at offset t.
fn local_expand(ell: f64, eta: f64, c: f64, f: f64, df: f64, t: f64) -> Local {
    let (mut b_prev, mut b_cur, mut b_next) = (0.0f64, f, df);
    // b_{j-1}, b_j, b_{j+1} as j runs
    let mut s0 = f;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    let mut abs0 = f.abs();
    let mut abs1 = 0.0;
    let mut abs2 = 0.0;
    let mut pw_prev = 1.0; // t^(j-1) for j = 1
    let mut pw_prev2 = 0.0; // t^(j-2)
    let mut j = 0usize;
    let mut last_terms = f64::INFINITY;
    loop {
        j += 1;
        // b_j is b_next here; accumulate its contributions
        let b = b_next;
        let jf = j as f64;
        let pw = pw_prev * t;
        let t0 = b * pw;
        let t1 = jf * b * pw_prev;
        let t2 = if j >= 2 { jf * (jf - 1.0) * b * pw_prev2 } else { 0.0 };
        s0 += t0;
        s1 += t1;
        s2 += t2;
        abs0 += t0.abs();
        abs1 += t1.abs();
        abs2 += t2.abs();
        let size = t0.abs() + t1.abs() + t2.abs();
        if j >= 4 && size + last_terms <= TAIL_TOL * (abs0 + abs1 + abs2)
            || j >= MAX_TERMS
            || (size == 0.0 && last_terms == 0.0 && j >= 4)
        {
            break;
        }
        last_terms = size;
        // b_{j+1} from c(j+1)j b_{j+1} + j(j+2ℓ+1) b_j + (c−2η) b_{j−1} + b_{j−2} = 0
        let b_jm1 = b_cur;
        let b_jm2 = b_prev;
        let nb = -(jf * (jf + 2.0 * ell + 1.0) * b + (c - 2.0 * eta) * b_jm1 + b_jm2) / (c * (jf + 1.0) * jf);
        b_prev = b_cur;
        b_cur = b;
        b_next = nb;
        pw_prev2 = pw_prev;
        pw_prev = pw;
    }
    Local { f: s0, df: s1, d2f: s2, abs0, abs1, abs2, terms: j + 1 }
}

impl Ladder {
    /// An empty ladder; centres are added by `extend_to`.
    pub fn new(ell: f64, eta: f64) -> Self {
        Self { ell, eta, centres: Vec::new(), f: Vec::new(), df: Vec::new(), rel: Vec::new(), terms: Vec::new() }
    }

    /// Builds centres until the ladder covers (SERIES_RADIUS, x].
    pub fn extend_to(&mut self, x: f64) {
        if x <= SERIES_RADIUS {
            return;
        }
        if self.centres.is_empty() {
            let j = series_jet(self.ell, self.eta, SERIES_RADIUS);
            let scale = j.f.abs() + j.df.abs();
            self.centres.push(SERIES_RADIUS);
            self.f.push(j.f);
            self.df.push(j.df);
            self.rel.push((j.err_f + j.err_df) / scale);
            self.terms.push(j.terms);
        }
        let eps = f64::EPSILON;
        while *self.centres.last().unwrap() < x {
            let i = self.centres.len() - 1;
            let c = self.centres[i];
            let h = MAX_STEP.min(0.5 * c);
            let loc = local_expand(self.ell, self.eta, c, self.f[i], self.df[i], h);
            let scale = loc.f.abs() + loc.df.abs();
            let rounding = eps * (4.0 + loc.terms as f64 / 4.0) * (loc.abs0 + loc.abs1) / scale;
            self.centres.push(c + h);
            self.f.push(loc.f);
            self.df.push(loc.df);
            self.rel.push(self.rel[i] + rounding);
            self.terms.push(self.terms[i] + loc.terms);
        }
    }

    pub fn reach(&self) -> f64 {
        self.centres.last().copied().unwrap_or(SERIES_RADIUS)
    }

    /// φ, φ', φ'' at x in (SERIES_RADIUS, reach].
    pub fn jet(&self, x: f64) -> Jet {
        debug_assert!(x > SERIES_RADIUS && x <= self.reach());
        let i = self.centres.partition_point(|&c| c < x) - 1;
        let c = self.centres[i];
        let loc = local_expand(self.ell, self.eta, c, self.f[i], self.df[i], x - c);
        let eps = f64::EPSILON;
        let rel = self.rel[i];
        let k = 4.0 + loc.terms as f64 / 4.0;
        Jet {
            f: loc.f,
            df: loc.df,
            d2f: loc.d2f,
            err_f: rel * (loc.f.abs() + loc.df.abs()) + eps * k * loc.abs0 + eps * x * loc.df.abs(),
            err_df: rel * (loc.f.abs() + loc.df.abs()) + eps * k * loc.abs1 + eps * x * loc.d2f.abs(),
            err_d2f: rel * (loc.f.abs() + loc.df.abs() + loc.d2f.abs()) + eps * k * loc.abs2,
            terms: self.terms[i] + loc.terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_over_x_far_out() {
        let mut l = Ladder::new(0.0, 0.0);
        l.extend_to(50.0);
        for &x in &[1.6, 2.0, 7.3, 19.99, 31.0, 50.0] {
            let j = l.jet(x);
            let f = x.sin() / x;
            let df = (x * x.cos() - x.sin()) / (x * x);
            assert!((j.f - f).abs() < 1e-14, "x={x}: {} vs {f}", j.f);
            assert!((j.df - df).abs() < 1e-14, "x={x}");
            assert!(j.err_f >= 0.0 && j.err_f < 1e-13);
        }
    }

    #[test]
    fn centres_do_not_depend_on_reach() {
        let mut a = Ladder::new(0.2, -0.7);
        a.extend_to(9.0);
        let mut b = Ladder::new(0.2, -0.7);
        b.extend_to(40.0);
        for &x in &[2.5, 6.0, 8.99] {
            assert_eq!(a.jet(x).f, b.jet(x).f);
        }
    }
}
