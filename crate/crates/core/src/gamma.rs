//! Gamma function helpers: complex log Γ by the Lanczos approximation, and
//! real Γ with sign tracking for negative arguments.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const POLE_TOL: f64 = 1e-12;

fn near_pole(re: f64, im: f64) -> bool {
    re <= POLE_TOL && im.abs() <= POLE_TOL && (re - re.round()).abs() <= POLE_TOL
}

/// log Γ(z) for complex z away from the poles.
///
/// Uses the reflection formula for Re z < 1/2. The real part is ln|Γ(z)|; the
/// imaginary part is continuous on Re z ≥ 1/2 and may differ from the
/// principal branch by a multiple of 2π on the reflected side.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if near_pole(z.re, z.im) {
        return Err(Error::GammaPole { re: z.re, im: z.im });
    }
    Ok(log_gamma_unchecked(z))
}

fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        pi.ln() - (pi * z).sin().ln() - log_gamma_unchecked(Complex64::new(1.0, 0.0) - z)
    } else {
        let z = z - 1.0;
        let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
        for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln()
    }
}

/// ln|Γ(x)| and the sign of Γ(x) for real x.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if near_pole(x, 0.0) {
        return Err(Error::GammaPole { re: x, im: 0.0 });
    }
    Ok(ln_gamma_signed_unchecked(x))
}

fn ln_gamma_signed_unchecked(x: f64) -> (f64, f64) {
    if x < 0.5 {
        // Γ(x) = π / (sin(πx) Γ(1−x)), with Γ(1−x) > 0.
        let s = (PI * x).sin();
        let (lg, _) = ln_gamma_signed_unchecked(1.0 - x);
        (PI.ln() - s.abs().ln() - lg, s.signum())
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln(), 1.0)
    }
}

/// Γ(x) for real x; errors at the poles.
pub fn gamma(x: f64) -> Result<f64> {
    let (lg, s) = ln_gamma_signed(x)?;
    Ok(s * lg.exp())
}

/// 1/Γ(x), an entire function: exactly zero at the poles of Γ.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return 0.0;
    }
    let (lg, s) = ln_gamma_signed_unchecked(x);
    s * (-lg).exp()
}
