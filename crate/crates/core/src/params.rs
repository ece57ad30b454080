use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance from ℓ = −(n+1)/2 inside which ℓ is treated as a half-integer.
pub const HALF_INTEGER_TOL: f64 = 1e-9;

/// Parameter regime of a (ℓ, η) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// 2ℓ+2 is not a non-positive integer; Γ(2ℓ+2) is finite.
    Regular,
    /// ℓ = −(n+1)/2 with n ≥ 1, a pole of Γ(2ℓ+2).
    HalfInteger { n: u32 },
}

/// Angular momentum ℓ and Sommerfeld parameter η.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulombParams {
    ell: f64,
    eta: f64,
}

impl CoulombParams {
    pub fn new(ell: f64, eta: f64) -> Result<Self> {
        if !ell.is_finite() || !eta.is_finite() {
            return Err(Error::NonFinite { ell, eta });
        }
        Ok(Self { ell, eta })
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn regime(&self) -> Regime {
        // ℓ = −(n+1)/2  ⇔  n = −2ℓ − 1
        let n = -2.0 * self.ell - 1.0;
        let nearest = n.round();
        if nearest >= 1.0 && (self.ell + (nearest + 1.0) / 2.0).abs() <= HALF_INTEGER_TOL {
            Regime::HalfInteger { n: nearest as u32 }
        } else {
            Regime::Regular
        }
    }

    pub fn is_regular(&self) -> bool {
        self.regime() == Regime::Regular
    }

    /// Same ℓ with η negated; maps negative-axis quantities onto the positive axis.
    pub fn reflected(&self) -> Self {
        Self { ell: self.ell, eta: -self.eta }
    }

    /// ℓ shifted by `delta`, η unchanged.
    pub fn shifted(&self, delta: f64) -> Result<Self> {
        Self::new(self.ell + delta, self.eta)
    }

    pub(crate) fn require_regular(&self, what: &str) -> Result<()> {
        match self.regime() {
            Regime::Regular => Ok(()),
            Regime::HalfInteger { n } => Err(Error::Regime {
                ell: self.ell,
                eta: self.eta,
                reason: format!("{what} undefined at half-integer ell = -({n}+1)/2 (pole of Gamma(2ell+2))"),
            }),
        }
    }

    /// √((ℓ+1)² + η²)
    pub fn rho_norm(&self) -> f64 {
        (self.ell + 1.0).hypot(self.eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let p = |l| CoulombParams::new(l, 0.3).unwrap().regime();
        assert_eq!(p(0.0), Regime::Regular);
        assert_eq!(p(-0.5), Regime::Regular);
        assert_eq!(p(-1.0), Regime::HalfInteger { n: 1 });
        assert_eq!(p(-1.5), Regime::HalfInteger { n: 2 });
        assert_eq!(p(-1.5 + 5e-10), Regime::HalfInteger { n: 2 });
        assert_eq!(p(-1.5 + 1e-8), Regime::Regular);
        assert_eq!(p(-3.0), Regime::HalfInteger { n: 5 });
        assert_eq!(p(-5.0 / 3.0), Regime::Regular);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(CoulombParams::new(f64::NAN, 0.0).is_err());
        assert!(CoulombParams::new(0.0, f64::INFINITY).is_err());
    }
}
