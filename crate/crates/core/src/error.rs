use thiserror::Error;

/// Errors raised by evaluation, zero finding and polynomial construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `ell` or `eta` is NaN or infinite.
    #[error("non-finite parameter: ell = {ell}, eta = {eta}")]
    NonFinite { ell: f64, eta: f64 },

    /// The requested quantity does not exist at this (ell, eta), typically a
    /// pole of Γ(2ℓ+2) at ℓ ∈ {−1, −3/2, −2, …}.
    #[error("regime error at ell = {ell}, eta = {eta}: {reason}")]
    Regime { ell: f64, eta: f64, reason: String },

    /// A parameter falls outside the range in which the family is defined.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The abscissa lies outside the evaluation domain.
    #[error("domain error: x = {x} ({reason})")]
    Domain { x: f64, reason: String },

    /// log Γ evaluated at (or within 1e-12 of) a non-positive integer.
    #[error("pole of gamma at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("invalid bracket [{lo}, {hi}]: {reason}")]
    Bracket { lo: f64, hi: f64, reason: String },

    #[error("root refinement did not converge after {iterations} iterations on [{lo}, {hi}]")]
    Convergence { lo: f64, hi: f64, iterations: usize },

    /// The refined zero failed the derivative sign consistency check.
    #[error("zero near x = {x} is not simple")]
    NotSimple { x: f64 },

    #[error("zero sets differ in length by more than one ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },

    /// A traced zero left the evaluation window during a parameter sweep.
    #[error("lost zero k = {k} at parameter value {at}")]
    LostZero { k: usize, at: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// A pole of the Mittag-Leffler expansion lies too close to the abscissa.
    #[error("x = {x} lies within {distance:e} of the zero {zero}")]
    PoleProximity { x: f64, zero: f64, distance: f64 },

    /// The explicit hypergeometric form left an imaginary residue above the
    /// conditioning threshold.
    #[error("ill-conditioned explicit form: relative imaginary residue {residue:e}")]
    Conditioning { residue: f64 },

    /// A structural guarantee failed numerically (for example a bracket that
    /// must exist by interlacing could not be found).
    #[error("property violation: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
