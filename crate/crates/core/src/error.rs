use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no sign change on bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("non-finite right-hand side at t = {t}")]
    NonFiniteRhs { t: f64 },

    #[error("singular matrix: pivot {pivot:e} at row {row}")]
    SingularMatrix { row: usize, pivot: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("adiabatic exponent must satisfy gamma > 1, got {0}")]
    InvalidGamma(f64),

    #[error("invalid Riemann pair: Z = {z} < W = {w}")]
    InvalidPair { w: f64, z: f64 },

    #[error("no characteristic foot found for (t, r) = ({t}, {r})")]
    NoBracket { t: f64, r: f64 },

    #[error("(t, r) = ({t}, {r}) lies beyond the gradient blow-up time")]
    BeyondBlowup { t: f64, r: f64 },

    #[error("characteristic iteration did not converge after {iterations} iterations at (t, r) = ({t}, {r})")]
    NoConvergence { t: f64, r: f64, iterations: usize },

    #[error("jump endpoints coincide (u_left = u_right = {0})")]
    DegenerateJump(f64),

    #[error("radius must be positive, got {0}")]
    DegenerateRadius(f64),

    #[error("(t, r) = ({t}, {r}) is outside the closed-form validity region (alpha = {alpha})")]
    DomainExceeded { t: f64, r: f64, alpha: f64 },

    #[error("profile reaches vacuum (W0 = Z0) on an interval around r = {r}")]
    DegenerateProfile { r: f64 },

    #[error("gas density {rho_g} is at the liquid density pole {rho_l}")]
    DensityPole { rho_g: f64, rho_l: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("Robin coupling denominator K2*rho_G - K3 = {0:e} is singular")]
    CouplingSingular(f64),

    #[error("non-finite Galerkin state at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("assumption violated: {0}")]
    AssumptionViolation(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, err: impl std::fmt::Display) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
