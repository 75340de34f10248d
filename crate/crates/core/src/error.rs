use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("plate separation must be positive and finite, got l = {0}")]
    InvalidSeparation(f64),

    #[error("atom position must be finite and nonnegative, got s = {0}")]
    InvalidPosition(f64),

    #[error("s exceeds l (s = {s}, l = {l})")]
    PositionOutsideSlab { s: f64, l: f64 },

    #[error("invalid transition: {0}")]
    InvalidTransition(&'static str),

    #[error("mode n = {n} with {pol} polarization vanishes identically for {config}")]
    NullMode {
        config: &'static str,
        n: u32,
        pol: &'static str,
    },

    #[error("mode has zero frequency (k_par = 0 and k_z = 0)")]
    ZeroFrequency,

    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(String),

    #[error("oracle did not converge: ratio {coarse} -> {fine} on grid doubling (relative change {change:.3e})")]
    NonConvergence { coarse: f64, fine: f64, change: f64 },

    #[error("orientation {0} has no suppression scan")]
    UnsupportedOrientation(&'static str),
}
