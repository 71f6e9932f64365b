use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The event sits on the light cone |t| = |z|, where no quadrant chart applies.
    #[error("event (t={t}, z={z}) lies on the light cone; no quadrant chart covers it")]
    LightCone { t: f64, z: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("quadrature did not converge: error estimate {error:e} exceeds tolerance {tolerance:e} after {evaluations} evaluations")]
    Quadrature {
        error: f64,
        tolerance: f64,
        evaluations: usize,
    },

    /// Richardson extrapolation saw successive corrections that failed to shrink.
    #[error("extrapolation is not converging monotonically; correction sequence {corrections:?}")]
    Convergence { corrections: Vec<f64> },

    #[error("coincident points with zero regulator make the Wightman function singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a numerical procedure rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. } | Error::Convergence { .. } | Error::Singular
        )
    }
}
