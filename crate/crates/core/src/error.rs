use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is numerically singular")]
    Singular,

    #[error("Y+ is numerically singular for this reconstruction")]
    SingularYPlus,

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("invalid reconstruction: {0}")]
    InvalidReconstruction(String),

    #[error("polynomial has degree {0}, at least 1 is required")]
    DegreeTooLow(usize),

    #[error("root iteration did not converge after {sweeps} sweeps (residual {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },

    #[error("a root lies within tolerance of the circle |k - c| = {radius}")]
    BoundaryAmbiguity { radius: f64 },

    #[error("Hersh separation failed at z = {z}: {reason}")]
    SeparationFailure { z: String, reason: String },

    #[error("stable root selection failed at z = {z}: {reason}")]
    SelectionFailure { z: String, reason: String },

    #[error("scheme is not Cauchy-stable: |gamma({xi})| = {modulus}")]
    CauchyViolation { xi: f64, modulus: f64 },

    #[error("roots are not distinct, the Vandermonde route does not apply")]
    MultipleRoot,

    #[error("curve passes through the origin")]
    OriginOnCurve,

    #[error("parameter grid is empty")]
    EmptyGrid,

    #[error("spectral radius iteration did not converge (last estimate {estimate})")]
    SpectralNonConvergence { estimate: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
