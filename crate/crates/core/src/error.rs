use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("singular matrix at {context} (|det| = {det:e}, threshold {threshold:e})")]
    Singular {
        det: f64,
        threshold: f64,
        context: String,
    },

    #[error("degenerate spectrum: eigenvalues {0} and {1} coincide")]
    DegenerateSpectrum(String, String),

    #[error("matrix does not have the stated eigenvalues: minimal-polynomial residual {0:e}")]
    NotAnnihilated(f64),

    #[error("matrix is not Hermitian (|H - H^dag| = {0:e})")]
    NotHermitian(f64),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// A parameter point outside the domain an operation is defined on.
    /// The message names the violated constraint.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Boltzmann weight w{0} vanishes")]
    ZeroWeight(usize),

    #[error("degenerate normalization: rho = {0:e}")]
    DegenerateNormalization(f64),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Attach a parameter-point description to a singular-matrix error.
    pub fn at(self, point: impl Into<String>) -> Self {
        match self {
            Error::Singular { det, threshold, .. } => Error::Singular {
                det,
                threshold,
                context: point.into(),
            },
            other => other,
        }
    }

    /// Usage and domain errors map to CLI exit code 2.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::InvalidParameter(_) | Error::ZeroWeight(_) | Error::Unsupported(_)
        )
    }
}
