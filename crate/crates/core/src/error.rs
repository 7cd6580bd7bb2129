use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("Ad(k)a != a (residual {0:.3e})")]
    NonCommutingData(f64),
    #[error("eigenvalues do not pair as +-lambda: {0}")]
    UnpairedSpectrum(String),
    #[error("det(1 - Ad(k^-1)) on the regular part is {0:.3e}; element is not regular enough")]
    SingularCentralizer(f64),
    #[error("quadrature did not converge: estimate {estimate:.3e} > tolerance {tol:.3e}")]
    QuadratureNotConverged { estimate: f64, tol: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("acyclicity violated: holonomy angle {0} is a multiple of 2pi")]
    AcyclicityViolated(f64),
    #[error("Re(sigma) = {re} lies below the abscissa {abscissa}")]
    DivergentRegion { re: f64, abscissa: f64 },
    #[error("series truncation hit the cap of {0} terms")]
    TruncationCap(usize),
    #[error("integrand has non-negligible imaginary part {0:.3e}")]
    NonRealResult(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNotConverged { .. }
                | Error::TruncationCap(_)
                | Error::NonRealResult(_)
                | Error::SingularCentralizer(_)
        )
    }
}
