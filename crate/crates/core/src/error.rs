use thiserror::Error;

/// Crate-wide error type. Numerical operations never return NaN silently;
/// anything outside a stated domain or budget surfaces here.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("domain violation: {0}")]
    Domain(String),

    #[error("derivative depth exhausted: {0}")]
    DerivativeDepth(String),

    #[error("generator word `{word}` exceeds degree cap {cap}")]
    DegreeCap { word: String, cap: usize },

    #[error("orbital projection needs J-degree <= 1, found word `{0}`")]
    JDegree(String),

    #[error("series order {0} exceeds the exact-arithmetic budget")]
    SeriesOrder(usize),

    #[error("quadrature did not reach tolerance {tol:e} on [{a}, {b}] (best error {err:e})")]
    Quadrature { a: f64, b: f64, tol: f64, err: f64 },

    #[error("ODE integration failed: {0}")]
    Ode(String),

    #[error("numerical instability: {0}")]
    Instability(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
