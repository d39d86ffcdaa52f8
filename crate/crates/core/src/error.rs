use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms")]
    SeriesNonconvergence { terms: usize },
    #[error("quadrature did not converge (last levels differ by 2^{log2_diff:.1})")]
    QuadratureNonconvergence { log2_diff: f64 },
    #[error("derivative is unreliable: extrapolation tableau is noisy")]
    UnreliableDerivative,
    #[error("singular moment matrix: {0}")]
    InvalidMeasure(String),
    #[error("precision exhausted at {bits} bits (log2 condition {log2_condition:.1})")]
    PrecisionExhausted { bits: u32, log2_condition: f64 },
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("index {index} exceeds available range {max}")]
    IndexOutOfRange { index: usize, max: usize },
}
