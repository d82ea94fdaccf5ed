use thiserror::Error;

/// Errors raised by density evaluation, transforms and samplers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("result overflows f64 at argument {0}")]
    Overflow(f64),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("series did not converge within {terms} terms (last |term| = {last_term:e})")]
    NonConvergence { terms: usize, last_term: f64 },

    #[error("abscissa {re} + {im}i lies outside the analyticity strip ({lo}, {hi})")]
    Strip { re: f64, im: f64, lo: f64, hi: f64 },

    #[error("quadrature missed its tolerance: estimate {value:e}, error {error:e}")]
    Quadrature { value: f64, error: f64 },

    #[error("sampler efficiency too low: {0}")]
    Efficiency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg()))
    }
}
