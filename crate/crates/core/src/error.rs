use crate::Complex;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown constant: {0}")]
    UnknownConstant(String),

    #[error("pole proximity: |s - 1| = {distance:.3e} is below the 1e-6 exclusion radius")]
    PoleProximity { distance: f64 },

    #[error("domain: {0}")]
    Domain(String),

    #[error("series undefined at negative integer shift (omega = {0})")]
    SeriesUndefined(Complex),

    #[error("critical-line integral requires Re omega > -1/2 (omega = {0})")]
    HalfLineDomain(Complex),

    #[error("3/2-line integral requires Re omega > -3/2 (omega = {0})")]
    ThreeHalvesLineDomain(Complex),

    #[error("quadrature did not converge after {nodes} nodes (best estimate {best}, last difference {last_diff:e})")]
    NoConvergence {
        best: Complex,
        last_diff: f64,
        nodes: u64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}
