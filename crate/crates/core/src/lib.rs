//! Numerics for the alternating zeta-value series
//! `nu(omega) = sum_{j>=2} (-1)^j zeta(j) / (j + omega)`.
//!
//! The series is evaluated three independent ways: directly (split and
//! accelerated, with a certified tail), as a `sech`-weighted integral of
//! `zeta` along the critical line `Re s = 1/2`, and as the analogous integral
//! along `Re s = 3/2`. Around that sit the closed-form integral identities,
//! a numerical replay of the contour/residue argument behind the critical-line
//! formula, and report serialization used by the `zetaline` binary.

pub mod constants;
mod error;
pub mod integral_reps;
pub mod nu_series;
pub mod proof_checks;
pub mod quadrature;
pub mod record;
pub mod report;
pub mod special;

pub use error::{Error, Result};
pub use record::VerificationRecord;

use serde::{Deserialize, Serialize};

/// Complex scalar used for every argument and integrand value.
pub type Complex = num_complex::Complex64;

/// How an [`EvalResult`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    EulerMaclaurin,
    EtaOracle,
    SeriesDirect,
    SeriesAccelerated,
    IntegralHalfLine,
    IntegralThreeHalvesLine,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::EtaOracle => "eta_oracle",
            Method::SeriesDirect => "series_direct",
            Method::SeriesAccelerated => "series_accelerated",
            Method::IntegralHalfLine => "integral_half_line",
            Method::IntegralThreeHalvesLine => "integral_three_halves_line",
            Method::Quadrature => "quadrature",
        }
    }
}

/// Work counters attached to an evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Work {
    pub terms: u64,
    pub nodes: u64,
}

/// A computed value with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex,
    pub err_estimate: f64,
    pub method: Method,
    pub work: Work,
}

impl EvalResult {
    pub fn new(value: Complex, err_estimate: f64, method: Method, work: Work) -> Self {
        debug_assert!(err_estimate.is_finite() && err_estimate >= 0.0);
        EvalResult {
            value,
            err_estimate,
            method,
            work,
        }
    }
}
