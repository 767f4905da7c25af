use serde::{Deserialize, Serialize};

use crate::Complex;

/// One checked identity: computed left side, closed-form right side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub id: String,
    #[serde(with = "complex_json")]
    pub lhs: Complex,
    #[serde(with = "complex_json")]
    pub rhs: Complex,
    pub abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
    /// Human-readable statement of the identity being checked.
    #[serde(rename = "paper_ref")]
    pub reference: String,
}

impl VerificationRecord {
    /// Builds a record; `abs_diff` and `pass` are derived, never supplied.
    pub fn new(
        id: impl Into<String>,
        lhs: Complex,
        rhs: Complex,
        tol: f64,
        reference: impl Into<String>,
    ) -> Self {
        let abs_diff = (lhs - rhs).norm();
        VerificationRecord {
            id: id.into(),
            lhs,
            rhs,
            abs_diff,
            tol,
            pass: abs_diff <= tol,
            reference: reference.into(),
        }
    }

    pub fn real(
        id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tol: f64,
        reference: impl Into<String>,
    ) -> Self {
        Self::new(
            id,
            Complex::new(lhs, 0.0),
            Complex::new(rhs, 0.0),
            tol,
            reference,
        )
    }
}

/// `{"re": .., "im": ..}` encoding for complex values.
pub mod complex_json {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Complex;

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
        Parts { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex, D::Error> {
        let p = Parts::deserialize(d)?;
        Ok(Complex::new(p.re, p.im))
    }
}
