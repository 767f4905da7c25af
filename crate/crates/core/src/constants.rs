//! Named mathematical constants, stored as decimal literals.
//!
//! Every constant keeps its digit string next to the `f64` value so that
//! reports can show where the number came from. Digits beyond the short
//! prefixes in the literature were produced once by an independent
//! 45-digit oracle run (see the README) and frozen here.

use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A printed prefix, extended by the oracle run.
    PaperDigits,
    /// Produced entirely by the oracle run.
    DerivedByOracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::PaperDigits => "paper-digits",
            Provenance::DerivedByOracle => "derived-by-oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NamedConstant {
    pub name: &'static str,
    pub value: f64,
    pub digits: &'static str,
    pub provenance: Provenance,
}

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431_042;
/// Glaisher–Kinkelin constant `A = exp(1/12 - zeta'(-1))`.
pub const GLAISHER_A: f64 = 1.282_427_129_100_622_636_875_342_568_869_791_727_767_69;
/// First Stieltjes constant.
pub const STIELTJES_GAMMA1: f64 = -0.072_815_845_483_676_73;
/// Gregory-coefficient constant (OEIS A270859).
pub const KAPPA1: f64 = 0.529_052_969_940_439_024_072_293_939_475_589_728_094_04;
pub const LN_TWO_PI: f64 = 1.837_877_066_409_345_483_560_659_472_811_235_279_722_79;
pub const PI_SQ_OVER_6: f64 = 1.644_934_066_848_226_436_472_415_166_646_025_189_218_95;
pub const PI_SQ_OVER_12: f64 = 0.822_467_033_424_113_218_236_207_583_323_012_594_609_47;

pub static TABLE: [NamedConstant; 6] = [
    NamedConstant {
        name: "euler_gamma",
        value: EULER_GAMMA,
        digits: "0.577215664901532860606512090082402431042",
        provenance: Provenance::DerivedByOracle,
    },
    NamedConstant {
        name: "glaisher_A",
        value: GLAISHER_A,
        digits: "1.28242712910062263687534256886979172776769",
        provenance: Provenance::PaperDigits,
    },
    NamedConstant {
        name: "stieltjes_gamma1",
        value: STIELTJES_GAMMA1,
        digits: "-0.0728158454836767248605863758749013191377",
        provenance: Provenance::PaperDigits,
    },
    NamedConstant {
        name: "kappa1",
        value: KAPPA1,
        digits: "0.529052969940439024072293939475589728094",
        provenance: Provenance::PaperDigits,
    },
    NamedConstant {
        name: "ln_two_pi",
        value: LN_TWO_PI,
        digits: "1.83787706640934548356065947281123527972279",
        provenance: Provenance::DerivedByOracle,
    },
    NamedConstant {
        name: "pi_sq_over_6",
        value: PI_SQ_OVER_6,
        digits: "1.64493406684822643647241516664602518921895",
        provenance: Provenance::DerivedByOracle,
    },
];

pub fn lookup(name: &str) -> Result<&'static NamedConstant> {
    TABLE
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownConstant(name.to_string()))
}

pub fn get_constant(name: &str) -> Result<f64> {
    lookup(name).map(|c| c.value)
}
