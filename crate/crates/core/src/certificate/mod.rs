//! Certificate data model, canonical serialization and the from-scratch verifier.
//!
//! A `Valid` verdict means the sufficient conditions for an ideal class of
//! order `r` hold for the recorded witnesses, each recomputed from
//! `(family, r, n, y)`. No class group is computed.

mod model;
mod serial;
mod verify;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use model::{
    required_roles, role_conditions, ClassOrderCertificate, IdealFactorCert, NonPowerEvidence, RamifiedData,
    RoleWitness, WitnessRole, CERTIFICATE_VERSION,
};
pub use serial::{parse, serialize, to_json_value};
pub use verify::{
    target_image_mod, verify_certificate, verify_ideal_power, verify_nonpower, verify_ramification,
    verify_relative_norms, verify_residue_conditions,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason")]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(r) => Some(r),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("Valid"),
            Verdict::Invalid(r) => write!(f, "Invalid({r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}
