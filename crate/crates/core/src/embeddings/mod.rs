//! Real embeddings with proof-grade enclosures.
//!
//! Roots are Sturm-isolated and bisected with exact signs, logarithms come
//! from an outward-rounded series, and every sign verdict is read off a
//! rational interval that excludes zero.

mod interval;
mod pell;
mod roots;
mod scans;

use thiserror::Error;

use crate::exactmath::Integer;
use crate::family::{FamilyError, FamilyId};
use crate::polynomial::PolynomialError;

pub use interval::{ln_bounds, sqrt_interval, RealInterval};
pub use pell::{pell_fundamental_unit, QuadraticUnit};
pub use roots::{ordered_real_roots, Containment, RootOrdering};
pub use scans::{
    cubic_independence_check, cubic_regulator, quartic_regulator, quartic_regulator_positive, sextic_independence_scan,
    sextic_quantity, CubicRegulatorReport, QuarticRegulatorReport, ScanEntry, ScanOptions, ScanReport, ScanStatus,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingsError {
    #[error("no conjugate labels for the {family} family at n = {n}: {reason}")]
    LabelUnavailable { family: FamilyId, n: Integer, reason: String },
    #[error("{0} is a perfect square")]
    PerfectSquare(Integer),
    #[error("{what} still undecided at {bits} bits")]
    PrecisionExhausted { what: String, bits: u32 },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
}
