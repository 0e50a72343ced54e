//! Unconditional class-group non-triviality certificates for cyclic number
//! fields from simplest-polynomial families.
//!
//! The crate searches for parameters `n` at which a family polynomial's
//! special value is a perfect r-th power with controlled prime factors, then
//! emits a self-contained certificate that [`certificate::verify_certificate`] checks by
//! exact integer arithmetic.

pub mod exactmath;
pub mod polynomial;
pub mod family;
pub mod embeddings;
pub mod search;
pub mod certificate;
