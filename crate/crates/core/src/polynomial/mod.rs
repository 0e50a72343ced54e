//! Univariate polynomials over ℚ, ℤ and 𝔽_q.
//!
//! Coefficients are stored in ascending degree order and trailing zeros are
//! always stripped, so the zero polynomial is the empty coefficient list.

mod factor_mod;
mod int;
mod irreducible;
mod modp;
mod rat;
mod resultant;
mod roots;

use thiserror::Error;

pub use factor_mod::{factor_mod_q, roots_mod, splits_linearly_mod, FactorPattern, ModFactorization};
pub use int::IntPoly;
pub use irreducible::{
    check_irreducibility_evidence, eisenstein_check, irreducibility_over_q, irreducibility_over_q_with,
    IrreducibilityEvidence,
    IrreducibilityVerdict,
};
pub use modp::ModPoly;
pub use rat::RatPoly;
pub use resultant::{discriminant, discriminant_int, resultant, resultant_int};
pub use roots::{isolate_real_roots, sturm_sequence, IsolatingInterval, SturmSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolynomialError {
    #[error("leading coefficient vanishes modulo {0}")]
    LeadingCoefficientVanishes(u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),
}
