//! Integer and rational kernel: modular arithmetic, primality, factorization
//! and p-th power residue symbols.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values; everything
//! number-theoretic on top of them lives here.

mod factor;
mod modular;
mod primes;
mod residue;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use factor::{factorize, factorize_with_budget, PrimeFactorization, DEFAULT_FACTOR_BUDGET};
pub use modular::{crt, inv_mod, mod_pow, mod_pow_u64, mul_mod_u64, sqrt_mod_prime, ResidueClass};
pub use primes::{is_prime, is_prime_u64, next_prime_u64, PrimeIter, CERTIFIED_PRIME_BOUND};
pub use residue::{power_residue_symbol, power_residue_symbol_u64, Symbol};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(Integer),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: Integer, modulus: Integer },
    #[error("congruences x = {r1} (mod {m1}) and x = {r2} (mod {m2}) share a modulus factor on which they disagree")]
    ModuliNotCoprime {
        r1: Integer,
        m1: Integer,
        r2: Integer,
        m2: Integer,
    },
    #[error("factorization of {value} exceeded the work budget of {budget} steps")]
    FactorizationTimeout { value: Integer, budget: u64 },
    #[error("cannot factor zero")]
    FactorZero,
    #[error("{ell} divides {a}; the residue symbol is undefined")]
    SharedFactor { a: Integer, ell: Integer },
    #[error("{0} is not prime")]
    NotPrime(Integer),
}

/// Largest `k` with `p^k | value` (value nonzero).
pub fn valuation(value: &Integer, p: &Integer) -> u32 {
    use num_integer::Integer as _;
    use num_traits::Zero;
    let mut v = value.clone();
    let mut k = 0;
    loop {
        let (q, r) = v.div_rem(p);
        if !r.is_zero() || v.is_zero() {
            return k;
        }
        v = q;
        k += 1;
    }
}

/// Exact integer square test.
pub fn is_perfect_square(value: &Integer) -> bool {
    use num_traits::Signed;
    if value.is_negative() {
        return false;
    }
    let root = value.sqrt();
    &root * &root == *value
}

/// Converts a rational known to be integral.
pub fn rational_to_integer(q: &Rational) -> Option<Integer> {
    q.is_integer().then(|| q.to_integer())
}
