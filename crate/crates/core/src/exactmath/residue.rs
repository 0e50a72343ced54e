use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::modular::mod_pow_u64;
use super::{ExactMathError, Integer};

/// Value of a p-th power residue symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    Residue,
    NonResidue,
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Symbol::Residue => "Residue",
            Symbol::NonResidue => "NonResidue",
        })
    }
}

/// Whether `a` is a p-th power modulo the prime `ell`.
///
/// When `p` does not divide `ell - 1` the p-th power map permutes the units
/// of F_ell, so every unit is a residue.
pub fn power_residue_symbol(a: &Integer, ell: &Integer, p: &Integer) -> Result<Symbol, ExactMathError> {
    if (a.mod_floor(ell)).is_zero() {
        return Err(ExactMathError::SharedFactor {
            a: a.clone(),
            ell: ell.clone(),
        });
    }
    let ellm1: Integer = ell - 1;
    if !(ellm1.mod_floor(p)).is_zero() {
        return Ok(Symbol::Residue);
    }
    let e = ellm1 / p;
    let v = a.mod_floor(ell).modpow(&e, ell);
    Ok(if v == BigInt::one() {
        Symbol::Residue
    } else {
        Symbol::NonResidue
    })
}

pub fn power_residue_symbol_u64(a: i64, ell: u64, p: u64) -> Result<Symbol, ExactMathError> {
    let a_red = (a.rem_euclid(ell as i64)) as u64;
    if a_red == 0 {
        return Err(ExactMathError::SharedFactor {
            a: BigInt::from(a),
            ell: BigInt::from(ell),
        });
    }
    if (ell - 1) % p != 0 {
        return Ok(Symbol::Residue);
    }
    Ok(if mod_pow_u64(a_red, (ell - 1) / p, ell) == 1 {
        Symbol::Residue
    } else {
        Symbol::NonResidue
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn examples() {
        assert_eq!(power_residue_symbol(&int(2), &int(31), &int(5)).unwrap(), Symbol::NonResidue);
        assert_eq!(power_residue_symbol(&int(2), &int(151), &int(5)).unwrap(), Symbol::Residue);
        // 5 does not divide 12
        assert_eq!(power_residue_symbol(&int(2), &int(13), &int(5)).unwrap(), Symbol::Residue);
        assert!(matches!(
            power_residue_symbol(&int(62), &int(31), &int(5)),
            Err(ExactMathError::SharedFactor { .. })
        ));
    }

    #[test]
    fn u64_path_agrees() {
        for ell in [11u64, 31, 41, 151, 271] {
            for a in -20i64..40 {
                for p in [2u64, 3, 5] {
                    let big = power_residue_symbol(&int(a), &int(ell as i64), &int(p as i64));
                    let small = power_residue_symbol_u64(a, ell, p);
                    assert_eq!(big.ok(), small.ok());
                }
            }
        }
    }
}
