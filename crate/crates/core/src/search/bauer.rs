use num_bigint::BigInt;

use super::{BauerWitness, ResidueCondition, SearchError};
use crate::exactmath::{is_prime_u64, power_residue_symbol_u64, Symbol};

/// `(base | ℓ)_p` for every base, in order. `None` if ℓ divides a base.
pub fn residue_transcript(ell: u64, p: u64, bases: &[u64]) -> Option<Vec<(u64, Symbol)>> {
    bases
        .iter()
        .map(|&b| power_residue_symbol_u64(b as i64, ell, p).ok().map(|s| (b, s)))
        .collect()
}

/// Smallest prime `ℓ ≡ 1 (mod p)` with `floor < ℓ ≤ bound`, outside `avoid`,
/// meeting every residue condition.
pub fn find_bauer_prime(
    p: u64,
    conditions: &[ResidueCondition],
    avoid: &[u64],
    floor: u64,
    bound: u64,
) -> Result<BauerWitness, SearchError> {
    if !is_prime_u64(p) {
        return Err(SearchError::Config(format!("p = {p} is not prime")));
    }
    for (i, c) in conditions.iter().enumerate() {
        if conditions[..i].iter().any(|d| d.base == c.base) {
            return Err(SearchError::Config(format!("base {} is constrained twice", c.base)));
        }
    }
    let bases: Vec<u64> = conditions.iter().map(|c| c.base).collect();
    // first candidate ≡ 1 (mod p) strictly above the floor
    let step = if p == 2 { 2 } else { 2 * p };
    let mut ell = floor - floor % p + 1;
    if ell <= floor {
        ell += p;
    }
    if p != 2 && ell % 2 == 0 {
        ell += p;
    }
    while ell <= bound {
        if is_prime_u64(ell) && !avoid.contains(&ell) {
            if let Some(transcript) = residue_transcript(ell, p, &bases) {
                let ok = transcript.iter().zip(conditions).all(|(&(_, s), c)| s == c.requirement);
                if ok {
                    return Ok(BauerWitness { p, ell: BigInt::from(ell), transcript });
                }
            }
        }
        ell = match ell.checked_add(step) {
            Some(v) => v,
            None => break,
        };
    }
    let list: Vec<String> = conditions.iter().map(|c| c.to_string()).collect();
    Err(SearchError::BoundExhausted {
        what: format!("prime ℓ ≡ 1 (mod {p}) with [{}]", list.join(", ")),
        bound,
    })
}
