use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{build_cr, construct_y_n, prime_divisors, ramified_prime_setup, SearchConfig, SearchError};
use crate::certificate::{
    target_image_mod, verify_certificate, ClassOrderCertificate, IdealFactorCert, NonPowerEvidence, RamifiedData,
    CERTIFICATE_VERSION,
};
use crate::exactmath::{factorize_with_budget, is_prime_u64, power_residue_symbol, Integer, Symbol};
use crate::family::{defining_poly, FamilyId};
use crate::polynomial::{roots_mod, IntPoly};

fn int(v: i64) -> Integer {
    BigInt::from(v)
}

/// A certificate together with the parameter that produced it.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub certificate: ClassOrderCertificate,
    pub m: u64,
    pub q: Option<u64>,
}

/// Prime ideals over `|y|`: `ℓ` with `ρ ≡ eval point` and exponent `r·ν_ℓ(y)`.
pub fn ideal_factors_for(family: FamilyId, r: u64, factors: &BTreeMap<Integer, u32>) -> Vec<IdealFactorCert> {
    factors
        .iter()
        .map(|(ell, &nu)| IdealFactorCert {
            ell: ell.clone(),
            root: int(family.eval_point()).mod_floor(ell),
            exponent: r * nu as u64,
        })
        .collect()
}

/// Scans primes `ℓ* ≡ 1 (mod p)` in `(floor, bound]` for a root of `f_n` at
/// which the target element is a p-th power non-residue.
///
/// `disc_num` screens out primes dividing the discriminant.
pub fn find_nonpower_evidence(
    family: FamilyId,
    f: &IntPoly,
    disc_num: &Integer,
    p: u64,
    floor: u64,
    bound: u64,
) -> Option<NonPowerEvidence> {
    let mut ell = floor - floor % p + 1;
    if ell <= floor {
        ell += p;
    }
    let step = if p == 2 { 2 } else { 2 * p };
    if p != 2 && ell % 2 == 0 {
        ell += p;
    }
    let pi = int(p as i64);
    while ell <= bound {
        if is_prime_u64(ell) && !(disc_num % ell).is_zero() {
            let li = int(ell as i64);
            for x in roots_mod(&f.reduce_mod(ell)) {
                let root = int(x as i64);
                let Some(value) = target_image_mod(family, &root, &li) else {
                    continue;
                };
                if power_residue_symbol(&value, &li, &pi) == Ok(Symbol::NonResidue) {
                    return Some(NonPowerEvidence { p, ell: li, root, value, symbol: Symbol::NonResidue });
                }
            }
        }
        ell += step;
    }
    None
}

fn factor_parts(parts: &[Integer], budget: u64) -> Option<BTreeMap<Integer, u32>> {
    let mut acc = BTreeMap::new();
    for part in parts {
        let a = part.abs();
        if a.is_zero() {
            return None;
        }
        for (pr, e) in factorize_with_budget(&a, budget).ok()?.factors() {
            *acc.entry(pr.clone()).or_insert(0) += e;
        }
    }
    Some(acc)
}

/// Searches `m = 0, 1, 2, …` for parameters whose certificate verifies.
///
/// With `q` the run targets `n ≡ n₀ (mod q²)` so that `q` ramifies in the
/// quadratic subfield. Only positive `n` are accepted.
pub fn run_search(
    family: FamilyId,
    r: u64,
    config: &SearchConfig,
    q: Option<u64>,
) -> Result<SearchOutcome, SearchError> {
    config.validate()?;
    family.check_r(r)?;
    if q.is_some() && !family.is_galois() {
        return Err(SearchError::Family(crate::family::FamilyError::NonGaloisFamily(family)));
    }
    let cr = build_cr(family, r, q, config)?;
    let (y0, ramified) = match q {
        Some(qv) => {
            let setup = ramified_prime_setup(family, r, qv, &cr.c_r)?;
            (setup.y0.clone(), Some(RamifiedData { q: int(qv as i64), n0: setup.n0 }))
        }
        None => (Integer::zero(), None),
    };
    let ps = prime_divisors(r);
    let attempt = |m: u64| -> Option<ClassOrderCertificate> {
        let yn = construct_y_n(family, r, &cr.c_r, &y0, q, &int(m as i64)).ok()?;
        if !yn.n.is_positive() {
            return None;
        }
        let factors = factor_parts(&yn.parts, config.factor_budget)?;
        let mut evidence = Vec::new();
        if family.is_galois() {
            let f = defining_poly(family, &yn.n).ok()?.to_int()?;
            let disc_num = family.discriminant_closed_form(&yn.n).numer().abs();
            for &p in &ps {
                evidence.push(find_nonpower_evidence(family, &f, &disc_num, p, 0, config.scan_bound)?);
            }
        }
        let cert = ClassOrderCertificate {
            version: CERTIFICATE_VERSION,
            family,
            r,
            n: yn.n,
            y: yn.y,
            c_r: Some(cr.c_r.clone()),
            bauer_witnesses: cr.witnesses.clone(),
            ideal_factors: ideal_factors_for(family, r, &factors),
            nonpower_evidence: evidence,
            ramified_q: ramified.clone(),
        };
        verify_certificate(&cert).is_valid().then_some(cert)
    };
    let found = (0..config.m_max).into_par_iter().find_map_first(|m| attempt(m).map(|c| (m, c)));
    match found {
        Some((m, certificate)) => Ok(SearchOutcome { certificate, m, q }),
        None => Err(SearchError::SearchExhausted { family, r, attempts: config.m_max }),
    }
}
