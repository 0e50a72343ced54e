use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::factor_mod::factor_mod_q;
use super::IntPoly;
use crate::exactmath::{factorize_with_budget, is_prime, Integer, PrimeIter, Rational};

/// Checkable reason why a primitive integer polynomial is irreducible over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrreducibilityEvidence {
    Linear,
    /// The reduction modulo `q` keeps its degree and is irreducible.
    ModPrime { q: u64 },
    /// `f(X + shift)` (or its reversal) is Eisenstein at `p`.
    Eisenstein { p: u64, shift: i64, reversed: bool },
    /// No proper factor degree is compatible with the factorizations modulo all these primes.
    DegreeSets { primes: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Irreducible(IrreducibilityEvidence),
    Reducible(IntPoly),
    Unknown,
}

const DEFAULT_MOD_PRIMES: usize = 40;
const SHIFTS: [i64; 5] = [0, 1, -1, 2, -2];
const SMALL_FACTOR_BUDGET: u64 = 20_000;

/// `p ∤ lc`, `p` divides every other coefficient and `p² ∤` the constant term.
pub fn eisenstein_check(f: &IntPoly, p: &Integer) -> bool {
    let Some(d) = f.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let c = f.coeffs();
    if (&c[d] % p).is_zero() {
        return false;
    }
    if c[..d].iter().any(|a| !(a % p).is_zero()) {
        return false;
    }
    !(&c[0] % (p * p)).is_zero()
}

fn shifted(f: &IntPoly, shift: i64, reversed: bool) -> IntPoly {
    let g = f.taylor_shift(&BigInt::from(shift));
    if reversed {
        g.reversed()
    } else {
        g
    }
}

/// Re-derives a piece of evidence from scratch.
pub fn check_irreducibility_evidence(f: &IntPoly, evidence: &IrreducibilityEvidence) -> bool {
    let Some(d) = f.degree() else {
        return false;
    };
    match evidence {
        IrreducibilityEvidence::Linear => d == 1,
        IrreducibilityEvidence::ModPrime { q } => match factor_mod_q(f, *q) {
            Ok(fac) => d >= 1 && fac.pattern().0 == vec![(d, 1)],
            Err(_) => false,
        },
        IrreducibilityEvidence::Eisenstein { p, shift, reversed } => {
            let g = shifted(f, *shift, *reversed);
            g.degree() == Some(d) && is_prime(&BigInt::from(*p)) && eisenstein_check(&g, &BigInt::from(*p))
        }
        IrreducibilityEvidence::DegreeSets { primes } => {
            if d < 2 {
                return false;
            }
            let mut possible = vec![true; d + 1];
            for &q in primes {
                let Ok(fac) = factor_mod_q(f, q) else {
                    return false;
                };
                let sums = subset_sums(&fac.pattern().degrees(), d);
                for k in 0..=d {
                    possible[k] &= sums[k];
                }
            }
            (1..d).all(|k| !possible[k])
        }
    }
}

fn subset_sums(degrees: &[usize], total: usize) -> Vec<bool> {
    let mut s = vec![false; total + 1];
    s[0] = true;
    for &dg in degrees {
        for k in (dg..=total).rev() {
            if s[k - dg] {
                s[k] = true;
            }
        }
    }
    s
}

fn divisors_of(m: &Integer) -> Option<Vec<Integer>> {
    let f = factorize_with_budget(m, SMALL_FACTOR_BUDGET).ok()?;
    let mut divs = vec![Integer::one()];
    for (p, e) in f.factors() {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = Integer::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divs = next;
        if divs.len() > 100_000 {
            return None;
        }
    }
    Some(divs)
}

fn rational_root_factor(f: &IntPoly) -> Option<IntPoly> {
    let c0 = f.constant_term();
    if c0.is_zero() {
        return Some(IntPoly::from_i64(&[0, 1]));
    }
    let lc = f.leading()?.abs();
    let nums = divisors_of(&c0.abs())?;
    let dens = divisors_of(&lc)?;
    for den in &dens {
        for num in &nums {
            if !num.gcd(den).is_one() {
                continue;
            }
            for cand in [num.clone(), -num] {
                let x = Rational::new(cand.clone(), den.clone());
                if f.sign_at(&x).is_eq() {
                    return Some(IntPoly::new(vec![-cand, den.clone()]));
                }
            }
        }
    }
    None
}

/// One-sided irreducibility verdict for a primitive polynomial.
pub fn irreducibility_over_q(f: &IntPoly) -> IrreducibilityVerdict {
    irreducibility_over_q_with(f, DEFAULT_MOD_PRIMES)
}

pub fn irreducibility_over_q_with(f: &IntPoly, max_primes: usize) -> IrreducibilityVerdict {
    let Some(d) = f.degree() else {
        return IrreducibilityVerdict::Unknown;
    };
    if d == 0 {
        return IrreducibilityVerdict::Unknown;
    }
    if d == 1 {
        return IrreducibilityVerdict::Irreducible(IrreducibilityEvidence::Linear);
    }
    if let Some(factor) = rational_root_factor(f) {
        return IrreducibilityVerdict::Reducible(factor);
    }

    for &shift in &SHIFTS {
        for reversed in [false, true] {
            let g = shifted(f, shift, reversed);
            if g.degree() != Some(d) {
                continue;
            }
            let cont = g.coeffs()[..d].iter().fold(Integer::zero(), |a, c| a.gcd(c));
            if cont.is_zero() || cont.is_one() {
                continue;
            }
            let Ok(fac) = factorize_with_budget(&cont, SMALL_FACTOR_BUDGET) else {
                continue;
            };
            for p in fac.primes() {
                if let Some(pu) = p.to_u64() {
                    if eisenstein_check(&g, p) {
                        return IrreducibilityVerdict::Irreducible(IrreducibilityEvidence::Eisenstein {
                            p: pu,
                            shift,
                            reversed,
                        });
                    }
                }
            }
        }
    }

    let mut possible = vec![true; d + 1];
    let mut used = Vec::new();
    for q in PrimeIter::new().take(max_primes) {
        let Ok(fac) = factor_mod_q(f, q) else {
            continue;
        };
        let pattern = fac.pattern();
        if pattern.0 == vec![(d, 1)] {
            return IrreducibilityVerdict::Irreducible(IrreducibilityEvidence::ModPrime { q });
        }
        let sums = subset_sums(&pattern.degrees(), d);
        let mut changed = false;
        for k in 1..d {
            if possible[k] && !sums[k] {
                possible[k] = false;
                changed = true;
            }
        }
        if changed {
            used.push(q);
        }
        if (1..d).all(|k| !possible[k]) {
            return IrreducibilityVerdict::Irreducible(IrreducibilityEvidence::DegreeSets { primes: used });
        }
    }
    IrreducibilityVerdict::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_verdicts() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        match irreducibility_over_q(&f) {
            IrreducibilityVerdict::Irreducible(ev) => assert!(check_irreducibility_evidence(&f, &ev)),
            v => panic!("{v:?}"),
        }
        let g = IntPoly::from_i64(&[-1, 0, 1]);
        match irreducibility_over_q(&g) {
            IrreducibilityVerdict::Reducible(h) => assert!(g.exact_div(&h).is_some()),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn eisenstein_examples() {
        assert!(eisenstein_check(&IntPoly::from_i64(&[-2, 0, 1]), &BigInt::from(2)));
        assert!(!eisenstein_check(&IntPoly::from_i64(&[-1, 0, 1]), &BigInt::from(2)));
        assert!(!eisenstein_check(&IntPoly::from_i64(&[-4, 0, 1]), &BigInt::from(2)));
    }

    #[test]
    fn swinnerton_dyer_needs_degree_sets_or_unknown() {
        // X^4 - 10X^2 + 1 is irreducible but reducible modulo every prime
        let f = IntPoly::from_i64(&[1, 0, -10, 0, 1]);
        match irreducibility_over_q(&f) {
            IrreducibilityVerdict::Irreducible(ev) => {
                assert!(!matches!(ev, IrreducibilityEvidence::ModPrime { .. }));
                assert!(check_irreducibility_evidence(&f, &ev));
            }
            IrreducibilityVerdict::Unknown => {}
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn product_of_quadratics_is_never_irreducible() {
        let f = &IntPoly::from_i64(&[2, 0, 1]) * &IntPoly::from_i64(&[3, 1, 1]);
        assert!(!matches!(irreducibility_over_q(&f), IrreducibilityVerdict::Irreducible(_)));
    }
}
