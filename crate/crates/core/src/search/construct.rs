use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::{find_bauer_prime, prime_divisors, SearchConfig, SearchError};
use crate::certificate::{required_roles, role_conditions, RoleWitness};
use crate::exactmath::{crt, inv_mod, is_prime_u64, mod_pow_u64, sqrt_mod_prime, Integer};
use crate::family::{script_p, FamilyId};
use crate::polynomial::{roots_mod, splits_linearly_mod, ModPoly};

fn int(v: i64) -> Integer {
    BigInt::from(v)
}

/// `c_r = s·∏ ℓ` together with the Bauer witnesses it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrConstruction {
    pub c_r: Integer,
    pub s: Integer,
    pub witnesses: Vec<RoleWitness>,
}

/// Output of [`construct_y_n`]. `parts` multiply to `y` (with multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YnPair {
    pub y: Integer,
    pub n: Integer,
    pub parts: Vec<Integer>,
}

/// Data for steering `n ≡ n₀ (mod q²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamifiedSetup {
    pub q: u64,
    pub n0: Integer,
    pub b0: Integer,
    pub y0: Integer,
}

/// Primes no Bauer witness may use, beyond the caller's `q`.
fn forbidden_primes(family: FamilyId) -> &'static [u64] {
    match family {
        FamilyId::Sextic => &[2, 3, 5, 7],
        FamilyId::Quartic => &[2, 3, 5],
        FamilyId::Cubic => &[2, 3, 37, 47],
    }
}

/// The unit `t (mod 30)` with `t^r ≡ 7^{1−r} (mod 30)`.
pub fn cr_target_residue(r: u64) -> Option<u64> {
    // 7⁻¹ ≡ 13 (mod 30)
    let want = mod_pow_u64(13, r - 1, 30);
    (1..30u64)
        .filter(|t| t.gcd(&30) == 1)
        .find(|&t| mod_pow_u64(t, r, 30) == want)
}

fn coprime_to_all(v: &Integer, primes: &[u64]) -> bool {
    primes.iter().all(|&p| !(v % p).is_zero())
}

/// Chooses Bauer primes for every `p | r` and the cofactor `s`.
///
/// Sextic: `c_r^r ≡ 7^{1−r} (mod 30)`, `(210q, c_r) = 1`.
/// Quartic and cubic: `c_r ≡ 1 (mod 6)`, coprime to `5q` resp. `37·47`.
pub fn build_cr(family: FamilyId, r: u64, q: Option<u64>, config: &SearchConfig) -> Result<CrConstruction, SearchError> {
    family.check_r(r)?;
    let mut avoid: Vec<u64> = forbidden_primes(family).to_vec();
    avoid.extend(q);
    let mut witnesses = Vec::new();
    let mut product = Integer::one();
    for p in prime_divisors(r) {
        for &role in required_roles(family) {
            let conds = role_conditions(family, role).expect("role belongs to family");
            let w = find_bauer_prime(p, &conds, &avoid, 0, config.scan_bound)?;
            let ell = w.ell.to_u64().expect("scanned prime fits in u64");
            avoid.push(ell);
            product *= &w.ell;
            witnesses.push(RoleWitness { role, witness: w });
        }
    }
    let (modulus, target): (u64, u64) = match family {
        FamilyId::Sextic => (30, cr_target_residue(r).expect("x ↦ x^r permutes (Z/30)^* for odd r")),
        FamilyId::Quartic | FamilyId::Cubic => (6, 1),
    };
    let m = int(modulus as i64);
    let s0 = (inv_mod(&product, &m)?.value() * int(target as i64)).mod_floor(&m);
    let mut bad: Vec<u64> = match family {
        FamilyId::Sextic => vec![7],
        FamilyId::Quartic => vec![5],
        FamilyId::Cubic => vec![37, 47],
    };
    bad.extend(q);
    let mut s = s0;
    while s.is_zero() || !coprime_to_all(&s, &bad) {
        s += &m;
    }
    Ok(CrConstruction { c_r: &s * &product, s, witnesses })
}

fn check_cr(family: FamilyId, r: u64, c_r: &Integer) -> Result<(), SearchError> {
    let ok = match family {
        FamilyId::Sextic => {
            let want = mod_pow_u64(13, r - 1, 30);
            let c = c_r.mod_floor(&int(30)).to_u64().unwrap_or(0);
            c.gcd(&30) == 1 && mod_pow_u64(c, r, 30) == want && !(c_r % 7u32).is_zero()
        }
        FamilyId::Quartic => c_r.mod_floor(&int(6)) == int(1) && !(c_r % 5u32).is_zero(),
        FamilyId::Cubic => c_r.mod_floor(&int(6)) == int(1) && coprime_to_all(c_r, &[37, 47]),
    };
    if ok {
        Ok(())
    } else {
        Err(SearchError::CongruenceViolated(format!("c_r = {c_r} fails the {family} congruence conditions for r = {r}")))
    }
}

/// Builds `y` and `n = (y^r − β)/α` for the family's special value `αn + β`.
///
/// Sextic `y = d·c_r·(30(y₀+8q²m)−143)` with `d ≡ 5/(c_r(30y₀−143)) (mod 8)` and
/// `d ≡ 1 (mod 30q²)`; quartic `y = c_r(30(y₀+q²m)−1)`; cubic `y = c_r(6m+1)`,
/// squared when `y^r ≡ 3 (mod 4)`. Without a ramified prime take `q = 1`.
pub fn construct_y_n(
    family: FamilyId,
    r: u64,
    c_r: &Integer,
    y0: &Integer,
    q: Option<u64>,
    m: &Integer,
) -> Result<YnPair, SearchError> {
    family.check_r(r)?;
    check_cr(family, r, c_r)?;
    let q2 = int(q.unwrap_or(1) as i64).pow(2);
    let mut parts = match family {
        FamilyId::Sextic => {
            let lin0: Integer = int(30) * y0 - 143;
            let eight = int(8);
            let inv = inv_mod(&(c_r * &lin0), &eight)?;
            let d_mod8 = (inv.value() * int(5)).mod_floor(&eight);
            let big = int(30) * &q2;
            let d_class = crt(&[(d_mod8, eight), (Integer::one(), big.clone())])?;
            let step = d_class.modulus().clone();
            let mut d = d_class.value().clone();
            if d.is_zero() {
                d += &step;
            }
            while (&d % 7u32).is_zero() {
                d += &step;
            }
            let x: Integer = int(30) * (y0 + int(8) * &q2 * m) - 143;
            vec![d, c_r.clone(), x]
        }
        FamilyId::Quartic => {
            let x: Integer = int(30) * (y0 + &q2 * m) - 1;
            vec![c_r.clone(), x]
        }
        FamilyId::Cubic => vec![c_r.clone(), int(6) * m + 1],
    };
    let mut y: Integer = parts.iter().product();
    if family == FamilyId::Cubic && num_traits::pow(y.mod_floor(&int(4)), r as usize).mod_floor(&int(4)) == int(3) {
        y = &y * &y;
        parts = parts.iter().chain(parts.clone().iter()).cloned().collect();
    }
    if y.is_zero() {
        return Err(SearchError::CongruenceViolated("y = 0".into()));
    }
    let (alpha, beta) = family.linear_form_coeffs();
    let yr = num_traits::pow(y.clone(), r as usize);
    let (n, rem) = (&yr - beta).div_rem(&int(alpha));
    if !rem.is_zero() {
        return Err(SearchError::CongruenceViolated(format!("{alpha} does not divide y^r − ({beta})")));
    }
    match family {
        FamilyId::Sextic if n.mod_floor(&int(4)) != int(2) => {
            return Err(SearchError::CongruenceViolated(format!("sextic n = {n} is not 2 (mod 4)")));
        }
        FamilyId::Cubic if n.is_even() || n < int(5) => {
            return Err(SearchError::CongruenceViolated(format!("cubic n = {n} is not odd and at least 5")));
        }
        _ => {}
    }
    if !family.is_admissible(&n) {
        return Err(SearchError::CongruenceViolated(format!("n = {n} is not admissible")));
    }
    for ex in family.excluded_primes() {
        if (&y % &ex).is_zero() {
            return Err(SearchError::CongruenceViolated(format!("excluded prime {ex} divides y")));
        }
    }
    debug_assert_eq!(family.linear_form(&n), yr);
    Ok(YnPair { y, n, parts })
}

fn d0(family: FamilyId) -> Result<i64, SearchError> {
    match family {
        FamilyId::Sextic => Ok(108),
        FamilyId::Quartic => Ok(16),
        FamilyId::Cubic => Err(SearchError::Family(crate::family::FamilyError::NonGaloisFamily(family))),
    }
}

/// Ramification hypotheses on `q`: prime, coprime to `210r` (sextic) or `30r`
/// (quartic), and `𝒫` splitting into linear factors modulo `q`.
fn check_ramified_q(family: FamilyId, r: u64, q: u64) -> Result<(), SearchError> {
    let inadmissible = |reason: String| SearchError::PrimeInadmissible { q, reason };
    d0(family)?;
    if !is_prime_u64(q) {
        return Err(inadmissible("not prime".into()));
    }
    let guard: u64 = if family == FamilyId::Sextic { 210 } else { 30 };
    if guard % q == 0 || r % q == 0 {
        return Err(inadmissible(format!("q divides {guard}·r")));
    }
    if !splits_linearly_mod(&script_p(family, r)?, q)? {
        return Err(inadmissible(format!("𝒫 does not split into linear factors modulo {q} for r = {r}")));
    }
    Ok(())
}

/// Picks `n₀` with `q ‖ n₀² + D₀`, an `r`-th root `b₀` of the special value at
/// `n₀` lifted to `q²`, and `y₀` with `b₀ ≡ c_r·(αy₀ + β′) (mod q²)`.
pub fn ramified_prime_setup(family: FamilyId, r: u64, q: u64, c_r: &Integer) -> Result<RamifiedSetup, SearchError> {
    check_ramified_q(family, r, q)?;
    let inadmissible = |reason: String| SearchError::PrimeInadmissible { q, reason };
    let d = d0(family)?;
    let qi = int(q as i64);
    let q2 = &qi * &qi;
    let mut n0 = sqrt_mod_prime(&int(-d).mod_floor(&qi), &qi)
        .ok_or_else(|| inadmissible(format!("−{d} is not a square")))?;
    if ((&n0 * &n0 + d) % &q2).is_zero() {
        n0 += &qi;
    }
    let a = family.linear_form(&n0).mod_floor(&q2);
    let a_q = a.mod_floor(&qi).to_u64().expect("reduced mod q");
    if a_q == 0 {
        return Err(inadmissible("q divides the special value at n₀".into()));
    }
    let mut coeffs = vec![0u64; r as usize + 1];
    coeffs[0] = q - a_q;
    coeffs[r as usize] = 1;
    let roots = roots_mod(&ModPoly::new(q, coeffs));
    let b = *roots.first().ok_or_else(|| inadmissible(format!("special value at n₀ is not an r-th power mod {q}")))?;
    // Hensel: b₀ ← b − (b^r − a)/(r·b^{r−1}) (mod q²)
    let bi = int(b as i64);
    let fval = (num_traits::pow(bi.clone(), r as usize) - &a).mod_floor(&q2);
    let deriv = (int(r as i64) * num_traits::pow(bi.clone(), r as usize - 1)).mod_floor(&q2);
    let b0 = (&bi - fval * inv_mod(&deriv, &q2)?.value()).mod_floor(&q2);
    debug_assert!((num_traits::pow(b0.clone(), r as usize) - &a).mod_floor(&q2).is_zero());
    let shift: i64 = match family {
        FamilyId::Sextic => 143,
        _ => 1,
    };
    let cinv = inv_mod(c_r, &q2).map_err(|_| inadmissible("q divides c_r".into()))?;
    let thirty_inv = inv_mod(&int(30), &q2)?;
    let y0 = ((&b0 * cinv.value() + shift) * thirty_inv.value()).mod_floor(&q2);
    Ok(RamifiedSetup { q, n0, b0, y0 })
}

/// Smallest prime `q` above `floor` satisfying the ramification hypotheses.
pub fn find_ramified_q(family: FamilyId, r: u64, floor: u64, bound: u64) -> Result<u64, SearchError> {
    d0(family)?;
    let mut q = floor;
    loop {
        q = crate::exactmath::next_prime_u64(q);
        if q > bound {
            return Err(SearchError::BoundExhausted {
                what: format!("ramified prime q for the {family} family at r = {r}"),
                bound,
            });
        }
        if check_ramified_q(family, r, q).is_ok() {
            return Ok(q);
        }
    }
}
