use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::elements::target_element;
use super::{defining_poly, FamilyError, FamilyId, FieldInstance};
use crate::exactmath::{Integer, Rational};
use crate::polynomial::{IntPoly, RatPoly};

const SEXTIC_A2: [i64; 3] = [-12399357, -128700, -104149];
const SEXTIC_A3: [i64; 3] = [-25821164, 171600, -253298];
/// Coefficients of `a₂` (and `a₃`) as `(c₂ V² + c₁ V + c₀)/900` with `V = 30n − 143`.
const SEXTIC_A2_V: [i64; 3] = [-13841287201, -2 * 16823807, -104149];
const SEXTIC_A3_V: [i64; 3] = [-2 * 13841287201, -4 * 16823807, -253298];

fn int(v: i64) -> Integer {
    BigInt::from(v)
}

fn quad(c: [i64; 3], x: &Integer) -> Integer {
    int(c[2]) * x * x + int(c[1]) * x + int(c[0])
}

fn require_galois(family: FamilyId) -> Result<(), FamilyError> {
    if family.is_galois() {
        Ok(())
    } else {
        Err(FamilyError::NonGaloisFamily(family))
    }
}

/// `a_0, …, a_d` of `p_{n,r}(X) = Σ a_k X^{rk}`.
pub fn pnr_coefficients(family: FamilyId, n: &Integer) -> Result<Vec<Integer>, FamilyError> {
    require_galois(family)?;
    match family {
        FamilyId::Sextic => {
            let v: Integer = n * 30 - 143;
            let a0: Integer = &v * &v;
            let a1 = -(&a0 * int(6));
            let a2 = quad(SEXTIC_A2, n);
            let a3 = quad(SEXTIC_A3, n);
            for (direct, via_v, name) in [(&a2, SEXTIC_A2_V, "a2"), (&a3, SEXTIC_A3_V, "a3")] {
                if direct * 900 != quad(via_v, &v) {
                    return Err(FamilyError::IdentityFailed(format!(
                        "the two forms of {name} disagree at n = {n}"
                    )));
                }
            }
            Ok(vec![a0.clone(), a1.clone(), a2.clone(), a3, a2, a1, a0])
        }
        FamilyId::Quartic => {
            let a0: Integer = n * 6 - 7;
            let a1: Integer = n * 7 + 96;
            Ok(vec![a0.clone(), a1.clone(), -(&a0 * int(6)), -a1, a0])
        }
        FamilyId::Cubic => unreachable!(),
    }
}

pub fn pnr_poly(family: FamilyId, n: &Integer, r: u64) -> Result<IntPoly, FamilyError> {
    require_galois(family)?;
    family.check_r(r)?;
    let a = pnr_coefficients(family, n)?;
    Ok(IntPoly::new(a).compose_power(r as usize))
}

/// `p_{n,1}` annihilates the target element and is `a₀` times its minimal polynomial.
pub fn pnr_is_min_poly_check(instance: &FieldInstance) -> Result<bool, FamilyError> {
    let t = target_element(instance)?;
    let p = pnr_poly(instance.family(), instance.n(), 1)?.to_rat();
    if !t.substitute_into(&p).is_zero() {
        return Ok(false);
    }
    let m = t.minimal_polynomial();
    Ok(m.degree() == Some(instance.degree()) && p.monic() == m)
}

/// `(X^r + β)² + α²D`: the product of `X^r − (αn − β)` over `n = ±√(−D)`.
pub fn script_p(family: FamilyId, r: u64) -> Result<IntPoly, FamilyError> {
    require_galois(family)?;
    family.check_r(r)?;
    let (alpha, beta) = family.linear_form_coeffs();
    let d = family.critical_factor_poly().coeff(0).to_integer();
    let base = IntPoly::new(vec![int(-beta), int(1)]);
    let p = &base * &base + IntPoly::constant(int(alpha * alpha) * d);
    Ok(p.compose_power(r as usize))
}

/// The sextic polynomial `h` obtained from `g(X, t)` at `√g₀(t) = 1`, `r = 1`.
pub fn sextic_h() -> RatPoly {
    let one = RatPoly::one();
    let g = sextic_g_from_sqrt(&one);
    RatPoly::new(g.iter().map(|c| c.coeff(0)).collect())
}

fn sextic_g_from_sqrt(s: &RatPoly) -> Vec<RatPoly> {
    let by900 = |c: [i64; 3]| {
        let t = &(&s.pow(2).scale(&Rational::from_integer(int(c[2]))) + &s.scale(&Rational::from_integer(int(c[1]))))
            + &RatPoly::constant(Rational::from_integer(int(c[0])));
        t.scale(&Rational::new(int(1), int(900)))
    };
    let g0 = s.pow(2);
    let g1 = g0.scale(&Rational::from_integer(int(-6)));
    let g2 = by900(SEXTIC_A2_V);
    let g3 = by900(SEXTIC_A3_V);
    vec![g0.clone(), g1.clone(), g2.clone(), g3, g2, g1, g0]
}

/// Outcome of the checks on the bivariate `g(X, Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GIdentityReport {
    pub family: FamilyId,
    /// The coefficient combination that collapses to a constant in Y.
    pub collapse_constant: Option<Rational>,
    pub n_m: Integer,
    /// `g(X, m) = p_{n_m, r}(X)`.
    pub specialization_holds: bool,
    pub special_t: Rational,
    /// `g(X, t) = h(X^r)` (sextic) or `g(X, t) = −f₋₁₀₃(X^r)` (quartic).
    pub special_holds: bool,
}

impl GIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.collapse_constant.is_some() && self.specialization_holds && self.special_holds
    }
}

/// Coefficients `g_k(Y)` of `g(X, Y) = Σ g_k(Y) X^{rk}`.
pub fn g_coefficients(
    family: FamilyId,
    r: u64,
    c_r: &Integer,
    y0: &Integer,
    q: &Integer,
) -> Result<Vec<RatPoly>, FamilyError> {
    require_galois(family)?;
    family.check_r(r)?;
    let rq = |v: Integer| Rational::from_integer(v);
    match family {
        FamilyId::Sextic => {
            if (c_r * int(-143)).mod_floor(&int(30)).modpow(&int(r as i64), &int(30)) != int(-143).mod_floor(&int(30)) {
                return Err(FamilyError::CongruenceViolated(format!("(c_r·(−143))^r ≢ −143 (mod 30) for c_r = {c_r}")));
            }
            let s = RatPoly::linear(rq(c_r * 240 * q * q), rq(c_r * (y0 * 30 - 143)));
            Ok(sextic_g_from_sqrt(&s.pow(r as u32)))
        }
        FamilyId::Quartic => {
            if c_r.mod_floor(&int(6)) != int(1) {
                return Err(FamilyError::CongruenceViolated(format!("c_r = {c_r} is not 1 mod 6")));
            }
            let s = RatPoly::linear(rq(c_r * 30 * q * q), rq(c_r * (y0 * 30 - 1)));
            let g0 = s.pow(r as u32);
            let g1 = &g0.scale(&Rational::new(int(7), int(6))) + &RatPoly::constant(Rational::new(int(49 + 576), int(6)));
            let g2 = g0.scale(&rq(int(-6)));
            Ok(vec![g0.clone(), g1.clone(), g2, -&g1, g0])
        }
        FamilyId::Cubic => unreachable!(),
    }
}

pub fn g_identities(
    family: FamilyId,
    r: u64,
    c_r: &Integer,
    y0: &Integer,
    q: &Integer,
    m: &Integer,
) -> Result<GIdentityReport, FamilyError> {
    let g = g_coefficients(family, r, c_r, y0, q)?;
    let rq = |v: i64| Rational::from_integer(int(v));
    let mr = Rational::from_integer(m.clone());
    let cr = Rational::from_integer(c_r.clone());
    let (alpha, beta) = family.linear_form_coeffs();

    let (collapse, sv_m, special_t, special_target) = match family {
        FamilyId::Sextic => {
            let s = RatPoly::linear(
                Rational::from_integer(c_r * 240 * q * q),
                Rational::from_integer(c_r * (y0 * 30 - 143)),
            )
            .pow(r as u32);
            let comb = &(&g[2].scale(&rq(900)) + &g[0].scale(&rq(104149))) + &s.scale(&rq(2 * 16823807));
            let sv_m = s.eval(&mr);
            let t = (Rational::one() / &cr + rq(143) - Rational::from_integer(y0 * 30))
                / Rational::from_integer(int(240) * q * q);
            (comb, sv_m, t, sextic_h())
        }
        FamilyId::Quartic => {
            let comb = &g[1].scale(&rq(6)) - &g[0].scale(&rq(7));
            let sv_m = g[0].eval(&mr);
            let t = (-Rational::one() / &cr + rq(1) - Rational::from_integer(y0 * 30))
                / Rational::from_integer(int(30) * q * q);
            let f = defining_poly(FamilyId::Quartic, &int(-103))?;
            (comb, sv_m, t, -&f)
        }
        FamilyId::Cubic => unreachable!(),
    };
    let collapse_constant = match collapse.degree() {
        None => Some(Rational::zero()),
        Some(0) => Some(collapse.coeff(0)),
        _ => None,
    };

    // sv_m = α n_m + β
    let num = sv_m.to_integer() - beta;
    if !sv_m.is_integer() || !num.is_multiple_of(&int(alpha)) {
        return Err(FamilyError::CongruenceViolated(format!(
            "g₀ at m = {m} is not of the form {alpha}n{beta:+}"
        )));
    }
    let n_m = num / alpha;
    let a = pnr_coefficients(family, &n_m)?;
    let specialization_holds =
        a.len() == g.len() && g.iter().zip(&a).all(|(gk, ak)| gk.eval(&mr) == Rational::from_integer(ak.clone()));
    let special_holds = g
        .iter()
        .enumerate()
        .all(|(k, gk)| gk.eval(&special_t) == special_target.coeff(k));

    Ok(GIdentityReport {
        family,
        collapse_constant,
        n_m,
        specialization_holds,
        special_t,
        special_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_pnr_at_five() {
        let p = pnr_poly(FamilyId::Quartic, &int(5), 1).unwrap();
        assert_eq!(p, IntPoly::from_i64(&[23, 131, -138, -131, 23]));
        assert_eq!(pnr_coefficients(FamilyId::Sextic, &int(5)).unwrap()[0], int(49));
    }

    #[test]
    fn script_p_values() {
        assert_eq!(script_p(FamilyId::Sextic, 1).unwrap(), IntPoly::from_i64(&[117649, 286, 1]));
        assert_eq!(script_p(FamilyId::Quartic, 1).unwrap(), IntPoly::from_i64(&[625, 14, 1]));
        assert!(script_p(FamilyId::Sextic, 3).is_err());
        assert!(script_p(FamilyId::Cubic, 5).is_err());
    }

    #[test]
    fn min_poly_small_cases() {
        let k = FieldInstance::from_i64(FamilyId::Quartic, 5).unwrap();
        assert!(pnr_is_min_poly_check(&k).unwrap());
        let k = FieldInstance::from_i64(FamilyId::Sextic, 2).unwrap();
        assert!(pnr_is_min_poly_check(&k).unwrap());
    }
}
