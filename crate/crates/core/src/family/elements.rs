use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::One;

use super::field::{rat, FieldElement};
use super::{FamilyError, FamilyId, FieldInstance};
use crate::exactmath::{Integer, Rational};
use crate::polynomial::RatPoly;

/// `∏_j σ^{j·step}(e)`, the norm down to the fixed field of `⟨σ^step⟩`.
pub fn relative_norm(instance: &FieldInstance, e: &FieldElement, step: usize) -> Result<FieldElement, FamilyError> {
    let d = instance.degree();
    assert!(step > 0 && d % step == 0, "step must divide the degree");
    let mut acc = instance.constant(1);
    for j in 0..d / step {
        acc = &acc * &instance.conjugate(e, j * step)?;
    }
    Ok(acc)
}

fn shifted(instance: &FieldInstance, i: usize, c: i64) -> Result<FieldElement, FamilyError> {
    Ok(&instance.constant(c) + &instance.rho_i(i)?)
}

fn expect_one(e: &FieldElement, what: &str) -> Result<(), FamilyError> {
    if e.is_one() {
        Ok(())
    } else {
        Err(FamilyError::IdentityFailed(format!("{what} = {e}, expected 1")))
    }
}

/// The element whose `r`-th root generates the ideal class.
///
/// Sextic `(3+ρ₁)(3+ρ₂)/((3+ρ₄)(3+ρ₅))`, quartic `(2+ρ₁)/(2+ρ₃)`, cubic `2−ρ`.
/// For the Galois families the relative norms to the quadratic (and cubic)
/// subfields are checked to be 1.
pub fn w_element(instance: &FieldInstance) -> Result<FieldElement, FamilyError> {
    match instance.family() {
        FamilyId::Sextic => {
            let num = &shifted(instance, 1, 3)? * &shifted(instance, 2, 3)?;
            let den = &shifted(instance, 4, 3)? * &shifted(instance, 5, 3)?;
            let w = &num / &den;
            expect_one(&relative_norm(instance, &w, 2)?, "N_{K|k2}(w)")?;
            expect_one(&relative_norm(instance, &w, 3)?, "N_{K|k3}(w)")?;
            Ok(w)
        }
        FamilyId::Quartic => {
            let w = &shifted(instance, 1, 2)? / &shifted(instance, 3, 2)?;
            expect_one(&relative_norm(instance, &w, 2)?, "N_{K|k2}(w)")?;
            Ok(w)
        }
        FamilyId::Cubic => Ok(&instance.constant(2) - &instance.rho()),
    }
}

/// `w·ρ₄/ρ₁` (sextic) or `w/ρ₁` (quartic), checked to generate the whole field.
pub fn target_element(instance: &FieldInstance) -> Result<FieldElement, FamilyError> {
    let w = w_element(instance)?;
    let t = match instance.family() {
        FamilyId::Sextic => &(&w * &instance.rho_i(4)?) / &instance.rho_i(1)?,
        FamilyId::Quartic => &w / &instance.rho_i(1)?,
        FamilyId::Cubic => return Err(FamilyError::NonGaloisFamily(FamilyId::Cubic)),
    };
    let deg = t.minimal_polynomial().degree().unwrap_or(0);
    if deg != instance.degree() {
        return Err(FamilyError::IdentityFailed(format!(
            "target element has minimal polynomial of degree {deg}, not {}",
            instance.degree()
        )));
    }
    Ok(t)
}

/// `(6n+7)/(2−ρ)`, checked against `ρ² + (2+n)ρ + (4+3n)`.
///
/// This is the product of the two other conjugates of `2−ρ` without
/// constructing them.
pub fn cubic_cofactor(instance: &FieldInstance) -> Result<FieldElement, FamilyError> {
    if instance.family() != FamilyId::Cubic {
        return Err(FamilyError::IdentityFailed("cofactor is defined for the cubic family".into()));
    }
    let n = instance.n();
    let sv = FieldElement::from_rational(instance.field(), Rational::from_integer(instance.special_value()));
    let cof = &sv / &(&instance.constant(2) - &instance.rho());
    let expected = instance.element(&RatPoly::from_integers(&[n * 3 + 4, n + 2, BigInt::one()]));
    if cof != expected {
        return Err(FamilyError::IdentityFailed(format!("cofactor {cof} differs from {expected}")));
    }
    Ok(cof)
}

/// `N(a + bρ + cρ²)` in the cubic field, by the explicit cubic form in `n`.
pub fn mu_norm_form(a: &Integer, b: &Integer, c: &Integer, n: &Integer) -> Integer {
    let t2 = a * a * c + a * c * c - a * b * c;
    let t1 = a * a * c * 2 + a * a * b - a * c * c * 2 - a * b * b - b * c * c + b * b * c;
    let t0 = a * a * a + b * b * b + c * c * c - a * b * c * 3;
    t2 * n * n - t1 * n + t0
}

/// `μ = ((n+3)/2)(1+ρ) + ρ²`, checked to have norm 1 (by the norm form and by
/// a resultant) and to equal `(ρ+1)³/(2ρ)`.
pub fn mu_unit(instance: &FieldInstance) -> Result<FieldElement, FamilyError> {
    if instance.family() != FamilyId::Cubic {
        return Err(FamilyError::IdentityFailed("μ is defined for the cubic family".into()));
    }
    let n = instance.n();
    if n.is_even() {
        return Err(FamilyError::ParityViolated(n.clone()));
    }
    let h: Integer = (n + 3) / 2;
    let mu = instance.element(&RatPoly::from_integers(&[h.clone(), h.clone(), BigInt::one()]));
    let by_form = mu_norm_form(&h, &h, &BigInt::one(), n);
    if by_form != BigInt::one() {
        return Err(FamilyError::IdentityFailed(format!("norm form gives N(μ) = {by_form}")));
    }
    if mu.norm() != rat(1) {
        return Err(FamilyError::IdentityFailed(format!("resultant gives N(μ) = {}", mu.norm())));
    }
    let rho = instance.rho();
    let closed = &(&rho + &instance.constant(1)).pow(3) / &(&rho * &instance.constant(2));
    if closed != mu {
        return Err(FamilyError::IdentityFailed("μ differs from (ρ+1)³/(2ρ)".into()));
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_w_and_target() {
        let k = FieldInstance::from_i64(FamilyId::Quartic, 5).unwrap();
        let w = w_element(&k).unwrap();
        let t = target_element(&k).unwrap();
        assert_eq!(relative_norm(&k, &t, 2).unwrap().as_rational(), Some(rat(-1)));
        assert_eq!(w.norm(), rat(1));
    }

    #[test]
    fn cubic_mu_at_five() {
        let k = FieldInstance::from_i64(FamilyId::Cubic, 5).unwrap();
        let mu = mu_unit(&k).unwrap();
        let rho2 = &k.rho() + &k.constant(2);
        assert_eq!(mu, rho2.pow(2));
        assert_eq!(mu_norm_form(&BigInt::one(), &BigInt::from(0), &BigInt::from(0), &BigInt::from(9)), BigInt::one());
    }
}
