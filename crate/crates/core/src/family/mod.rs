//! The sextic, quartic and cubic families of fields `K_n = ℚ(ρ)`, `f_n(ρ) = 0`.
//!
//! Everything here is exact: elements are polynomials in ρ reduced modulo
//! `f_n`, conjugates come from the family's Möbius map, and every closed form
//! the rest of the crate relies on is re-derived rather than trusted.

mod elements;
mod field;
pub mod identities;
mod mobius;
mod pnr;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{factorize, Integer, Rational};
use crate::polynomial::{resultant, RatPoly};

pub use elements::{cubic_cofactor, mu_norm_form, mu_unit, relative_norm, target_element, w_element};
pub use field::{FieldElement, NumberField};
pub use mobius::MobiusMap;
pub use pnr::{
    g_coefficients, g_identities, pnr_coefficients, pnr_is_min_poly_check, pnr_poly, script_p, sextic_h, GIdentityReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("n = {n} is not admissible for the {family} family")]
    InadmissibleParameter { family: FamilyId, n: Integer },
    #[error("the {0} family is not Galois")]
    NonGaloisFamily(FamilyId),
    #[error("r = {r} violates the gcd constraint of the {family} family")]
    GcdConstraintViolated { family: FamilyId, r: u64 },
    #[error("congruence violated: {0}")]
    CongruenceViolated(String),
    #[error("n = {0} must be odd")]
    ParityViolated(Integer),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    Sextic,
    Quartic,
    Cubic,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyId::Sextic => "sextic",
            FamilyId::Quartic => "quartic",
            FamilyId::Cubic => "cubic",
        })
    }
}

impl FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sextic" | "6" => Ok(FamilyId::Sextic),
            "quartic" | "4" => Ok(FamilyId::Quartic),
            "cubic" | "3" => Ok(FamilyId::Cubic),
            other => Err(format!("unknown family '{other}' (expected sextic, quartic or cubic)")),
        }
    }
}

fn int(v: i64) -> Integer {
    BigInt::from(v)
}

fn q(num: Integer, den: i64) -> Rational {
    Rational::new(num, int(den))
}

impl FamilyId {
    pub const ALL: [FamilyId; 3] = [FamilyId::Sextic, FamilyId::Quartic, FamilyId::Cubic];

    pub fn degree(self) -> usize {
        match self {
            FamilyId::Sextic => 6,
            FamilyId::Quartic => 4,
            FamilyId::Cubic => 3,
        }
    }

    pub fn is_galois(self) -> bool {
        !matches!(self, FamilyId::Cubic)
    }

    /// The point at which `f_n` is evaluated to get the special value.
    pub fn eval_point(self) -> i64 {
        match self {
            FamilyId::Sextic => -3,
            FamilyId::Quartic => -2,
            FamilyId::Cubic => 2,
        }
    }

    /// Generator of the cyclic Galois group acting on ρ.
    pub fn sigma(self) -> Result<MobiusMap, FamilyError> {
        match self {
            FamilyId::Sextic => Ok(MobiusMap::new(1, -1, 1, 2)),
            FamilyId::Quartic => Ok(MobiusMap::new(1, -1, 1, 1)),
            FamilyId::Cubic => Err(FamilyError::NonGaloisFamily(self)),
        }
    }

    pub fn is_admissible(self, n: &Integer) -> bool {
        match self {
            FamilyId::Sextic => ![0, 6, -6, 26, -26].iter().any(|&b| *n == int(b)),
            FamilyId::Quartic => ![0, 3, -3].iter().any(|&b| *n == int(b)),
            FamilyId::Cubic => n.is_odd() && *n >= int(5),
        }
    }

    pub fn check_admissible(self, n: &Integer) -> Result<(), FamilyError> {
        if self.is_admissible(n) {
            Ok(())
        } else {
            Err(FamilyError::InadmissibleParameter { family: self, n: n.clone() })
        }
    }

    /// Whether `r` satisfies the family's constraint: `(r,6) = 1`, `r` odd, `3 ∤ r`.
    pub fn r_allowed(self, r: u64) -> bool {
        r >= 1
            && match self {
                FamilyId::Sextic => r % 2 == 1 && r % 3 != 0,
                FamilyId::Quartic => r % 2 == 1,
                FamilyId::Cubic => r % 3 != 0,
            }
    }

    pub fn check_r(self, r: u64) -> Result<(), FamilyError> {
        if self.r_allowed(r) {
            Ok(())
        } else {
            Err(FamilyError::GcdConstraintViolated { family: self, r })
        }
    }

    /// `(α, β)` with special value `α n + β`.
    pub fn linear_form_coeffs(self) -> (i64, i64) {
        match self {
            FamilyId::Sextic => (30, -143),
            FamilyId::Quartic => (6, -7),
            FamilyId::Cubic => (6, 7),
        }
    }

    pub fn linear_form(self, n: &Integer) -> Integer {
        let (a, b) = self.linear_form_coeffs();
        n * a + b
    }

    /// The special value as a polynomial in n.
    pub fn linear_form_poly(self) -> RatPoly {
        let (a, b) = self.linear_form_coeffs();
        RatPoly::from_i64(&[b, a])
    }

    /// The factor of the discriminant, as a polynomial in n, that governs ramification.
    pub fn critical_factor_poly(self) -> RatPoly {
        match self {
            FamilyId::Sextic => RatPoly::from_i64(&[108, 0, 1]),
            FamilyId::Quartic => RatPoly::from_i64(&[16, 0, 1]),
            FamilyId::Cubic => RatPoly::from_i64(&[-27, 0, -18, 0, 1]),
        }
    }

    pub fn critical_factor(self, n: &Integer) -> Integer {
        let v = self.critical_factor_poly().eval(&Rational::from_integer(n.clone()));
        v.to_integer()
    }

    /// `Res_n(special value, critical factor)`.
    pub fn excluded_resultant(self) -> Integer {
        resultant(&self.linear_form_poly(), &self.critical_factor_poly()).to_integer()
    }

    /// Primes `p` for which `p | special value` and `p | critical factor` can
    /// happen simultaneously.
    pub fn excluded_primes(self) -> Vec<Integer> {
        let res = self.excluded_resultant();
        let fac = factorize(&res.abs()).expect("resultant is a small nonzero integer");
        fac.primes().cloned().collect()
    }

    /// The closed form of `disc(f_n)`.
    pub fn discriminant_closed_form(self, n: &Integer) -> Rational {
        let c = Rational::from_integer(self.critical_factor(n));
        match self {
            FamilyId::Sextic => {
                let num = Rational::from_integer(int(729)) * num_traits::pow(c, 5);
                num / Rational::from_integer(int(1 << 14))
            }
            FamilyId::Quartic => Rational::from_integer(int(4)) * num_traits::pow(c, 3),
            FamilyId::Cubic => c,
        }
    }
}

/// `f_n` for the family, with exact rational coefficients.
pub fn defining_poly(family: FamilyId, n: &Integer) -> Result<RatPoly, FamilyError> {
    family.check_admissible(n)?;
    let f = match family {
        FamilyId::Sextic => {
            let coeffs = vec![
                Rational::one(),
                q(n + 6, 2),
                q((n - 6) * 5, 4),
                Rational::from_integer(int(-20)),
                q(-(n + int(6)) * int(5), 4),
                q(-(n - int(6)), 2),
                Rational::one(),
            ];
            let f = RatPoly::new(coeffs);
            let want_integral = n.mod_floor(&int(4)) == int(2);
            if f.is_integral() != want_integral {
                return Err(FamilyError::IdentityFailed(format!(
                    "sextic f_{n} integrality does not match n ≡ 2 (mod 4)"
                )));
            }
            f
        }
        FamilyId::Quartic => RatPoly::from_integers(&[int(1), n.clone(), int(-6), -n, int(1)]),
        FamilyId::Cubic => RatPoly::from_integers(&[int(-1), n.clone(), n.clone(), int(1)]),
    };
    Ok(f)
}

/// `f_n` at the family's distinguished point, checked against the linear form.
pub fn special_value(family: FamilyId, n: &Integer) -> Result<Integer, FamilyError> {
    let f = defining_poly(family, n)?;
    let v = f.eval(&Rational::from_integer(int(family.eval_point())));
    let lin = family.linear_form(n);
    if v != Rational::from_integer(lin.clone()) {
        return Err(FamilyError::IdentityFailed(format!(
            "f_{n}({}) = {v} differs from the linear form {lin}",
            family.eval_point()
        )));
    }
    Ok(lin)
}

pub fn excluded_primes(family: FamilyId) -> Vec<Integer> {
    family.excluded_primes()
}

/// One admissible member `K_n` of a family.
#[derive(Debug, Clone)]
pub struct FieldInstance {
    family: FamilyId,
    n: Integer,
    f: RatPoly,
    field: Arc<NumberField>,
    /// `σ^i(ρ)` for Galois families.
    rho_conj: Vec<FieldElement>,
}

impl FieldInstance {
    pub fn new(family: FamilyId, n: &Integer) -> Result<Self, FamilyError> {
        let f = defining_poly(family, n)?;
        let field = NumberField::new(&f);
        let rho = FieldElement::generator(&field);
        let mut rho_conj = Vec::new();
        if let Ok(sigma) = family.sigma() {
            let mut cur = rho.clone();
            for _ in 0..family.degree() {
                rho_conj.push(cur.clone());
                cur = sigma.apply(&cur).ok_or_else(|| {
                    FamilyError::IdentityFailed("σ has a pole at a conjugate of ρ".into())
                })?;
            }
            if cur != rho {
                return Err(FamilyError::IdentityFailed("σ does not have the expected order on ρ".into()));
            }
        }
        Ok(FieldInstance {
            family,
            n: n.clone(),
            f,
            field,
            rho_conj,
        })
    }

    pub fn from_i64(family: FamilyId, n: i64) -> Result<Self, FamilyError> {
        Self::new(family, &int(n))
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn n(&self) -> &Integer {
        &self.n
    }

    pub fn f(&self) -> &RatPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.family.degree()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rho(&self) -> FieldElement {
        FieldElement::generator(&self.field)
    }

    pub fn constant(&self, c: i64) -> FieldElement {
        FieldElement::from_int(&self.field, c)
    }

    pub fn element(&self, rep: &RatPoly) -> FieldElement {
        FieldElement::new(&self.field, rep)
    }

    pub fn special_value(&self) -> Integer {
        self.family.linear_form(&self.n)
    }

    /// `ρ_i = σ^i(ρ)`.
    pub fn rho_i(&self, i: usize) -> Result<FieldElement, FamilyError> {
        if self.rho_conj.is_empty() {
            return Err(FamilyError::NonGaloisFamily(self.family));
        }
        Ok(self.rho_conj[i % self.rho_conj.len()].clone())
    }

    /// `σ^i(e)`.
    pub fn conjugate(&self, e: &FieldElement, i: usize) -> Result<FieldElement, FamilyError> {
        let image = self.rho_i(i)?;
        Ok(e.compose(&image))
    }
}

/// `σ^i(ρ)` for the family as an explicit Möbius map.
pub fn conjugate_map(family: FamilyId, i: u32) -> Result<MobiusMap, FamilyError> {
    Ok(family.sigma()?.pow(i))
}

/// `σ^i(e)`, or `NonGaloisFamily` for the cubic family.
pub fn conjugate(instance: &FieldInstance, e: &FieldElement, i: usize) -> Result<FieldElement, FamilyError> {
    instance.conjugate(e, i)
}
