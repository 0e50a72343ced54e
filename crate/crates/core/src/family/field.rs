use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{Integer, Rational};
use crate::polynomial::{resultant, RatPoly};

/// ℚ[X]/(f) for a monic irreducible `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: RatPoly,
}

impl NumberField {
    /// `f` is made monic; irreducibility is the caller's responsibility.
    pub fn new(f: &RatPoly) -> Arc<Self> {
        assert!(f.degree().unwrap_or(0) >= 1, "field modulus must be nonconstant");
        Arc::new(NumberField { modulus: f.monic() })
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }
}

/// Element of a [`NumberField`], stored as its reduced representative.
#[derive(Debug, Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    rep: RatPoly,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, rep: &RatPoly) -> Self {
        FieldElement {
            field: field.clone(),
            rep: rep.rem(field.modulus()),
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, c: Rational) -> Self {
        Self::new(field, &RatPoly::constant(c))
    }

    pub fn from_int(field: &Arc<NumberField>, c: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(c)))
    }

    /// The class of X.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, &RatPoly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == RatPoly::one()
    }

    /// The rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.rep.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let r = self.rep.inverse_mod(self.field.modulus())?;
        Some(FieldElement {
            field: self.field.clone(),
            rep: r,
        })
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = FieldElement::from_int(&self.field, 1);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }

    /// `g(self)` for a rational polynomial `g`.
    pub fn substitute_into(&self, g: &RatPoly) -> Self {
        let mut acc = FieldElement::from_int(&self.field, 0);
        for c in g.coeffs().iter().rev() {
            acc = &(&acc * self) + &FieldElement::from_rational(&self.field, c.clone());
        }
        acc
    }

    /// The element obtained by replacing the generator with `image`.
    pub fn compose(&self, image: &FieldElement) -> Self {
        image.substitute_into(&self.rep)
    }

    /// Absolute norm `prod_i a(rho_i) = Res(f, a)` (f monic).
    pub fn norm(&self) -> Rational {
        if self.rep.is_zero() {
            return Rational::zero();
        }
        resultant(self.field.modulus(), &self.rep)
    }

    /// Minimal polynomial over ℚ by linear dependence among powers.
    pub fn minimal_polynomial(&self) -> RatPoly {
        let d = self.field.degree();
        // rows: coefficient vectors of 1, a, a^2, ...
        let mut basis: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
        let mut power = FieldElement::from_int(&self.field, 1);
        for k in 0..=d {
            let mut v: Vec<Rational> = (0..d).map(|i| power.rep.coeff(i)).collect();
            // combination tracks how v is written in terms of the powers
            let mut comb = vec![Rational::zero(); d + 1];
            comb[k] = Rational::one();
            for (bv, bc) in &basis {
                let piv = bv.iter().position(|c| !c.is_zero()).unwrap();
                if !v[piv].is_zero() {
                    let f = &v[piv] / &bv[piv];
                    for i in 0..d {
                        let t = &f * &bv[i];
                        v[i] -= t;
                    }
                    for i in 0..=d {
                        let t = &f * &bc[i];
                        comb[i] -= t;
                    }
                }
            }
            if v.iter().all(|c| c.is_zero()) {
                return RatPoly::new(comb).monic();
            }
            basis.push((v, comb));
            power = &power * self;
        }
        unreachable!("d + 1 powers are always dependent")
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            rep: &self.rep + &o.rep,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            rep: &self.rep - &o.rep,
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        FieldElement::new(&self.field, &(&self.rep * &o.rep))
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        self * &o.inv().expect("division by zero in number field")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            rep: -&self.rep,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.rep.to_string().replace('X', "ρ");
        f.write_str(&s)
    }
}

/// Integer-valued helper used by callers that need `a + b*X` style constants.
pub(crate) fn rat(v: i64) -> Rational {
    Rational::from_integer(Integer::from(v))
}
