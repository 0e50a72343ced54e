use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

use super::field::FieldElement;
use crate::exactmath::{inv_mod, Integer, Rational};

/// `x ↦ (a x + b) / (c x + d)` with integer entries and `ad - bc ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub d: Integer,
}

impl MobiusMap {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        let m = MobiusMap {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        assert!(!m.det().is_zero(), "degenerate Möbius map");
        m
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> Integer {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `self ∘ other`, with the common content of the entries removed.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let a = &self.a * &other.a + &self.b * &other.c;
        let b = &self.a * &other.b + &self.b * &other.d;
        let c = &self.c * &other.a + &self.d * &other.c;
        let d = &self.c * &other.b + &self.d * &other.d;
        normalize(a, b, c, d)
    }

    pub fn pow(&self, k: u32) -> MobiusMap {
        let mut acc = MobiusMap::identity();
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Whether the matrix is a scalar multiple of the identity.
    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Smallest `k ≥ 1` with `self^k` the identity, searched up to `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = self.compose(&acc);
        }
        None
    }

    pub fn apply_rational(&self, x: &Rational) -> Option<Rational> {
        let den = Rational::from_integer(self.c.clone()) * x + Rational::from_integer(self.d.clone());
        if den.is_zero() {
            return None;
        }
        Some((Rational::from_integer(self.a.clone()) * x + Rational::from_integer(self.b.clone())) / den)
    }

    pub fn apply(&self, x: &FieldElement) -> Option<FieldElement> {
        let k = x.field();
        let lift = |v: &Integer| FieldElement::from_rational(k, Rational::from_integer(v.clone()));
        let num = &(&lift(&self.a) * x) + &lift(&self.b);
        let den = &(&lift(&self.c) * x) + &lift(&self.d);
        den.inv().map(|inv| &num * &inv)
    }

    /// Image of a residue modulo `ell`; `None` when the denominator vanishes.
    pub fn apply_mod(&self, x: &Integer, ell: &Integer) -> Option<Integer> {
        let den = (&self.c * x + &self.d).mod_floor(ell);
        let inv = inv_mod(&den, ell).ok()?;
        Some(((&self.a * x + &self.b) * inv.value()).mod_floor(ell))
    }

    /// Homogenized image `F(a X + b, c X + d)` of a polynomial of degree `deg`,
    /// i.e. `(cX + d)^deg · F(σ(X))`.
    pub fn homogenize(&self, f: &crate::polynomial::RatPoly) -> crate::polynomial::RatPoly {
        use crate::polynomial::RatPoly;
        let deg = f.degree().unwrap_or(0);
        let num = RatPoly::linear(Rational::from_integer(self.a.clone()), Rational::from_integer(self.b.clone()));
        let den = RatPoly::linear(Rational::from_integer(self.c.clone()), Rational::from_integer(self.d.clone()));
        let mut acc = RatPoly::zero();
        for (i, ci) in f.coeffs().iter().enumerate() {
            let term = &num.pow(i as u32) * &den.pow((deg - i) as u32);
            acc = &acc + &term.scale(ci);
        }
        acc
    }

    pub fn entries_i64(&self) -> Option<[i64; 4]> {
        Some([self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?, self.d.to_i64()?])
    }
}

fn normalize(a: Integer, b: Integer, c: Integer, d: Integer) -> MobiusMap {
    let g = a.gcd(&b).gcd(&c).gcd(&d);
    let mut g = if g.is_zero() { BigInt::from(1) } else { g };
    // fix sign so that the first nonzero of (c, d) is positive
    let lead = if c.is_zero() { &d } else { &c };
    if lead.is_negative() {
        g = -g;
    }
    MobiusMap {
        a: a / &g,
        b: b / &g,
        c: c / &g,
        d: d / &g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(MobiusMap::new(1, -1, 1, 2).order(12), Some(6));
        assert_eq!(MobiusMap::new(1, -1, 1, 1).order(12), Some(4));
        assert_eq!(MobiusMap::identity().order(3), Some(1));
    }

    #[test]
    fn residues() {
        let s = MobiusMap::new(1, -1, 1, 2);
        let ell = BigInt::from(7);
        // -3 ↦ -4/-1 = 4
        assert_eq!(s.apply_mod(&BigInt::from(-3), &ell), Some(BigInt::from(4)));
        assert_eq!(s.apply_mod(&BigInt::from(5), &ell), None);
    }
}
