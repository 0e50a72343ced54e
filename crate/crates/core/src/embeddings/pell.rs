use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::interval::{sqrt_interval, RealInterval};
use super::EmbeddingsError;
use crate::exactmath::{is_perfect_square, Integer, Rational};

/// A unit `(x + y√D)/2` (when `half`) or `x + y√D` greater than 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticUnit {
    pub d: Integer,
    pub x: Integer,
    pub y: Integer,
    pub half: bool,
}

#[derive(Serialize)]
struct UnitRepr {
    d: String,
    x: String,
    y: String,
    half: bool,
    norm: String,
}

impl Serialize for QuadraticUnit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        UnitRepr {
            d: self.d.to_string(),
            x: self.x.to_string(),
            y: self.y.to_string(),
            half: self.half,
            norm: self.norm().to_string(),
        }
        .serialize(s)
    }
}

impl QuadraticUnit {
    /// `x² − D y²`, divided by 4 in the half-integer normalization.
    pub fn norm(&self) -> Integer {
        let v = &self.x * &self.x - &self.d * &self.y * &self.y;
        if self.half {
            v / 4
        } else {
            v
        }
    }

    pub fn is_unit(&self) -> bool {
        let v = &self.x * &self.x - &self.d * &self.y * &self.y;
        let target = if self.half { BigInt::from(4) } else { BigInt::one() };
        v.abs() == target
    }

    /// Enclosure of the real value.
    pub fn value(&self, bits: u32) -> RealInterval {
        let root = sqrt_interval(&self.d, bits + 8);
        let x = RealInterval::point(Rational::from_integer(self.x.clone()));
        let v = &x + &root.scale(&Rational::from_integer(self.y.clone()));
        if self.half {
            v.scale(&Rational::new(BigInt::one(), BigInt::from(2)))
        } else {
            v
        }
    }

    pub fn ln(&self, bits: u32) -> Option<RealInterval> {
        self.value(bits).ln(bits)
    }
}

/// The first unit `> 1` of `ℤ[√D]`, or of `ℤ[(1+√D)/2]` when `D ≡ 1 (mod 4)`,
/// read off the convergents of the continued fraction.
pub fn pell_fundamental_unit(d: &Integer) -> Result<QuadraticUnit, EmbeddingsError> {
    if !d.is_positive() || is_perfect_square(d) {
        return Err(EmbeddingsError::PerfectSquare(d.clone()));
    }
    let half = d.mod_floor(&BigInt::from(4)) == BigInt::one();
    let s = d.sqrt();
    // expansion of (P + √D)/Q
    let (mut p, mut q) = if half { (BigInt::one(), BigInt::from(2)) } else { (BigInt::zero(), BigInt::one()) };
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (&p + &s).div_floor(&q);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);

        let cand = if half {
            QuadraticUnit {
                d: d.clone(),
                x: &h * 2 - &k,
                y: k.clone(),
                half: true,
            }
        } else {
            QuadraticUnit {
                d: d.clone(),
                x: h.clone(),
                y: k.clone(),
                half: false,
            }
        };
        if cand.x.is_positive() && cand.y.is_positive() && cand.is_unit() {
            return Ok(cand);
        }
        p = &a * &q - &p;
        q = (d - &p * &p) / &q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Smallest `y ≥ 1` with `D y² ± 1` (or `± 4`) a square, by brute force.
    fn brute(d: i64, half: bool) -> (i64, i64) {
        let t = if half { 4 } else { 1 };
        for y in 1i64.. {
            for sgn in [-1i64, 1] {
                let v = d * y * y + sgn * t;
                if v > 0 {
                    let x = (v as f64).sqrt().round() as i64;
                    if x * x == v {
                        return (x, y);
                    }
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn small_discriminants() {
        for d in [2i64, 3, 5, 6, 7, 13, 17, 20, 21, 29, 41, 61, 109, 124] {
            let u = pell_fundamental_unit(&BigInt::from(d)).unwrap();
            assert!(u.is_unit());
            let (x, y) = brute(d, u.half);
            assert_eq!((u.x.clone(), u.y.clone()), (BigInt::from(x), BigInt::from(y)), "D={d}");
        }
        assert!(pell_fundamental_unit(&BigInt::from(16)).is_err());
    }

    #[test]
    fn golden_ratio() {
        let u = pell_fundamental_unit(&BigInt::from(5)).unwrap();
        assert_eq!((u.x.clone(), u.y.clone(), u.half), (BigInt::one(), BigInt::one(), true));
        assert_eq!(u.norm(), BigInt::from(-1));
        assert!(u.ln(40).unwrap().is_positive());
    }
}
