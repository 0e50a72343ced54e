use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactmath::{Integer, Rational};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealInterval {
    lo: Rational,
    hi: Rational,
}

impl RealInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RealInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(Rational::from_integer(BigInt::from(v)))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// The sign shared by every point, if there is one.
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_positive() {
            Some(Ordering::Greater)
        } else if self.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Whether the interval lies inside the open interval `(a, b)`.
    pub fn within(&self, a: &Rational, b: &Rational) -> bool {
        a < &self.lo && &self.hi < b
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            let m = if -&self.lo > self.hi { -&self.lo } else { self.hi.clone() };
            RealInterval::new(Rational::zero(), m)
        }
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        RealInterval::new(&a.lo * &a.lo, &a.hi * &a.hi)
    }

    /// `1/x`, or `None` when the interval meets zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(RealInterval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn checked_div(&self, other: &RealInterval) -> Option<Self> {
        Some(self * &other.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self * &RealInterval::point(c.clone())
    }

    /// Widens the endpoints outward to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Self {
        let s = BigInt::one() << bits;
        let den = Rational::from_integer(s.clone());
        let lo = (&self.lo * &den).floor() / &den;
        let hi = (&self.hi * &den).ceil() / &den;
        RealInterval::new(lo, hi)
    }

    /// Natural logarithm with error below `2^-bits` on each side, `None` unless
    /// the interval is positive.
    pub fn ln(&self, bits: u32) -> Option<Self> {
        if !self.is_positive() {
            return None;
        }
        let (lo, _) = ln_bounds(&self.lo, bits);
        let (_, hi) = ln_bounds(&self.hi, bits);
        Some(RealInterval::new(lo, hi))
    }

    pub fn mid_f64(&self) -> f64 {
        let m = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        m.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for &RealInterval {
    type Output = RealInterval;
    fn add(self, o: &RealInterval) -> RealInterval {
        RealInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &RealInterval {
    type Output = RealInterval;
    fn sub(self, o: &RealInterval) -> RealInterval {
        RealInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Mul for &RealInterval {
    type Output = RealInterval;
    fn mul(self, o: &RealInterval) -> RealInterval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RealInterval::new(lo, hi)
    }
}

impl Neg for &RealInterval {
    type Output = RealInterval;
    fn neg(self) -> RealInterval {
        RealInterval::new(-&self.hi, -&self.lo)
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        write!(f, "[{lo:.12e}, {hi:.12e}]")
    }
}

impl Serialize for RealInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RealInterval", 4)?;
        s.serialize_field("lo", &self.lo.to_string())?;
        s.serialize_field("hi", &self.hi.to_string())?;
        s.serialize_field("lo_approx", &self.lo.to_f64())?;
        s.serialize_field("hi_approx", &self.hi.to_f64())?;
        s.end()
    }
}

/// `⌊log₂ x⌋` for positive rational `x`.
fn floor_log2(x: &Rational) -> i64 {
    let n = x.numer().bits() as i64;
    let d = x.denom().bits() as i64;
    let mut k = n - d;
    // adjust so that 2^k ≤ x < 2^{k+1}
    loop {
        let p = pow2(k);
        if &p > x {
            k -= 1;
        } else if &(p * Rational::from_integer(BigInt::from(2))) <= x {
            k += 1;
        } else {
            return k;
        }
    }
}

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::one() << k as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

fn floor_div(a: &Integer, b: &Integer) -> Integer {
    a.div_floor(b)
}

fn ceil_div(a: &Integer, b: &Integer) -> Integer {
    -((-a).div_floor(b))
}

/// Fixed-point bounds on `atanh(z)·2^s` for rational `0 ≤ z ≤ 1/3`, via the
/// odd power series with the tail bounded by a geometric series.
fn atanh_fixed(z: &Rational, s: u32) -> (Integer, Integer) {
    let scale = BigInt::one() << s;
    let zl = floor_div(&(z.numer() * &scale), z.denom());
    let zu = ceil_div(&(z.numer() * &scale), z.denom());
    let z2l = floor_div(&(&zl * &zl), &scale);
    let z2u = ceil_div(&(&zu * &zu), &scale);
    let (mut pl, mut pu) = (zl, zu);
    let (mut sl, mut su) = (BigInt::zero(), BigInt::zero());
    let mut j: u64 = 0;
    loop {
        let k = BigInt::from(2 * j + 1);
        sl += floor_div(&pl, &k);
        su += ceil_div(&pu, &k);
        pl = floor_div(&(&pl * &z2l), &scale);
        pu = ceil_div(&(&pu * &z2u), &scale);
        j += 1;
        if pu.is_zero() || pu.sign() == Sign::NoSign {
            break;
        }
        if pu < BigInt::from(4) {
            // tail Σ_{i≥j} z^{2i+1}/(2i+1) ≤ z^{2j+1}/((2j+1)(1−z²)) and 1/(1−z²) ≤ 9/8
            su += ceil_div(&(&pu * 9), &(BigInt::from(8 * (2 * j + 1)))) + 1;
            break;
        }
    }
    (sl, su)
}

/// Rigorous bounds `lo ≤ ln x ≤ hi` with `hi − lo` about `2^-bits` times `|⌊log₂ x⌋| + 1`.
pub fn ln_bounds(x: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(x.is_positive(), "logarithm of a nonpositive number");
    let k = floor_log2(x);
    let m = x / pow2(k);
    let one = Rational::one();
    let s = bits + 8 + (64 - (k.unsigned_abs() + 1).leading_zeros());
    let den = Rational::from_integer(BigInt::one() << s);
    let z = (&m - &one) / (&m + &one);
    let (ml, mu) = atanh_fixed(&z, s);
    let (l2l, l2u) = atanh_fixed(&Rational::new(BigInt::one(), BigInt::from(3)), s);
    let two = BigInt::from(2);
    let kk = BigInt::from(k);
    let (lo, hi) = if k >= 0 {
        (&kk * &l2l * &two + &ml * &two, &kk * &l2u * &two + &mu * &two)
    } else {
        (&kk * &l2u * &two + &ml * &two, &kk * &l2l * &two + &mu * &two)
    };
    (Rational::from_integer(lo) / &den, Rational::from_integer(hi) / &den)
}

/// `[⌊√v·2^b⌋, ⌊√v·2^b⌋+1]·2^-b` for a nonnegative integer `v`.
pub fn sqrt_interval(v: &Integer, bits: u32) -> RealInterval {
    let scaled = v << (2 * bits as usize);
    let r = scaled.sqrt();
    let den = BigInt::one() << bits;
    let exact = &r * &r == scaled;
    let hi = if exact { r.clone() } else { &r + 1 };
    RealInterval::new(Rational::new(r, den.clone()), Rational::new(hi, den))
}
