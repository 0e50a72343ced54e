use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::rat::fmt_terms;
use crate::exactmath::{mod_pow_u64, mul_mod_u64};

/// Polynomial over 𝔽_q for a prime `q < 2^64`, ascending degree, reduced coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    q: u64,
    coeffs: Vec<u64>,
}

#[inline]
fn add_mod(a: u64, b: u64, q: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= q {
        s.wrapping_sub(q)
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a.wrapping_sub(b).wrapping_add(q)
    }
}

pub(crate) fn inv_mod_prime(a: u64, q: u64) -> u64 {
    debug_assert!(a % q != 0);
    mod_pow_u64(a, q - 2, q)
}

impl ModPoly {
    pub fn new(q: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { q, coeffs }
    }

    pub fn from_i64(q: u64, coeffs: &[i64]) -> Self {
        Self::new(
            q,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(q as i128) as u64)
                .collect(),
        )
    }

    pub fn zero(q: u64) -> Self {
        ModPoly { q, coeffs: Vec::new() }
    }

    pub fn one(q: u64) -> Self {
        Self::new(q, vec![1])
    }

    pub fn x(q: u64) -> Self {
        Self::new(q, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn eval(&self, x: u64) -> u64 {
        let q = self.q;
        let x = x % q;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod_u64(acc, x, q), c, q))
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.q, (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), self.q)).collect())
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.q, (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), self.q)).collect())
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let q = self.q;
        Self::new(q, self.coeffs.iter().map(|&a| mul_mod_u64(a, c % q, q)).collect())
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.q);
        }
        let q = self.q;
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = add_mod(v[i + j], mul_mod_u64(a, b, q), q);
            }
        }
        Self::new(q, v)
    }

    pub fn monic(&self) -> ModPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(inv_mod_prime(lc, self.q)),
        }
    }

    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let q = self.q;
        let dd = d.degree().expect("division by the zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(q), self.clone());
        }
        let lc_inv = inv_mod_prime(d.coeffs[dd], q);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod_u64(rem[i], lc_inv, q);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = sub_mod(rem[k], mul_mod_u64(c, dc, q), q);
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(q, quot), Self::new(q, rem))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        let q = self.q;
        Self::new(
            q,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod_u64(c, i as u64 % q, q))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut result = Self::one(self.q).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        if e.is_zero() {
            return Self::one(self.q).rem(m);
        }
        result
    }

    /// `self^e mod m` for a machine-word exponent.
    pub fn pow_mod_u64(&self, e: u64, m: &ModPoly) -> ModPoly {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// Coefficients of `self(X)^(1/q)` for a polynomial in `X^q` (characteristic q).
    pub(crate) fn qth_root(&self) -> ModPoly {
        let q = self.q as usize;
        let v = self.coeffs.iter().step_by(q).copied().collect();
        Self::new(self.q, v)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, |c| *c == 0)?;
        write!(f, " (mod {})", self.q)
    }
}
