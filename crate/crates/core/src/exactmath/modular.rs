use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{ExactMathError, Integer};

/// A residue `value` modulo `modulus`, with `0 <= value < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    value: Integer,
    modulus: Integer,
}

impl ResidueClass {
    pub fn new(value: &Integer, modulus: &Integer) -> Result<Self, ExactMathError> {
        if *modulus < BigInt::from(2) {
            return Err(ExactMathError::BadModulus(modulus.clone()));
        }
        Ok(ResidueClass {
            value: value.mod_floor(modulus),
            modulus: modulus.clone(),
        })
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn contains(&self, x: &Integer) -> bool {
        x.mod_floor(&self.modulus) == self.value
    }
}

impl std::fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// `base^exp mod modulus` by square-and-multiply.
pub fn mod_pow(base: &Integer, exp: &Integer, modulus: &Integer) -> Result<ResidueClass, ExactMathError> {
    if *modulus < BigInt::from(2) {
        return Err(ExactMathError::BadModulus(modulus.clone()));
    }
    assert!(!exp.is_negative(), "mod_pow: negative exponent");
    let b = base.mod_floor(modulus);
    let value = b.modpow(exp, modulus);
    ResidueClass::new(&value, modulus)
}

/// `a * b mod m` without overflow.
#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `modulus`.
pub fn inv_mod(a: &Integer, modulus: &Integer) -> Result<ResidueClass, ExactMathError> {
    if *modulus < BigInt::from(2) {
        return Err(ExactMathError::BadModulus(modulus.clone()));
    }
    let a_red = a.mod_floor(modulus);
    let ext = a_red.extended_gcd(modulus);
    if !ext.gcd.is_one() {
        return Err(ExactMathError::NotInvertible {
            value: a.clone(),
            modulus: modulus.clone(),
        });
    }
    ResidueClass::new(&ext.x, modulus)
}

/// Solves a system of congruences.
///
/// Moduli need not be coprime: where two moduli share a factor the residues
/// must agree on it, and the result is taken modulo the lcm. Disagreement is
/// reported as [`ExactMathError::ModuliNotCoprime`].
pub fn crt(pairs: &[(Integer, Integer)]) -> Result<ResidueClass, ExactMathError> {
    let mut acc_r = BigInt::zero();
    let mut acc_m = BigInt::one();
    for (r, m) in pairs {
        if *m < BigInt::one() {
            return Err(ExactMathError::BadModulus(m.clone()));
        }
        let r = r.mod_floor(m);
        let g = acc_m.gcd(m);
        let diff = &r - &acc_r;
        if !diff.mod_floor(&g).is_zero() {
            return Err(ExactMathError::ModuliNotCoprime {
                r1: acc_r,
                m1: acc_m,
                r2: r,
                m2: m.clone(),
            });
        }
        // acc_r + acc_m * t = r (mod m)  =>  (acc_m/g) t = diff/g (mod m/g)
        let m_g = m / &g;
        let t = if m_g.is_one() {
            BigInt::zero()
        } else {
            let inv = inv_mod(&(&acc_m / &g), &m_g)?;
            ((&diff / &g) * inv.value()).mod_floor(&m_g)
        };
        let lcm = &acc_m * &m_g;
        acc_r = (&acc_r + &acc_m * t).mod_floor(&lcm);
        acc_m = lcm;
    }
    if acc_m.is_one() {
        // a lone modulus-1 constraint; every integer qualifies
        return Err(ExactMathError::BadModulus(acc_m));
    }
    ResidueClass::new(&acc_r, &acc_m)
}

/// A square root of `a` modulo the odd prime `p` (Tonelli-Shanks), if one exists.
pub fn sqrt_mod_prime(a: &Integer, p: &Integer) -> Option<Integer> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(a);
    }
    let two = BigInt::from(2);
    if *p == two {
        return Some(a);
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    let half = &pm1 / &two;
    if a.modpow(&half, p) != one {
        return None;
    }
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q /= 2;
        s += 1;
    }
    let mut z = two.clone();
    while z.modpow(&half, p) != pm1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) / &two), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % p;
        }
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    Some(r)
}
