use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, PolynomialError, RatPoly};
use crate::exactmath::{Integer, Rational};

/// Rational interval holding exactly one real root of a squarefree polynomial.
///
/// `lo == hi` only when the root is that rational number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Whether the closed interval lies inside the open interval `(a, b)`.
    pub fn within(&self, a: &Rational, b: &Rational) -> bool {
        a < &self.lo && &self.hi < b
    }

    /// Bisects until the width is at most `width`, using exact signs of `f`.
    pub fn refine(&mut self, f: &IntPoly, width: &Rational) {
        if self.is_exact() {
            return;
        }
        let s_lo = f.sign_at(&self.lo);
        debug_assert!(s_lo != Ordering::Equal);
        let two = Rational::from_integer(BigInt::from(2));
        while &self.width() > width {
            let mid = (&self.lo + &self.hi) / &two;
            match f.sign_at(&mid) {
                Ordering::Equal => {
                    self.lo = mid.clone();
                    self.hi = mid;
                    return;
                }
                s if s == s_lo => self.lo = mid,
                _ => self.hi = mid,
            }
        }
    }

    /// Refines to width at most `2^-bits`.
    pub fn refine_bits(&mut self, f: &IntPoly, bits: u32) {
        let w = Rational::new(BigInt::one(), BigInt::one() << bits);
        self.refine(f, &w);
    }
}

/// Sturm sequence of a polynomial, each term scaled by a positive constant.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

fn positive_primitive(p: &RatPoly) -> IntPoly {
    let (_, ip) = p.clear_denominators();
    let c = ip.content();
    if c.is_zero() {
        return ip;
    }
    IntPoly::new(ip.coeffs().iter().map(|a| a / &c).collect())
}

pub fn sturm_sequence(f: &RatPoly) -> SturmSequence {
    let mut seq = Vec::new();
    if f.is_zero() {
        return SturmSequence { seq };
    }
    let mut a = f.clone();
    let mut b = f.derivative();
    seq.push(positive_primitive(&a));
    while !b.is_zero() {
        seq.push(positive_primitive(&b));
        let r = a.rem(&b);
        a = b;
        b = -&r;
    }
    SturmSequence { seq }
}

fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl SturmSequence {
    pub fn polys(&self) -> &[IntPoly] {
        &self.seq
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        count_changes(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn sign_at_infinity(p: &IntPoly, negative: bool) -> Ordering {
        let lc = p.leading().map(|c| c.cmp(&Integer::zero())).unwrap_or(Ordering::Equal);
        if negative && p.degree().unwrap_or(0) % 2 == 1 {
            lc.reverse()
        } else {
            lc
        }
    }

    /// Number of distinct real roots.
    pub fn total_count(&self) -> usize {
        let lo = count_changes(self.seq.iter().map(|p| Self::sign_at_infinity(p, true)));
        let hi = count_changes(self.seq.iter().map(|p| Self::sign_at_infinity(p, false)));
        lo - hi
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Power of two strictly above every root's absolute value (Cauchy bound).
pub(crate) fn root_bound(f: &RatPoly) -> Rational {
    let d = f.degree().unwrap_or(0);
    let lc = f.leading().cloned().unwrap_or_else(Rational::one).abs();
    let m = (0..d).map(|i| f.coeff(i).abs() / &lc).max().unwrap_or_else(Rational::zero);
    let bound = m + Rational::one();
    let mut b = Rational::one();
    while b <= bound {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

fn split_point(f: &IntPoly, a: &Rational, b: &Rational) -> Rational {
    let w = b - a;
    for den in 2i64.. {
        for num in 1..den {
            let t = Rational::new(BigInt::from(num), BigInt::from(den));
            let c = a + &w * &t;
            if f.sign_at(&c) != Ordering::Equal {
                return c;
            }
        }
    }
    unreachable!()
}

/// Disjoint isolating intervals, ascending, one per real root of a squarefree `f`.
pub fn isolate_real_roots(f: &RatPoly) -> Result<Vec<IsolatingInterval>, PolynomialError> {
    let d = f.degree().ok_or(PolynomialError::ZeroPolynomial)?;
    if d == 0 {
        return Ok(Vec::new());
    }
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Err(PolynomialError::NotSquarefree);
    }
    let fi = positive_primitive(f);
    let sturm = sturm_sequence(f);
    let bound = root_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match sturm.count_in(&a, &b) {
            0 => {}
            1 => out.push(IsolatingInterval { lo: a, hi: b }),
            _ => {
                let c = split_point(&fi, &a, &b);
                stack.push((a, c.clone()));
                stack.push((c, b));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}
