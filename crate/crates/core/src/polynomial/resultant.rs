use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntPoly, PolynomialError, RatPoly};
use crate::exactmath::{Integer, Rational};

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed in ℤ[X].
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("pseudo-division by zero");
    let lc = b.leading().unwrap().clone();
    let Some(da) = a.degree() else {
        return IntPoly::zero();
    };
    if da < db {
        return a.clone();
    }
    let mut e = da - db + 1;
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let c = r.leading().unwrap().clone();
        r = &r.scale(&lc) - &(b * &IntPoly::monomial(c, dr - db));
        e -= 1;
    }
    r.scale(&num_traits::pow(lc, e))
}

/// Resultant over ℤ by the subresultant algorithm.
pub fn resultant_int(a: &IntPoly, b: &IntPoly) -> Integer {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Integer::zero();
    };
    let mut s = Integer::one();
    let (mut a, mut b) = (a.clone(), b.clone());
    let (mut da, mut db) = (da, db);
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    if db == 0 {
        return s * num_traits::pow(b.leading().unwrap().clone(), da);
    }
    let ca = a.content();
    let cb = b.content();
    a = a.primitive_part();
    b = b.primitive_part();
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut g = Integer::one();
    let mut h = Integer::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = IntPoly::new(r.coeffs().iter().map(|c| c / &div).collect());
        g = a.leading().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1),
        };
        match b.degree() {
            None => return Integer::zero(),
            Some(0) => {
                let d_a = a.degree().unwrap();
                let lb = b.leading().unwrap().clone();
                let hh = num_traits::pow(lb, d_a) / num_traits::pow(h, d_a - 1);
                return s * t * hh;
            }
            Some(_) => {}
        }
    }
}

/// Exact resultant of two rational polynomials.
pub fn resultant(f: &RatPoly, g: &RatPoly) -> Rational {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Rational::zero();
    };
    let (cf, fi) = f.clear_denominators();
    let (cg, gi) = g.clear_denominators();
    let num = resultant_int(&fi, &gi);
    let den = num_traits::pow(cf, dg) * num_traits::pow(cg, df);
    Rational::new(num, den)
}

/// `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &RatPoly) -> Result<Rational, PolynomialError> {
    let d = f.degree().ok_or(PolynomialError::ZeroPolynomial)?;
    let res = resultant(f, &f.derivative());
    let sign = if (d * (d.saturating_sub(1)) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(res * Rational::from_integer(BigInt::from(sign)) / f.leading().unwrap())
}

pub fn discriminant_int(f: &IntPoly) -> Result<Integer, PolynomialError> {
    Ok(discriminant(&f.to_rat())?.to_integer())
}
