use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IntPoly, ModPoly, PolynomialError};
use crate::exactmath::is_prime_u64;

/// Degrees and multiplicities of the irreducible factors, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorPattern(pub Vec<(usize, u32)>);

impl FactorPattern {
    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&(d, m)| d * m as usize).sum()
    }

    pub fn is_linear(&self) -> bool {
        self.0.iter().all(|&(d, _)| d == 1)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, m)| m == 1)
    }

    /// Degrees of every factor, repeated by multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        self.0
            .iter()
            .flat_map(|&(d, m)| std::iter::repeat(d).take(m as usize))
            .collect()
    }
}

/// `lc * prod factors^mult` over 𝔽_q with monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModFactorization {
    pub lc: u64,
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModFactorization {
    pub fn pattern(&self) -> FactorPattern {
        let mut v: Vec<(usize, u32)> = self
            .factors
            .iter()
            .map(|(g, m)| (g.degree().unwrap_or(0), *m))
            .collect();
        v.sort();
        FactorPattern(v)
    }

    pub fn product(&self, q: u64) -> ModPoly {
        let mut acc = ModPoly::new(q, vec![self.lc]);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

/// Complete factorization of `f mod q` into monic irreducibles.
pub fn factor_mod_q(f: &IntPoly, q: u64) -> Result<ModFactorization, PolynomialError> {
    if !is_prime_u64(q) {
        return Err(PolynomialError::NotPrime(q));
    }
    let fq = f.reduce_mod(q);
    if fq.degree() != f.degree() || f.is_zero() {
        return Err(PolynomialError::LeadingCoefficientVanishes(q));
    }
    Ok(factor_modpoly(&fq))
}

/// Whether `f` is a product of linear factors modulo `q`.
pub fn splits_linearly_mod(f: &IntPoly, q: u64) -> Result<bool, PolynomialError> {
    Ok(factor_mod_q(f, q)?.pattern().is_linear())
}

pub(crate) fn factor_modpoly(f: &ModPoly) -> ModFactorization {
    let q = f.modulus();
    let lc = f.leading().expect("factoring the zero polynomial");
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(q.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ f.coeffs().len() as u64);
    let mut factors = Vec::new();
    for (sf, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&sf) {
            for g in equal_degree(&block, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    ModFactorization { lc, factors }
}

/// Distinct roots of `f` in 𝔽_q, ascending.
pub fn roots_mod(f: &ModPoly) -> Vec<u64> {
    let q = f.modulus();
    if f.is_zero() || f.degree() == Some(0) {
        return Vec::new();
    }
    let monic = f.monic();
    let xq = ModPoly::x(q).pow_mod_u64(q, &monic);
    let g = monic.gcd(&xq.sub(&ModPoly::x(q)));
    if g.degree() == Some(0) {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(q ^ 0x5EED);
    let mut roots: Vec<u64> = equal_degree(&g, 1, &mut rng)
        .into_iter()
        .map(|h| (q - h.coeff(0)) % q)
        .collect();
    roots.sort_unstable();
    roots
}

fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let q = f.modulus();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = c.qth_root();
        for (g, m) in squarefree_decomposition(&root.monic()) {
            out.push((g, m * q as u32));
        }
    }
    out
}

fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let q = f.modulus();
    let x = ModPoly::x(q);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod_u64(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest.monic(), d));
    }
    out
}

fn random_poly(q: u64, degree_below: usize, rng: &mut ChaCha8Rng) -> ModPoly {
    ModPoly::new(q, (0..degree_below).map(|_| rng.gen_range(0..q)).collect())
}

/// Splits a squarefree monic product of degree-`d` irreducibles (Cantor-Zassenhaus).
fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    let q = f.modulus();
    loop {
        let a = random_poly(q, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - BigUint::one()) >> 1;
            a.pow_mod(&e, f).sub(&ModPoly::one(q))
        };
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let other = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other.monic(), d, rng));
            return out;
        }
    }
}
