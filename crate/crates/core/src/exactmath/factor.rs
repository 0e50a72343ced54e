use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::is_prime;
use super::{ExactMathError, Integer};

/// Trial division runs through every integer below this bound.
pub const TRIAL_DIVISION_BOUND: u64 = 10_000;
/// Default number of Pollard-rho iterations before giving up.
pub const DEFAULT_FACTOR_BUDGET: u64 = 4_000_000;

/// Complete factorization of |m| into increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    factors: Vec<(Integer, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(Integer, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &Integer> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &Integer) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn product(&self) -> Integer {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn from_unsorted(mut raw: Vec<Integer>) -> Self {
        raw.sort();
        let mut factors: Vec<(Integer, u32)> = Vec::new();
        for p in raw {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        PrimeFactorization { factors }
    }
}

/// Factors `m` with the default work budget.
pub fn factorize(m: &Integer) -> Result<PrimeFactorization, ExactMathError> {
    factorize_with_budget(m, DEFAULT_FACTOR_BUDGET)
}

/// Trial division to [`TRIAL_DIVISION_BOUND`], then Pollard rho (Brent's
/// cycle detection) on the cofactor. `budget` caps the total number of rho
/// iterations; exceeding it is an error, never a partial answer.
pub fn factorize_with_budget(m: &Integer, budget: u64) -> Result<PrimeFactorization, ExactMathError> {
    if m.is_zero() {
        return Err(ExactMathError::FactorZero);
    }
    let mut rest = m.abs();
    let mut found = Vec::new();

    let mut d = 2u64;
    while d < TRIAL_DIVISION_BOUND {
        let dd = BigInt::from(d);
        if &dd * &dd > rest {
            break;
        }
        while (&rest % d).is_zero() {
            rest /= d;
            found.push(dd.clone());
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(PrimeFactorization::from_unsorted(found));
    }
    if BigInt::from(TRIAL_DIVISION_BOUND).pow(2) > rest {
        found.push(rest);
        return Ok(PrimeFactorization::from_unsorted(found));
    }

    let mut spent = 0u64;
    let mut stack = vec![rest];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            found.push(c);
            continue;
        }
        if let Some(root) = perfect_power_root(&c) {
            let (base, k) = root;
            for _ in 0..k {
                stack.push(base.clone());
            }
            continue;
        }
        let d = pollard_brent(&c, budget, &mut spent).ok_or_else(|| ExactMathError::FactorizationTimeout {
            value: m.clone(),
            budget,
        })?;
        let other = &c / &d;
        stack.push(d);
        stack.push(other);
    }
    Ok(PrimeFactorization::from_unsorted(found))
}

// rho cycles badly on prime powers; peel them off first
fn perfect_power_root(c: &Integer) -> Option<(Integer, u32)> {
    let bits = c.bits() as u32;
    for k in 2..=bits.max(2) {
        let r = c.nth_root(k);
        if r < BigInt::from(2) {
            break;
        }
        if num_traits::pow(r.clone(), k as usize) == *c {
            return Some((r, k));
        }
    }
    None
}

fn pollard_brent(n: &Integer, budget: u64, spent: &mut u64) -> Option<Integer> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    for c in 1u64.. {
        let c = BigInt::from(c);
        let f = |x: &Integer| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BLOCK: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BLOCK.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                *spent += steps;
                if *spent > budget {
                    return None;
                }
                g = q.gcd(n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                *spent += 1;
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        if c.to_u64().unwrap_or(u64::MAX) > 64 {
            return None;
        }
    }
    None
}
