use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::modular::{mod_pow_u64, mul_mod_u64};
use super::Integer;

/// Primes below this bound are decided deterministically; certificates built
/// by the search only embed primes below it.
pub const CERTIFIED_PRIME_BOUND: u64 = u64::MAX;

const SMALL_PRIMES: [u64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101,
    103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

// Miller-Rabin with these bases is exact for every n < 3.3 * 10^24.
const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    let mut x = mod_pow_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES[..12] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    DETERMINISTIC_BASES.iter().all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime(n: &Integer, a: &Integer) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Primality test.
///
/// Exact below 2^64. Above, a strong-probable-prime test to the 40 smallest
/// prime bases; a composite passes with probability below 4^-40 for random
/// input, and no composite passing all 40 is known.
pub fn is_prime(m: &Integer) -> bool {
    if let Some(v) = m.to_u64() {
        return is_prime_u64(v);
    }
    if m.sign() == num_bigint::Sign::Minus {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if (m % p).is_zero() {
            return false;
        }
    }
    SMALL_PRIMES
        .iter()
        .all(|&a| strong_probable_prime(m, &BigInt::from(a)))
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_u64(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Ascending primes starting strictly above a floor.
#[derive(Debug, Clone)]
pub struct PrimeIter {
    current: u64,
}

impl PrimeIter {
    pub fn new() -> Self {
        PrimeIter { current: 1 }
    }

    pub fn above(floor: u64) -> Self {
        PrimeIter { current: floor }
    }
}

impl Default for PrimeIter {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        self.current = next_prime_u64(self.current);
        Some(self.current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is = vec![true; limit];
        is[0] = false;
        is[1] = false;
        let mut i = 2;
        while i * i < limit {
            if is[i] {
                let mut j = i * i;
                while j < limit {
                    is[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn examples() {
        assert!(is_prime(&Integer::from(37)));
        assert!(!is_prime(&Integer::from(117649)));
        assert!(!is_prime(&Integer::from(1)));
        assert!(!is_prime(&Integer::from(0)));
    }

    #[test]
    fn agrees_with_sieve() {
        let s = sieve(20000);
        for (n, &p) in s.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), p, "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprimes to several small bases
        for n in [2047u64, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321] {
            assert!(!is_prime_u64(n), "{n}");
        }
        assert!(is_prime_u64(18446744073709551557));
    }

    #[test]
    fn big_primes() {
        let m61: Integer = (Integer::one() << 61) - 1;
        let m127: Integer = (Integer::one() << 127) - 1;
        assert!(is_prime(&m61));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * &m61)));
        assert!(!is_prime(&((Integer::one() << 128) + 1)));
    }

    #[test]
    fn prime_iter() {
        let v: Vec<u64> = PrimeIter::new().take(6).collect();
        assert_eq!(v, vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(PrimeIter::above(13).next(), Some(17));
    }
}
