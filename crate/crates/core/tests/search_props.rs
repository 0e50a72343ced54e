use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use classforge::certificate::{role_conditions, WitnessRole};
use classforge::exactmath::{Integer, Symbol};
use classforge::family::FamilyId;
use classforge::search::{
    build_cr, construct_y_n, find_bauer_prime, find_ramified_q, parse_conditions, prime_divisors, ramified_prime_setup,
    ResidueCondition, SearchConfig, SearchError,
};

fn int(v: i64) -> Integer {
    BigInt::from(v)
}

/// p-th powers mod ℓ by listing them, no Euler criterion.
fn pth_powers(ell: u64, p: u64) -> BTreeSet<u64> {
    (1..ell)
        .map(|x| {
            let mut acc = 1u64;
            for _ in 0..p {
                acc = acc * x % ell;
            }
            acc
        })
        .collect()
}

fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn oracle_symbol(base: u64, ell: u64, p: u64) -> Symbol {
    if pth_powers(ell, p).contains(&(base % ell)) {
        Symbol::Residue
    } else {
        Symbol::NonResidue
    }
}

fn oracle_bauer(p: u64, conds: &[(u64, Symbol)], avoid: &[u64], bound: u64) -> Option<u64> {
    (2..=bound).find(|&ell| {
        is_prime_naive(ell)
            && ell % p == 1
            && !avoid.contains(&ell)
            && conds.iter().all(|&(b, s)| b % ell != 0 && oracle_symbol(b, ell, p) == s)
    })
}

#[test]
fn bauer_examples() {
    use Symbol::*;
    let w = find_bauer_prime(5, &[ResidueCondition::new(37, NonResidue)], &[2, 3, 37, 47], 0, 10_000).unwrap();
    assert_eq!(w.ell, int(11));
    assert_eq!(w.transcript, vec![(37, NonResidue)]);
    let w = find_bauer_prime(5, &parse_conditions("2:R,3:N").unwrap(), &[], 0, 10_000).unwrap();
    assert_eq!(w.ell, int(151));
    let w = find_bauer_prime(5, &parse_conditions("3:R,2:N").unwrap(), &[], 0, 10_000).unwrap();
    assert_eq!(w.ell, int(41));
    // 3^30 ≡ 59 (mod 151) and 2^8 ≡ 10 (mod 41) witness the non-residues
    assert_eq!(BigInt::from(3).modpow(&int(30), &int(151)), int(59));
    assert_eq!(BigInt::from(2).modpow(&int(8), &int(41)), int(10));
}

#[test]
fn bauer_bound_and_bad_input() {
    let err = find_bauer_prime(5, &parse_conditions("2:R,3:N").unwrap(), &[], 0, 150).unwrap_err();
    assert!(matches!(err, SearchError::BoundExhausted { bound: 150, .. }));
    assert!(find_bauer_prime(6, &[], &[], 0, 100).is_err());
    assert!(parse_conditions("2:R,2:N").is_err());
    assert!(parse_conditions("2=R").is_err());
    // 4 is a square, so it can never be a quadratic non-residue
    let err = find_bauer_prime(2, &parse_conditions("4:N").unwrap(), &[], 0, 2_000).unwrap_err();
    assert!(matches!(err, SearchError::BoundExhausted { .. }));
}

#[test]
fn bauer_floor_is_strict() {
    let w = find_bauer_prime(5, &parse_conditions("2:R,3:N").unwrap(), &[], 151, 100_000).unwrap();
    let want = (152..)
        .find(|&l| {
            is_prime_naive(l)
                && l % 5 == 1
                && oracle_symbol(2, l, 5) == Symbol::Residue
                && oracle_symbol(3, l, 5) == Symbol::NonResidue
        })
        .unwrap();
    assert_eq!(w.ell, int(want as i64));
}

#[test]
fn role_tables_match_the_stated_conditions() {
    use Symbol::{NonResidue as N, Residue as R};
    let as_pairs = |f, role| -> Vec<(u64, Symbol)> {
        role_conditions(f, role).unwrap().iter().map(|c| (c.base, c.requirement)).collect()
    };
    assert_eq!(as_pairs(FamilyId::Sextic, WitnessRole::L1), vec![(2, R), (3, R), (5, N)]);
    assert_eq!(as_pairs(FamilyId::Sextic, WitnessRole::L2), vec![(3, R), (5, R), (2, N)]);
    assert_eq!(as_pairs(FamilyId::Quartic, WitnessRole::L1), vec![(2, R), (3, N)]);
    assert_eq!(as_pairs(FamilyId::Quartic, WitnessRole::L2), vec![(3, R), (2, N)]);
    assert_eq!(as_pairs(FamilyId::Cubic, WitnessRole::L1), vec![(2, R), (37, R), (3, N)]);
    assert_eq!(as_pairs(FamilyId::Cubic, WitnessRole::L2), vec![(37, R), (2, N), (3, N)]);
    assert_eq!(as_pairs(FamilyId::Cubic, WitnessRole::L3), vec![(37, N)]);
    assert!(role_conditions(FamilyId::Quartic, WitnessRole::L3).is_none());
}

#[test]
fn quartic_cr_example() {
    let cr = build_cr(FamilyId::Quartic, 5, Some(13), &SearchConfig::default()).unwrap();
    let ells: Vec<Integer> = cr.witnesses.iter().map(|w| w.witness.ell.clone()).collect();
    assert_eq!(ells, vec![int(151), int(41)]);
    assert_eq!(cr.s, int(11));
    assert_eq!(cr.c_r, int(68101));
    assert_eq!(cr.c_r.mod_floor(&int(6)), int(1));
}

#[test]
fn sextic_cr_congruence() {
    // r = 1 degenerates to c_r ≡ 1 (mod 30)
    let cr = build_cr(FamilyId::Sextic, 1, None, &SearchConfig::default()).unwrap();
    assert_eq!(cr.c_r.mod_floor(&int(30)), int(1));
    assert!(cr.witnesses.is_empty());
    for r in [5u64, 7, 11, 35] {
        let cr = build_cr(FamilyId::Sextic, r, None, &SearchConfig::default()).unwrap();
        let c = cr.c_r.mod_floor(&int(30));
        // c^r·7^{r−1} ≡ 1 (mod 30)
        let lhs = c.modpow(&int(r as i64), &int(30)) * int(7).modpow(&int(r as i64 - 1), &int(30));
        assert_eq!(lhs.mod_floor(&int(30)), int(1), "r = {r}");
        for p in [2, 3, 5, 7] {
            assert!(!cr.c_r.is_multiple_of(&int(p)));
        }
        assert_eq!(cr.witnesses.len(), 2 * prime_divisors(r).len());
    }
}

#[test]
fn construct_examples() {
    let q = construct_y_n(FamilyId::Quartic, 5, &int(68101), &int(0), None, &int(0)).unwrap();
    assert_eq!(q.y, int(-68101));
    let y5 = num_traits::pow(int(-68101), 5);
    assert_eq!(q.n * 6, y5 + 7);

    let cr = build_cr(FamilyId::Sextic, 5, None, &SearchConfig::default()).unwrap();
    let s = construct_y_n(FamilyId::Sextic, 5, &cr.c_r, &int(0), None, &int(3)).unwrap();
    assert_eq!(num_traits::pow(s.y.clone(), 5).mod_floor(&int(30)), int(7));
    assert_eq!(s.n.mod_floor(&int(4)), int(2));
    assert_eq!(s.y.mod_floor(&int(8)), int(5));

    // inadmissible c_r is rejected
    assert!(matches!(
        construct_y_n(FamilyId::Quartic, 5, &int(5), &int(0), None, &int(0)),
        Err(SearchError::CongruenceViolated(_))
    ));
}

#[test]
fn cubic_squares_when_needed() {
    // c_r = 7: 7^5 ≡ 3 (mod 4), so y is squared
    let yn = construct_y_n(FamilyId::Cubic, 5, &int(7), &int(0), None, &int(0)).unwrap();
    assert_eq!(yn.y, int(49));
    assert!(yn.n.is_odd());
    assert_eq!(yn.n * 6 + 7, num_traits::pow(int(49), 5));
    // c_r = 13 needs no squaring
    let yn = construct_y_n(FamilyId::Cubic, 5, &int(13), &int(0), None, &int(0)).unwrap();
    assert_eq!(yn.y, int(13));
}

/// Brute-force count of distinct roots of X^{2r} + aX^r + b mod q.
fn splits_oracle(a: u64, b: u64, r: u64, q: u64) -> bool {
    let count = (0..q)
        .filter(|&x| {
            let mut xr = 1u64;
            for _ in 0..r {
                xr = xr * x % q;
            }
            (xr * xr + a % q * xr + b) % q == 0
        })
        .count();
    count as u64 == 2 * r
}

#[test]
fn ramified_q_scan_matches_brute_force() {
    let r = 5;
    let want = (2..)
        .filter(|&q| is_prime_naive(q) && 210 % q != 0 && r % q != 0)
        .find(|&q| splits_oracle(286, 117649, r, q))
        .unwrap();
    assert_eq!(find_ramified_q(FamilyId::Sextic, r, 0, 100_000).unwrap(), want);
    assert_eq!(want, 1621);
    let want = (2..)
        .filter(|&q| is_prime_naive(q) && 30 % q != 0 && r % q != 0)
        .find(|&q| splits_oracle(14, 625, r, q))
        .unwrap();
    assert_eq!(find_ramified_q(FamilyId::Quartic, r, 0, 100_000).unwrap(), want);
}

#[test]
fn ramified_setup_examples() {
    // r = 1, q = 13: −108 ≡ 9 = 3² (mod 13)
    let s = ramified_prime_setup(FamilyId::Sextic, 1, 13, &int(1)).unwrap();
    let d: Integer = &s.n0 * &s.n0 + 108;
    assert!(d.is_multiple_of(&int(13)));
    assert!(!d.is_multiple_of(&int(169)));
    // q = 7 divides 210r
    assert!(matches!(
        ramified_prime_setup(FamilyId::Sextic, 1, 7, &int(1)),
        Err(SearchError::PrimeInadmissible { q: 7, .. })
    ));
    // 𝒫 does not split modulo 13 at r = 5
    assert!(matches!(
        ramified_prime_setup(FamilyId::Sextic, 5, 13, &int(1)),
        Err(SearchError::PrimeInadmissible { q: 13, .. })
    ));
    assert!(ramified_prime_setup(FamilyId::Cubic, 5, 13, &int(1)).is_err());
}

#[test]
fn ramified_steering_holds_for_every_m() {
    let cfg = SearchConfig::default();
    for (fam, d0) in [(FamilyId::Sextic, 108), (FamilyId::Quartic, 16)] {
        let r = 5;
        let q = find_ramified_q(fam, r, 0, 100_000).unwrap();
        let cr = build_cr(fam, r, Some(q), &cfg).unwrap();
        let s = ramified_prime_setup(fam, r, q, &cr.c_r).unwrap();
        let qi = int(q as i64);
        let q2 = &qi * &qi;
        assert_eq!(
            (num_traits::pow(s.b0.clone(), r as usize) - fam.linear_form(&s.n0)).mod_floor(&q2),
            int(0)
        );
        let mut seen = 0;
        for m in 0..40 {
            let Ok(yn) = construct_y_n(fam, r, &cr.c_r, &s.y0, Some(q), &int(m)) else { continue };
            seen += 1;
            assert_eq!((&yn.n - &s.n0).mod_floor(&q2), int(0));
            let d: Integer = &yn.n * &yn.n + d0;
            assert!(d.is_multiple_of(&qi));
            assert!(!d.is_multiple_of(&q2));
        }
        assert!(seen > 10);
    }
}

#[test]
fn config_parsing() {
    let cfg = SearchConfig::parse("# bounds\nscan_bound = 5000\nm_max=7\n\nfactor_budget = 10 # inline\n").unwrap();
    assert_eq!(cfg.scan_bound, 5000);
    assert_eq!(cfg.m_max, 7);
    assert_eq!(cfg.factor_budget, 10);
    assert_eq!(cfg.precision_budget, SearchConfig::default().precision_budget);
    assert!(SearchConfig::parse("bogus = 1").is_err());
    assert!(SearchConfig::parse("m_max = 0").is_err());
    assert!(SearchConfig::parse("m_max").is_err());
}

fn family_and_r() -> impl Strategy<Value = (FamilyId, u64)> {
    prop_oneof![
        prop::sample::select(vec![1u64, 5, 7, 11, 13, 25, 35]).prop_map(|r| (FamilyId::Sextic, r)),
        prop::sample::select(vec![1u64, 3, 5, 7, 9, 15, 35]).prop_map(|r| (FamilyId::Quartic, r)),
        prop::sample::select(vec![1u64, 2, 4, 5, 7, 10, 35]).prop_map(|r| (FamilyId::Cubic, r)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn y_power_is_the_special_value((fam, r) in family_and_r(), m in 0i64..500) {
        let cr = build_cr(fam, r, None, &SearchConfig::default()).unwrap();
        if let Ok(yn) = construct_y_n(fam, r, &cr.c_r, &int(0), None, &int(m)) {
            prop_assert_eq!(fam.linear_form(&yn.n), num_traits::pow(yn.y.clone(), r as usize));
            let prod: Integer = yn.parts.iter().product();
            prop_assert_eq!(prod, yn.y.clone());
            for ex in fam.excluded_primes() {
                prop_assert!(!yn.y.is_multiple_of(&ex));
            }
            match fam {
                FamilyId::Sextic => prop_assert_eq!(yn.n.mod_floor(&int(4)), int(2)),
                FamilyId::Cubic => prop_assert!(yn.n.is_odd() && yn.n >= int(5)),
                FamilyId::Quartic => {}
            }
        }
    }

    #[test]
    fn bauer_matches_oracle(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                            mask in 0u8..16, which in 0u8..16) {
        let bases = [2u64, 3, 5, 37];
        let conds: Vec<ResidueCondition> = bases
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(i, &b)| ResidueCondition::new(
                b as i64,
                if which >> i & 1 == 1 { Symbol::Residue } else { Symbol::NonResidue },
            ))
            .collect();
        let pairs: Vec<(u64, Symbol)> = conds.iter().map(|c| (c.base, c.requirement)).collect();
        let bound = 3_000;
        let got = find_bauer_prime(p, &conds, &[2, 3, 5, 37], 0, bound).ok();
        let want = oracle_bauer(p, &pairs, &[2, 3, 5, 37], bound);
        prop_assert_eq!(got.as_ref().map(|w| w.ell.clone()), want.map(|v| int(v as i64)));
        if let Some(w) = got {
            for &(b, s) in &w.transcript {
                prop_assert_eq!(oracle_symbol(b, w.ell.to_u64().unwrap(), p), s);
            }
        }
    }
}
