use classforge::exactmath::{Integer, Rational};
use classforge::polynomial::{
    discriminant, factor_mod_q, isolate_real_roots, resultant, splits_linearly_mod, sturm_sequence,
    IntPoly, RatPoly,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Determinant of the Sylvester matrix by Gaussian elimination over ℚ.
fn sylvester_resultant(f: &RatPoly, g: &RatPoly) -> Rational {
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut a = vec![vec![Rational::zero(); size]; size];
    for row in 0..n {
        for i in 0..=m {
            a[row][row + i] = f.coeff(m - i);
        }
    }
    for row in 0..m {
        for i in 0..=n {
            a[n + row][row + i] = g.coeff(n - i);
        }
    }
    let mut det = Rational::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..size {
            let factor = &a[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..size {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..30, 1..=max_deg + 1).prop_filter("nonzero leading", |v| *v.last().unwrap() != 0)
}

#[test]
fn excluded_prime_resultants() {
    let cases = [
        (vec![-143, 30], vec![108, 0, 1], 117649i64),
        (vec![-7, 6], vec![16, 0, 1], 625),
        (vec![7, 6], vec![-27, 0, -18, 0, 1], -64343),
    ];
    for (f, g, want) in cases {
        let f = RatPoly::from_i64(&f);
        let g = RatPoly::from_i64(&g);
        assert_eq!(resultant(&f, &g), rat(want));
        assert_eq!(sylvester_resultant(&f, &g), rat(want));
    }
}

#[test]
fn discriminant_examples() {
    assert_eq!(discriminant(&RatPoly::from_i64(&[108, 0, 1])).unwrap(), rat(-432));
    assert_eq!(discriminant(&RatPoly::from_i64(&[1, 1, -6, -1, 1])).unwrap(), rat(19652));
    assert_eq!(discriminant(&RatPoly::from_i64(&[-1, 5, 5, 1])).unwrap(), rat(148));
}

#[test]
fn cubic_family_roots() {
    let f7 = RatPoly::from_i64(&[-1, 7, 7, 1]);
    let roots = isolate_real_roots(&f7).unwrap();
    assert_eq!(roots.len(), 3);
    assert_eq!(f7.sign_at(&rat(-6)), std::cmp::Ordering::Less);
    assert_eq!(f7.sign_at(&rat(-5)), std::cmp::Ordering::Greater);
    let f5 = RatPoly::from_i64(&[-1, 5, 5, 1]);
    assert_eq!(sturm_sequence(&f5).total_count(), 3);
}

proptest! {
    #[test]
    fn resultant_matches_sylvester(f in poly_strategy(5), g in poly_strategy(5)) {
        let f = RatPoly::from_i64(&f);
        let g = RatPoly::from_i64(&g);
        prop_assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g));
    }

    #[test]
    fn rational_resultant_matches_sylvester(f in poly_strategy(4), g in poly_strategy(4), d in 1i64..9) {
        let f = RatPoly::from_i64(&f).scale(&Rational::new(BigInt::one(), BigInt::from(d)));
        let g = RatPoly::new(g.iter().map(|&c| Rational::new(BigInt::from(c), BigInt::from(d + 1))).collect());
        prop_assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g));
    }

    #[test]
    fn factor_mod_reconstructs(f in poly_strategy(8), qi in 0usize..8) {
        let q = [2u64, 3, 5, 7, 13, 31, 101, 65537][qi];
        let f = IntPoly::from_i64(&f);
        let fq = f.reduce_mod(q);
        prop_assume!(fq.degree() == f.degree());
        let fac = factor_mod_q(&f, q).unwrap();
        prop_assert_eq!(fac.product(q), fq);
        prop_assert_eq!(fac.pattern().total_degree(), f.degree().unwrap());
        prop_assert_eq!(splits_linearly_mod(&f, q).unwrap(), fac.pattern().0.iter().all(|&(d, _)| d == 1));
        for (g, _) in &fac.factors {
            let single = factor_mod_q(&IntPoly::from_i64(&g.coeffs().iter().map(|&c| c as i64).collect::<Vec<_>>()), q).unwrap();
            prop_assert_eq!(single.factors.len(), 1);
        }
    }

    #[test]
    fn sturm_counts_distinct_linear_factors(roots in prop::collection::btree_set(-40i64..40, 1..7), extra in 0i64..20) {
        // product of (X - r) times an irreducible positive quadratic X^2 + extra + 1
        let mut f = RatPoly::from_i64(&[extra + 1, 0, 1]);
        for &r in &roots {
            f = &f * &RatPoly::from_i64(&[-r, 1]);
        }
        let s = sturm_sequence(&f);
        prop_assert_eq!(s.total_count(), roots.len());
        let iso = isolate_real_roots(&f).unwrap();
        prop_assert_eq!(iso.len(), roots.len());
        for (iv, &r) in iso.iter().zip(roots.iter()) {
            let x = rat(r);
            prop_assert!(iv.lo <= x && x <= iv.hi);
            if !iv.is_exact() {
                prop_assert!(f.sign_at(&iv.lo) != f.sign_at(&iv.hi));
            }
        }
    }

    #[test]
    fn cubic_discriminant_never_square(k in 2i64..5000) {
        let n = 2 * k + 1;
        let d = discriminant(&RatPoly::from_i64(&[-1, n, n, 1])).unwrap();
        let di: Integer = d.to_integer();
        prop_assert_eq!(di.clone(), BigInt::from(n).pow(4) - 18 * BigInt::from(n).pow(2) - 27);
        prop_assert!(!classforge::exactmath::is_perfect_square(&di));
    }
}
