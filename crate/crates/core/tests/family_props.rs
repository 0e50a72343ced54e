use classforge::exactmath::{Integer, Rational};
use classforge::family::identities::{self, run_suite};
use classforge::family::{
    defining_poly, g_identities, mu_norm_form, mu_unit, pnr_coefficients, pnr_poly, script_p, sextic_h,
    target_element, FamilyId, FieldElement, FieldInstance,
};
use classforge::polynomial::{discriminant, IntPoly, RatPoly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn int(v: i64) -> Integer {
    BigInt::from(v)
}

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(int(a), int(b))
}

/// Real roots of a polynomial by Durand–Kerner in complex f64; only used as
/// a numeric cross-check.
fn complex_roots(coeffs_desc: &[f64]) -> Vec<(f64, f64)> {
    let d = coeffs_desc.len() - 1;
    let lc = coeffs_desc[0];
    let c: Vec<f64> = coeffs_desc.iter().map(|x| x / lc).collect();
    let mut z: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let a = 0.4 + 0.9 * k as f64;
            (a.cos() * 1.3, a.sin() * 1.3)
        })
        .collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    for _ in 0..2000 {
        for i in 0..d {
            let mut p = (1.0, 0.0);
            for &ci in &c[1..] {
                p = mul(p, z[i]);
                p.0 += ci;
            }
            let mut q = (1.0, 0.0);
            for j in 0..d {
                if j != i {
                    q = mul(q, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let delta = div(p, q);
            z[i] = (z[i].0 - delta.0, z[i].1 - delta.1);
        }
    }
    z
}

fn f64_coeffs_desc(p: &RatPoly) -> Vec<f64> {
    p.coeffs().iter().rev().map(|c| c.to_f64().unwrap()).collect()
}

fn eval_f64(coeffs_desc: &[f64], x: f64) -> f64 {
    coeffs_desc.iter().fold(0.0, |acc, c| acc * x + c)
}

/// For each real root ρ of f_n, the conjugates are given by the Möbius table;
/// the target must be a root of p_{n,1}.
fn numeric_target_is_root(family: FamilyId, n: i64) -> bool {
    let f = defining_poly(family, &int(n)).unwrap();
    let roots = complex_roots(&f64_coeffs_desc(&f));
    let p = pnr_poly(family, &int(n), 1).unwrap().to_rat();
    let pc = f64_coeffs_desc(&p);
    let scale: f64 = pc.iter().map(|c| c.abs()).fold(0.0, f64::max);
    roots.iter().all(|&(re, im)| {
        assert!(im.abs() < 1e-6, "totally real");
        let r = re;
        let t = match family {
            FamilyId::Sextic => {
                let r1 = (r - 1.0) / (r + 2.0);
                let r2 = -1.0 / (r + 1.0);
                let r4 = -(r + 1.0) / r;
                let r5 = -(2.0 * r + 1.0) / (r - 1.0);
                let w = (3.0 + r1) * (3.0 + r2) / ((3.0 + r4) * (3.0 + r5));
                w * r4 / r1
            }
            FamilyId::Quartic => {
                let r1 = (r - 1.0) / (r + 1.0);
                let r3 = -(r + 1.0) / (r - 1.0);
                (2.0 + r1) / (2.0 + r3) / r1
            }
            FamilyId::Cubic => unreachable!(),
        };
        let mag = pc.iter().enumerate().map(|(i, c)| c.abs() * t.abs().powi((pc.len() - 1 - i) as i32)).sum::<f64>();
        eval_f64(&pc, t).abs() <= 1e-7 * mag.max(scale)
    })
}

#[test]
fn sextic_defining_poly_literal() {
    // substituting n = 2 by hand into the displayed coefficients
    assert_eq!(
        defining_poly(FamilyId::Sextic, &int(2)).unwrap(),
        RatPoly::from_i64(&[1, 4, -5, -20, -10, 2, 1])
    );
}

#[test]
fn h_matches_published_coefficients() {
    let published = RatPoly::new(vec![
        rat(1, 1),
        rat(-6, 1),
        rat(-385417749, 25),
        rat(-770836748, 25),
        rat(-385417749, 25),
        rat(-6, 1),
        rat(1, 1),
    ]);
    assert_eq!(sextic_h(), published);
    assert!(identities::h_eisenstein_at_13());
    // 25·h(X+1) in descending order
    let (_, hi) = sextic_h().clear_denominators();
    let shifted = hi.taylor_shift(&int(1));
    let desc: Vec<i64> = shifted.coeffs().iter().rev().map(|c| c.to_i64().unwrap()).collect();
    assert_eq!(desc, vec![25, 0, -385418124, -2312508744, -5010435612, -4625017488, -1541672496]);
}

#[test]
fn target_min_poly_numeric_cross_check() {
    for n in [2, 14, -10, 1] {
        assert!(numeric_target_is_root(FamilyId::Sextic, n), "sextic n={n}");
    }
    for n in [1, 5, -7, 11] {
        assert!(numeric_target_is_root(FamilyId::Quartic, n), "quartic n={n}");
    }
}

#[test]
fn quartic_pnr_sign_convention() {
    // 23X⁴ − 131X³ − 138X² + 131X + 23 annihilates w/ρ₁ at n = 5; the
    // version with odd-degree signs flipped annihilates ρ₁/w instead
    let p = pnr_poly(FamilyId::Quartic, &int(5), 1).unwrap();
    assert_eq!(p, IntPoly::from_i64(&[23, 131, -138, -131, 23]));
    let k = FieldInstance::from_i64(FamilyId::Quartic, 5).unwrap();
    let t = target_element(&k).unwrap();
    let flipped = RatPoly::from_i64(&[23, -131, -138, 131, 23]);
    assert!(!t.substitute_into(&flipped).is_zero());
    assert!(t.inv().unwrap().substitute_into(&flipped).is_zero());
}

#[test]
fn target_degrees() {
    let k = FieldInstance::from_i64(FamilyId::Sextic, 2).unwrap();
    assert_eq!(target_element(&k).unwrap().minimal_polynomial().degree(), Some(6));
    let k = FieldInstance::from_i64(FamilyId::Quartic, 5).unwrap();
    assert_eq!(target_element(&k).unwrap().minimal_polynomial().degree(), Some(4));
}

#[test]
fn conjugate_examples() {
    let k = FieldInstance::from_i64(FamilyId::Sextic, 2).unwrap();
    let rho = k.rho();
    let one = k.constant(1);
    let two = k.constant(2);
    let rho3 = -&(&(&rho + &two) / &(&(&rho * &two) + &one));
    assert_eq!(k.rho_i(3).unwrap(), rho3);
    assert_eq!(k.rho_i(0).unwrap(), rho);
    let k = FieldInstance::from_i64(FamilyId::Quartic, 5).unwrap();
    assert_eq!(k.rho_i(2).unwrap(), -&k.rho().inv().unwrap());
}

#[test]
fn script_p_expansions() {
    assert_eq!(script_p(FamilyId::Sextic, 5).unwrap(), {
        let mut c = vec![0i64; 11];
        c[0] = 117649;
        c[5] = 286;
        c[10] = 1;
        IntPoly::from_i64(&c)
    });
    assert_eq!(script_p(FamilyId::Quartic, 1).unwrap(), IntPoly::from_i64(&[625, 14, 1]));
    assert_eq!(int(7).pow(6), int(117649));
}

#[test]
fn g_identity_constants() {
    let rep = g_identities(FamilyId::Sextic, 5, &int(1), &int(0), &int(13), &int(1)).unwrap();
    assert_eq!(rep.collapse_constant, Some(Rational::from_integer(-int(13841287201))));
    assert!(rep.all_hold());
    let rep = g_identities(FamilyId::Quartic, 5, &int(1), &int(0), &int(13), &int(1)).unwrap();
    assert_eq!(rep.collapse_constant, Some(Rational::from_integer(int(625))));
    assert!(rep.all_hold());
    assert!(g_identities(FamilyId::Quartic, 5, &int(5), &int(0), &int(13), &int(1)).is_err());
    assert!(g_identities(FamilyId::Sextic, 7, &int(1), &int(0), &int(13), &int(1)).is_err());
}

#[test]
fn specializations_for_ten_pairs() {
    for family in [FamilyId::Sextic, FamilyId::Quartic] {
        let mut count = 0;
        for r in [1u64, 5, 7, 11, 13] {
            let c_r = identities::demo_cr(family, r);
            for m in [-1i64, 3] {
                let rep = g_identities(family, r, &c_r, &int(2), &int(13), &int(m)).unwrap();
                assert!(rep.all_hold(), "{family} r={r} m={m}");
                let (lead, lin) = match family {
                    FamilyId::Sextic => (int(8 * 169), -143),
                    _ => (int(169), -1),
                };
                let base: Integer = &c_r * (int(30) * (int(2) + lead * int(m)) + int(lin));
                assert_eq!(base.pow(r as u32), family.linear_form(&rep.n_m));
                count += 1;
            }
        }
        assert_eq!(count, 10);
    }
}

#[test]
fn cubic_mu_and_identities() {
    for n in [5i64, 7, 9, 21, 101] {
        let k = FieldInstance::from_i64(FamilyId::Cubic, n).unwrap();
        assert!(mu_unit(&k).is_ok());
        assert!(identities::cubic_combination_holds(&k));
    }
    let k = FieldInstance::from_i64(FamilyId::Cubic, 5).unwrap();
    let mu = mu_unit(&k).unwrap();
    assert_eq!(mu, (&k.rho() + &k.constant(2)).pow(2));
}

#[test]
fn k103_relation() {
    assert!(identities::k103_unit_relation());
    let [u1, ..] = identities::k103_units();
    let text = u1.to_string();
    assert!(text.contains("1/125"));
}

#[test]
fn identity_suite_is_green() {
    let results = run_suite(None);
    let failed: Vec<_> = results.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(results.iter().any(|c| c.detail.contains("resultant = -64343 = -37^2·47")));
}

fn sextic_n() -> impl Strategy<Value = i64> {
    (-400i64..400).prop_filter("admissible", |n| ![0, 6, -6, 26, -26].contains(n))
}

fn quartic_n() -> impl Strategy<Value = i64> {
    (-400i64..400).prop_filter("admissible", |n| ![0, 3, -3].contains(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn discriminant_closed_forms(ns in sextic_n(), nq in quartic_n(), k in 2i64..300) {
        for (family, n) in [(FamilyId::Sextic, ns), (FamilyId::Quartic, nq), (FamilyId::Cubic, 2 * k + 1)] {
            let f = defining_poly(family, &int(n)).unwrap();
            prop_assert_eq!(discriminant(&f).unwrap(), family.discriminant_closed_form(&int(n)));
        }
    }

    #[test]
    fn sigma_permutes_roots_and_tables(ns in sextic_n(), nq in quartic_n()) {
        for (family, n) in [(FamilyId::Sextic, ns), (FamilyId::Quartic, nq)] {
            let k = FieldInstance::from_i64(family, n).unwrap();
            prop_assert!(identities::sigma_permutes_roots(&k));
            prop_assert!(identities::conjugate_table_holds(&k));
            prop_assert!(identities::norm_product_holds(&k));
        }
    }

    #[test]
    fn w_has_trivial_relative_norms(ns in sextic_n()) {
        let k = FieldInstance::from_i64(FamilyId::Sextic, ns).unwrap();
        prop_assert!(classforge::family::w_element(&k).is_ok());
        prop_assert!(identities::phi_identity(&int(ns)));
    }

    #[test]
    fn sextic_integrality_iff_2_mod_4(ns in sextic_n()) {
        let f = defining_poly(FamilyId::Sextic, &int(ns)).unwrap();
        prop_assert_eq!(f.is_integral(), ns.rem_euclid(4) == 2);
    }

    #[test]
    fn norm_form_matches_resultant(a in -20i64..20, b in -20i64..20, c in -20i64..20, k in 2i64..200) {
        let n = 2 * k + 1;
        let kf = FieldInstance::from_i64(FamilyId::Cubic, n).unwrap();
        let e: FieldElement = kf.element(&RatPoly::from_i64(&[a, b, c]));
        let by_form = mu_norm_form(&int(a), &int(b), &int(c), &int(n));
        prop_assert_eq!(Rational::from_integer(by_form), e.norm());
    }
}

#[test]
fn sextic_a2_forms_for_fifty_n() {
    for n in -25i64..25 {
        // pnr_coefficients fails if the two published forms disagree
        let a = pnr_coefficients(FamilyId::Sextic, &int(n)).unwrap();
        let v = int(30 * n - 143);
        assert_eq!(a[0], &v * &v);
    }
}

#[test]
fn cubic_reflection_and_nonsquare_disc() {
    for k in 2i64..2000 {
        let n = int(2 * k + 1);
        assert!(identities::cubic_reflection_holds(&n));
        assert!(!classforge::exactmath::is_perfect_square(&FamilyId::Cubic.critical_factor(&n)));
    }
}
