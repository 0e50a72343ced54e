use classforge::embeddings::{
    cubic_regulator, ln_bounds, ordered_real_roots, pell_fundamental_unit, quartic_regulator, sextic_independence_scan,
    sextic_quantity, EmbeddingsError, RealInterval, ScanOptions, ScanStatus,
};
use classforge::exactmath::{Integer, Rational};
use classforge::family::identities::phi_poly;
use classforge::family::{defining_poly, FamilyId, FieldInstance};
use classforge::polynomial::{isolate_real_roots, sturm_sequence, RatPoly};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn int(v: i64) -> Integer {
    BigInt::from(v)
}

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(int(a), int(b))
}

/// Real roots by Durand–Kerner in complex f64, sorted ascending.
fn f64_real_roots(p: &RatPoly) -> Vec<f64> {
    let c: Vec<f64> = p.coeffs().iter().rev().map(|x| x.to_f64().unwrap()).collect();
    let c: Vec<f64> = c.iter().map(|x| x / c[0]).collect();
    let d = c.len() - 1;
    let mut z: Vec<(f64, f64)> = (0..d).map(|k| ((0.4 + 0.9 * k as f64).cos() * 1.3, (0.4 + 0.9 * k as f64).sin() * 1.3)).collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    for _ in 0..3000 {
        for i in 0..d {
            let mut v = (1.0, 0.0);
            for &ci in &c[1..] {
                v = mul(v, z[i]);
                v.0 += ci;
            }
            let mut den = (1.0, 0.0);
            for j in 0..d {
                if j != i {
                    den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let nn = den.0 * den.0 + den.1 * den.1;
            let step = ((v.0 * den.0 + v.1 * den.1) / nn, (v.1 * den.0 - v.0 * den.1) / nn);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
        }
    }
    let mut r: Vec<f64> = z.into_iter().map(|(re, im)| {
        assert!(im.abs() < 1e-6);
        re
    }).collect();
    r.sort_by(|a, b| a.partial_cmp(b).unwrap());
    r
}

fn nearest(roots: &[f64], x: f64) -> f64 {
    *roots.iter().min_by(|a, b| (*a - x).abs().partial_cmp(&(*b - x).abs()).unwrap()).unwrap()
}

/// f64 version of the sextic quantity with labels from σ(x) = (x−1)/(x+2).
fn sextic_quantity_f64(n: i64) -> f64 {
    let roots = f64_real_roots(&defining_poly(FamilyId::Sextic, &int(n)).unwrap());
    let r0 = *roots.iter().find(|&&x| x > 1.0).unwrap();
    let mut rho = vec![r0];
    for _ in 1..6 {
        let prev = *rho.last().unwrap();
        rho.push(nearest(&roots, (prev - 1.0) / (prev + 2.0)));
    }
    let l = |i: usize, j: usize| (rho[i] / rho[j]).abs().ln();
    l(1, 4) * l(3, 0) - l(2, 5).powi(2)
}

fn contains_f64(iv: &RealInterval, x: f64, tol: f64) -> bool {
    iv.lo().to_f64().unwrap() - tol <= x && x <= iv.hi().to_f64().unwrap() + tol
}

#[test]
fn pell_examples() {
    let u = pell_fundamental_unit(&int(5)).unwrap();
    assert!(u.half && u.x == int(1) && u.y == int(1));
    let u = pell_fundamental_unit(&int(20)).unwrap();
    assert!(!u.half && u.x == int(9) && u.y == int(2));
    assert_eq!(u.norm(), int(1));
    let u = pell_fundamental_unit(&int(2)).unwrap();
    assert!(u.x == int(1) && u.y == int(1) && u.norm() == int(-1));
    assert!(matches!(pell_fundamental_unit(&int(49)), Err(EmbeddingsError::PerfectSquare(_))));
}

#[test]
fn pell_units_for_family_discriminants() {
    for n in 1..60i64 {
        let admissible = [(FamilyId::Sextic, n * n + 108), (FamilyId::Quartic, n * n + 16)];
        for d in admissible.iter().filter(|(f, _)| f.is_admissible(&int(n))).map(|&(_, d)| d) {
            let u = pell_fundamental_unit(&int(d)).unwrap();
            assert!(u.is_unit(), "D={d}");
            let l = u.ln(40).unwrap();
            assert!(l.is_positive());
            let f = (u.x.to_f64().unwrap() + u.y.to_f64().unwrap() * (d as f64).sqrt()) / if u.half { 2.0 } else { 1.0 };
            assert!(contains_f64(&l, f.ln(), 1e-9 * f.ln()), "D={d}");
        }
    }
}

#[test]
fn root_examples() {
    // cubic n=7: f(−6) = −7 and f(−5) = 14
    let f7 = defining_poly(FamilyId::Cubic, &int(7)).unwrap();
    assert_eq!(f7.eval(&rat(-6, 1)), rat(-7, 1));
    assert_eq!(f7.eval(&rat(-5, 1)), rat(14, 1));
    let ord = ordered_real_roots(&FieldInstance::from_i64(FamilyId::Cubic, 7).unwrap()).unwrap();
    assert!(ord.root_in(0, &rat(-6, 1), &rat(-5, 1)));

    // quartic n=5: exactly two positive roots
    let f5 = defining_poly(FamilyId::Quartic, &int(5)).unwrap();
    let s = sturm_sequence(&f5);
    assert_eq!(s.count_in(&rat(0, 1), &rat(1000, 1)), 2);
    assert_eq!(s.total_count(), 4);

    // sextic n=80: ρ0/ρ3 ∈ (−77, −76), and it is a root of φ_80
    let ord = ordered_real_roots(&FieldInstance::from_i64(FamilyId::Sextic, 80).unwrap()).unwrap();
    let quot = ord.root(0, 60).checked_div(&ord.root(3, 60)).unwrap();
    assert!(quot.within(&rat(-77, 1), &rat(-76, 1)));
    assert!(ord.containments().iter().all(|c| c.holds == Some(true)), "{:?}", ord.containments());
    let phi = phi_poly(&int(80));
    assert!(phi.eval(quot.lo()).signum() != phi.eval(quot.hi()).signum() || phi.eval(quot.lo()).is_zero());
}

#[test]
fn sextic_labels_follow_sigma() {
    for n in [1i64, 2, 5, 10, 33, 75, 76, 120] {
        let ord = ordered_real_roots(&FieldInstance::from_i64(FamilyId::Sextic, n).unwrap()).unwrap();
        assert!(ord.root(0, 40).lo() > &rat(1, 1));
        // ρ_{i+1} = (ρ_i − 1)/(ρ_i + 2) numerically
        for i in 0..6 {
            let a = ord.root(i, 60).lo().to_f64().unwrap();
            let b = ord.root((i + 1) % 6, 60).lo().to_f64().unwrap();
            assert!(((a - 1.0) / (a + 2.0) - b).abs() < 1e-9 * (1.0 + b.abs()), "n={n} i={i}");
        }
        // quotients ρ_i/ρ_{i+3} come in reciprocal pairs of φ_n roots
        let phi = phi_poly(&int(n));
        let proots = isolate_real_roots(&phi).unwrap();
        assert_eq!(proots.len(), 6);
        for i in 0..3 {
            let qv = ord.root(i, 80).checked_div(&ord.root(i + 3, 80)).unwrap();
            let inv = qv.recip().unwrap();
            let hit = |iv: &RealInterval| proots.iter().filter(|p| iv.lo() <= &p.hi && &p.lo <= iv.hi()).count() >= 1;
            assert!(hit(&qv) && hit(&inv), "n={n} i={i}");
        }
    }
}

#[test]
fn sextic_scan_below_76() {
    let ns: Vec<Integer> = (1..76).map(int).collect();
    let report = sextic_independence_scan(&ns, ScanOptions::default());
    assert!(report.all_ok);
    assert_eq!(report.skipped(), 2);
    assert_eq!(report.certified(), 73);
    for e in &report.entries {
        let n: i64 = e.n.parse().unwrap();
        match &e.status {
            ScanStatus::Skipped { .. } => assert!(n == 6 || n == 26),
            ScanStatus::Certified { enclosure, .. } => {
                let want = sextic_quantity_f64(n);
                assert!(contains_f64(enclosure, want, 1e-7 * (1.0 + want.abs())), "n={n}: {enclosure} vs {want}");
            }
            ScanStatus::Failed { error } => panic!("n={n}: {error}"),
        }
    }
}

#[test]
fn sextic_scan_chain_above_76() {
    let ns: Vec<Integer> = [76i64, 80, 101, 150].iter().map(|&v| int(v)).collect();
    let report = sextic_independence_scan(&ns, ScanOptions::default());
    assert!(report.all_ok);
    for e in &report.entries {
        assert!(matches!(e.status, ScanStatus::Certified { negative: true, .. }));
        assert_eq!(e.chain.len(), 9);
    }
}

#[test]
fn cubic_regulator_small_n() {
    let r5 = cubic_regulator(&int(5), ScanOptions::default()).unwrap();
    assert!(r5.nonzero);
    assert!(r5.chain.is_empty());
    let rho1 = |label: &str| r5.containments.iter().find(|c| c.quantity == label).unwrap().holds;
    assert_eq!(rho1("ρ1 (4/n form)"), Some(true));
    assert_eq!(rho1("ρ1 (3/n form)"), Some(false));

    let r7 = cubic_regulator(&int(7), ScanOptions::default()).unwrap();
    assert!(r7.nonzero);
    assert!(r7.mu1.abs().hi() < &rat(1, 1));
    assert!(r7.mu0.abs().lo() > &rat(1, 1));
    assert!(r7.chain.iter().all(|c| c.holds == Some(true)));
    assert!(r7.containments.iter().all(|c| c.holds == Some(true)));

    // f64 oracle with ascending roots
    for n in [5i64, 7, 9, 21] {
        let roots = f64_real_roots(&defining_poly(FamilyId::Cubic, &int(n)).unwrap());
        let mu = |r: f64| (r + 1.0).powi(3) / (2.0 * r);
        let want = (mu(roots[0]).abs().ln() * roots[1].abs().ln() - roots[0].abs().ln() * mu(roots[1]).abs().ln()).abs();
        let got = cubic_regulator(&int(n), ScanOptions::default()).unwrap();
        assert!(contains_f64(&got.regulator, want, 1e-8 * want), "n={n}");
    }
}

#[test]
fn quartic_regulator_positive_ten_values() {
    for n in [1i64, 2, 4, 5, 7, 10, 13, 20, 41, 100] {
        let rep = quartic_regulator(&int(n), ScanOptions::default()).unwrap();
        assert!(rep.positive, "n={n}");
        assert!(rep.log_unit.is_positive());
        let roots = f64_real_roots(&defining_poly(FamilyId::Quartic, &int(n)).unwrap());
        let r0 = *roots.iter().find(|&&x| x > 1.0).unwrap();
        let r1 = nearest(&roots, (r0 - 1.0) / (r0 + 1.0));
        let eps = rep.log_unit.mid_f64();
        let want = 2.0 * eps * (r0.ln().powi(2) + r1.abs().ln().powi(2));
        assert!(contains_f64(&rep.regulator, want, 1e-8 * want), "n={n}");
    }
}

#[test]
fn doubling_precision_never_flips() {
    for n in [1i64, 3, 17, 50, 74] {
        let ord = ordered_real_roots(&FieldInstance::from_i64(FamilyId::Sextic, n).unwrap()).unwrap();
        let a = sextic_quantity(&ord, 40).unwrap();
        let b = sextic_quantity(&ord, 80).unwrap();
        assert!(!a.contains_zero() && !b.contains_zero());
        assert_eq!(a.sign(), b.sign());
        assert!(b.lo() <= a.hi() && a.lo() <= b.hi());
        assert!(b.width() <= a.width());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ln_bounds_enclose_f64(num in 1i64..1_000_000, den in 1i64..1_000_000) {
        let x = rat(num, den);
        let (lo, hi) = ln_bounds(&x, 50);
        let want = (num as f64 / den as f64).ln();
        prop_assert!(lo.to_f64().unwrap() <= want + 1e-12 && want - 1e-12 <= hi.to_f64().unwrap());
        prop_assert!((&hi - &lo).abs() < rat(1, 1 << 40));
    }

    #[test]
    fn pell_norm_exact(d in 2i64..3000) {
        let r = (d as f64).sqrt() as i64;
        prop_assume!(r * r != d && (r + 1) * (r + 1) != d);
        let u = pell_fundamental_unit(&int(d)).unwrap();
        prop_assert!(u.is_unit());
        prop_assert!(u.ln(30).unwrap().is_positive());
    }
}
