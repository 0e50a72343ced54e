use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::interval::RealInterval;
use super::EmbeddingsError;
use crate::exactmath::{Integer, Rational};
use crate::family::{identities::phi_poly, FamilyId, FieldInstance, MobiusMap};
use crate::polynomial::{isolate_real_roots, sturm_sequence, IntPoly, IsolatingInterval, SturmSequence};

/// Outcome of testing a labeled quantity against a published open interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Containment {
    pub quantity: String,
    pub lo: String,
    pub hi: String,
    /// `None` when the enclosure still straddles an endpoint at the precision cap.
    pub holds: Option<bool>,
}

/// Real roots of `f_n` in label order: `roots[i]` encloses `ρ_i`.
#[derive(Debug, Clone)]
pub struct RootOrdering {
    family: FamilyId,
    n: Integer,
    f: IntPoly,
    roots: Vec<IsolatingInterval>,
    containments: Vec<Containment>,
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn qi(a: &Integer) -> Rational {
    Rational::from_integer(a.clone())
}

const CONTAINMENT_BITS: u32 = 256;

impl RootOrdering {
    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn n(&self) -> &Integer {
        &self.n
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Published interval checks made while labeling.
    pub fn containments(&self) -> &[Containment] {
        &self.containments
    }

    pub fn isolating(&self, i: usize) -> &IsolatingInterval {
        &self.roots[i]
    }

    /// Enclosure of `ρ_i` of width at most `2^-bits`.
    pub fn root(&self, i: usize, bits: u32) -> RealInterval {
        let mut iv = self.roots[i].clone();
        iv.refine_bits(&self.f, bits);
        RealInterval::new(iv.lo, iv.hi)
    }

    /// Refines every stored interval in place.
    pub fn refine(&mut self, bits: u32) {
        for r in &mut self.roots {
            r.refine_bits(&self.f, bits);
        }
    }

    /// Exact test of `ρ_i ∈ (a, b)` via a Sturm count.
    pub fn root_in(&self, i: usize, a: &Rational, b: &Rational) -> bool {
        root_in_open(&self.f, &sturm_sequence(&self.f.to_rat()), &self.roots[i], a, b)
    }

    /// Tests `ρ_i/ρ_j ∈ (a, b)` by refining until the quotient enclosure decides it.
    fn quotient_in(&self, i: usize, j: usize, a: &Rational, b: &Rational) -> Option<bool> {
        let mut bits = 16;
        while bits <= CONTAINMENT_BITS {
            if let Some(qv) = self.root(i, bits).checked_div(&self.root(j, bits)) {
                if qv.within(a, b) {
                    return Some(true);
                }
                if qv.hi() <= a || qv.lo() >= b {
                    return Some(false);
                }
            }
            bits *= 2;
        }
        None
    }
}

fn root_in_open(f: &IntPoly, sturm: &SturmSequence, iv: &IsolatingInterval, a: &Rational, b: &Rational) -> bool {
    if iv.is_exact() {
        return a < &iv.lo && &iv.lo < b;
    }
    let x = if &iv.lo > a { iv.lo.clone() } else { a.clone() };
    let y = if &iv.hi < b { iv.hi.clone() } else { b.clone() };
    if x >= y {
        return false;
    }
    let at_y = usize::from(f.sign_at(&y) == Ordering::Equal && &y == b);
    sturm.count_in(&x, &y) - at_y == 1
}

/// Image of a closed interval under a Möbius map whose pole lies outside it.
fn mobius_image(m: &MobiusMap, lo: &Rational, hi: &Rational) -> Option<(Rational, Rational)> {
    let a = m.apply_rational(lo)?;
    let b = m.apply_rational(hi)?;
    if !m.c.is_zero() {
        let pole = Rational::new(-m.d.clone(), m.c.clone());
        if lo <= &pole && &pole <= hi {
            return None;
        }
    }
    Some(if a <= b { (a, b) } else { (b, a) })
}

fn overlaps(lo: &Rational, hi: &Rational, iv: &IsolatingInterval) -> bool {
    lo <= &iv.hi && &iv.lo <= hi
}

/// Galois families: `ρ₀` is the unique root above 1, and `ρ_i = σ^i(ρ₀)` is matched
/// to the isolating interval its Möbius image meets.
fn label_galois(
    inst: &FieldInstance,
    f: &IntPoly,
    sturm: &SturmSequence,
    mut isolated: Vec<IsolatingInterval>,
) -> Result<Vec<IsolatingInterval>, EmbeddingsError> {
    let family = inst.family();
    let unavailable = |reason: String| EmbeddingsError::LabelUnavailable { family, n: inst.n().clone(), reason };
    let one = Rational::one();
    if f.sign_at(&one) == Ordering::Equal {
        return Err(unavailable("1 is a root".into()));
    }
    let above: Vec<usize> = (0..isolated.len())
        .filter(|&k| root_in_open(f, sturm, &isolated[k], &one, &(&isolated[k].hi + &one)))
        .collect();
    if above.len() != 1 {
        return Err(unavailable(format!("{} roots exceed 1", above.len())));
    }
    let k0 = above[0];
    if isolated[k0].lo < one {
        isolated[k0].lo = one.clone();
    }
    let deg = inst.degree();
    let sigma = family.sigma()?;
    let mut order = vec![k0];
    for i in 1..deg {
        let m = sigma.pow(i as u32);
        let mut bits = 8;
        let k = loop {
            for iv in &mut isolated {
                iv.refine_bits(f, bits);
            }
            if let Some((lo, hi)) = mobius_image(&m, &isolated[k0].lo, &isolated[k0].hi) {
                let hits: Vec<usize> = (0..isolated.len()).filter(|&j| overlaps(&lo, &hi, &isolated[j])).collect();
                if hits.len() == 1 {
                    break hits[0];
                }
            }
            if bits >= CONTAINMENT_BITS {
                return Err(unavailable(format!("σ^{i}(ρ₀) not separated at {bits} bits")));
            }
            bits *= 2;
        };
        order.push(k);
    }
    let mut seen = order.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != deg {
        return Err(unavailable("σ does not permute the real roots".into()));
    }
    Ok(order.into_iter().map(|k| isolated[k].clone()).collect())
}

/// Isolates the real roots of `f_n` and attaches conjugate labels.
///
/// Sextic and quartic: `ρ₀` is the root above 1 and `ρ_i = σ^i(ρ₀)`; for the
/// sextic at `n ≥ 76` the quotient intervals for `φ_n` are checked as well.
/// Cubic: roots in ascending order, with the published intervals recorded.
pub fn ordered_real_roots(inst: &FieldInstance) -> Result<RootOrdering, EmbeddingsError> {
    let family = inst.family();
    let n = inst.n().clone();
    let f = inst.f().primitive_integer();
    let fr = f.to_rat();
    let sturm = sturm_sequence(&fr);
    let isolated = isolate_real_roots(&fr)?;
    if isolated.len() != inst.degree() {
        return Err(EmbeddingsError::LabelUnavailable {
            family,
            n,
            reason: format!("{} real roots, expected {}", isolated.len(), inst.degree()),
        });
    }
    let roots = match family {
        FamilyId::Sextic | FamilyId::Quartic => label_galois(inst, &f, &sturm, isolated)?,
        FamilyId::Cubic => isolated,
    };
    let mut ord = RootOrdering { family, n: n.clone(), f, roots, containments: Vec::new() };
    let record = |quantity: &str, lo: &Rational, hi: &Rational, holds: Option<bool>| Containment {
        quantity: quantity.into(),
        lo: lo.to_string(),
        hi: hi.to_string(),
        holds,
    };
    match family {
        FamilyId::Sextic if n >= BigInt::from(76) => {
            let checks = [
                (0, 3, "ρ0/ρ3", qi(&(int(3) - &n)), qi(&(int(4) - &n))),
                (1, 4, "ρ1/ρ4", q(-1, 1), q(-9, 10)),
                (2, 5, "ρ2/ρ5", Rational::new(BigInt::one(), &n + 5), Rational::new(BigInt::one(), &n + 4)),
            ];
            for (i, j, name, lo, hi) in checks {
                let holds = ord.quotient_in(i, j, &lo, &hi);
                ord.containments.push(record(name, &lo, &hi, holds));
            }
            // each quotient is a root of φ_n in its interval
            let phi = phi_poly(&n);
            let phi_int = phi.primitive_integer();
            let phi_sturm = sturm_sequence(&phi);
            for c in ord.containments.clone() {
                let lo: Rational = c.lo.parse().expect("rational");
                let hi: Rational = c.hi.parse().expect("rational");
                let one_root = phi_sturm.count_in(&lo, &hi) == 1 && phi_int.sign_at(&hi) != Ordering::Equal;
                ord.containments.push(record(&format!("φ_n root count in interval of {}", c.quantity), &lo, &hi, Some(one_root)));
            }
        }
        FamilyId::Cubic => {
            let nr = qi(&n);
            let one = Rational::one();
            let checks = [
                (0, "ρ0", &one - &nr, q(2, 1) - &nr),
                (1, "ρ1 (4/n form)", -&one - q(4, 1) / &nr, -&one - &one / &nr),
                (1, "ρ1 (3/n form)", -&one - q(3, 1) / &nr, -&one - &one / &nr),
                (2, "ρ2", &one / (&nr + &one), &one / &nr),
            ];
            for (i, name, lo, hi) in checks {
                let holds = ord.root_in(i, &lo, &hi);
                ord.containments.push(record(name, &lo, &hi, Some(holds)));
            }
        }
        _ => {}
    }
    Ok(ord)
}

fn int(v: i64) -> Integer {
    BigInt::from(v)
}
