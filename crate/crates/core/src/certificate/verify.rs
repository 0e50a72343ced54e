use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::model::{required_roles, role_conditions, ClassOrderCertificate, CERTIFICATE_VERSION};
use super::Verdict;
use crate::exactmath::{is_prime, power_residue_symbol, Integer, Symbol};
use crate::family::{defining_poly, special_value, w_element, FamilyId, FieldInstance};
use crate::polynomial::{discriminant, IntPoly};
use crate::search::prime_divisors;

fn int(v: i64) -> Integer {
    BigInt::from(v)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Verdict::Invalid(format!($($msg)*));
        }
    };
}

macro_rules! check {
    ($v:expr) => {
        if let Verdict::Invalid(reason) = $v {
            return Verdict::Invalid(reason);
        }
    };
}

/// `σ^i(root)` reduced mod ℓ, then the target element `w·ρ₄/ρ₁` (sextic) or
/// `w/ρ₁` (quartic) evaluated there.
///
/// `None` when a denominator or the value itself vanishes modulo ℓ, or for the
/// cubic family.
pub fn target_image_mod(family: FamilyId, root: &Integer, ell: &Integer) -> Option<Integer> {
    let sigma = family.sigma().ok()?;
    let x = root.mod_floor(ell);
    let rho: Vec<Integer> = (0..family.degree() as u32)
        .map(|i| sigma.pow(i).apply_mod(&x, ell))
        .collect::<Option<_>>()?;
    let (num, den): (Integer, Integer) = match family {
        FamilyId::Sextic => {
            let s = |i: usize| &rho[i] + 3;
            (s(1) * s(2) * &rho[4], s(4) * s(5) * &rho[1])
        }
        FamilyId::Quartic => (&rho[1] + 2, (&rho[3] + 2) * &rho[1]),
        FamilyId::Cubic => return None,
    };
    let den = den.mod_floor(ell);
    let inv = crate::exactmath::inv_mod(&den, ell).ok()?;
    let v = (num * inv.value()).mod_floor(ell);
    (!v.is_zero()).then_some(v)
}

/// Primes a Bauer witness may never be.
fn forbidden_witness_primes(family: FamilyId) -> &'static [i64] {
    match family {
        FamilyId::Sextic => &[2, 3, 5, 7],
        FamilyId::Quartic => &[2, 3, 5],
        FamilyId::Cubic => &[2, 3, 37, 47],
    }
}

/// Everything recomputed once from `(family, n)`.
struct Context {
    f: IntPoly,
    disc_num: Integer,
}

fn context(cert: &ClassOrderCertificate) -> Result<Context, Verdict> {
    let fam = cert.family;
    if !fam.is_admissible(&cert.n) {
        return Err(Verdict::Invalid(format!("n = {} is not admissible for the {fam} family", cert.n)));
    }
    let fr = defining_poly(fam, &cert.n).map_err(|e| Verdict::Invalid(e.to_string()))?;
    let f = fr
        .to_int()
        .ok_or_else(|| Verdict::Invalid(format!("f_n is not integral at n = {}", cert.n)))?;
    let disc = discriminant(&fr).map_err(|e| Verdict::Invalid(e.to_string()))?;
    Ok(Context { f, disc_num: disc.numer().abs() })
}

fn divides(d: &Integer, v: &Integer) -> bool {
    !d.is_zero() && (v % d).is_zero()
}

fn parity_and_identity(cert: &ClassOrderCertificate) -> Verdict {
    let fam = cert.family;
    let n = &cert.n;
    match fam {
        FamilyId::Sextic => ensure!(n.mod_floor(&int(4)) == int(2), "sextic n = {n} is not 2 (mod 4)"),
        FamilyId::Cubic => ensure!(n.is_odd() && *n >= int(5), "cubic n = {n} is not odd and at least 5"),
        FamilyId::Quartic => {}
    }
    let sv = match special_value(fam, n) {
        Ok(v) => v,
        Err(e) => return Verdict::Invalid(e.to_string()),
    };
    for ex in fam.excluded_primes() {
        ensure!(!divides(&ex, &sv), "excluded prime {ex} divides special value");
    }
    ensure!(!cert.y.is_zero(), "y is zero");
    let ybits = cert.y.bits();
    ensure!(
        ybits < 2 || (ybits - 1).saturating_mul(cert.r) <= sv.bits(),
        "y^r exceeds the special value {sv}"
    );
    let yr = num_traits::pow(cert.y.clone(), cert.r as usize);
    ensure!(yr == sv, "y^r differs from the special value {sv}");
    Verdict::Valid
}

fn ideal_power_in(cert: &ClassOrderCertificate, ctx: &Context) -> Verdict {
    check!(parity_and_identity(cert));
    let fam = cert.family;
    let r = cert.r;
    let mut product = Integer::one();
    let mut prev: Option<&Integer> = None;
    for fac in &cert.ideal_factors {
        let ell = &fac.ell;
        ensure!(prev.map_or(true, |p| p < ell), "ideal factors are not strictly increasing at {ell}");
        prev = Some(ell);
        ensure!(*ell > int(1) && is_prime(ell), "ideal factor {ell} is not prime");
        ensure!(
            !fam.excluded_primes().contains(ell),
            "ideal factor {ell} is an excluded prime"
        );
        ensure!(
            fac.exponent > 0 && fac.exponent % r == 0,
            "exponent {} at {ell} is not a positive multiple of r = {r}",
            fac.exponent
        );
        let nu = fac.exponent / r;
        product *= num_traits::pow(ell.clone(), nu as usize);
        ensure!(
            (&fac.root - fam.eval_point()).mod_floor(ell).is_zero(),
            "root at {ell} is not the evaluation point {}",
            fam.eval_point()
        );
        ensure!(ctx.f.eval_mod(&fac.root, ell).is_zero(), "f_n(root) is not 0 modulo {ell}");
        ensure!(!divides(ell, &ctx.disc_num), "ideal factor {ell} divides the discriminant");
    }
    ensure!(product == cert.y.abs(), "ideal factors multiply to {product}, not |y| = {}", cert.y.abs());
    Verdict::Valid
}

/// `y^r = f_n(point)`, the excluded primes stay away, and the listed prime
/// ideals account for all of `|y|` with exponents `r·ν_ℓ(y)`.
pub fn verify_ideal_power(cert: &ClassOrderCertificate) -> Verdict {
    match context(cert) {
        Ok(ctx) => ideal_power_in(cert, &ctx),
        Err(v) => v,
    }
}

/// For each `p | r`, one witness per role whose recomputed residue symbols
/// equal both the recorded transcript and the role's required pattern.
pub fn verify_residue_conditions(cert: &ClassOrderCertificate) -> Verdict {
    let fam = cert.family;
    let ps = prime_divisors(cert.r);
    let mut forbidden: Vec<Integer> = forbidden_witness_primes(fam).iter().map(|&v| int(v)).collect();
    if let Some(rq) = &cert.ramified_q {
        forbidden.push(rq.q.clone());
    }
    for rw in &cert.bauer_witnesses {
        ensure!(ps.contains(&rw.witness.p), "unexpected witness for p = {} ∤ r", rw.witness.p);
        ensure!(required_roles(fam).contains(&rw.role), "role {} does not exist for the {fam} family", rw.role);
    }
    if let Some(c) = &cert.c_r {
        ensure!(divides(c, &cert.y), "c_r does not divide y");
    }
    for &p in &ps {
        let pi = int(p as i64);
        for &role in required_roles(fam) {
            let found: Vec<_> = cert
                .bauer_witnesses
                .iter()
                .filter(|w| w.role == role && w.witness.p == p)
                .collect();
            ensure!(!found.is_empty(), "missing witness for p = {p}, role {role}");
            ensure!(found.len() == 1, "duplicate witness for p = {p}, role {role}");
            let w = &found[0].witness;
            let ell = &w.ell;
            ensure!(*ell > int(1) && is_prime(ell), "witness {ell} is not prime");
            ensure!(((ell - 1u32) % &pi).is_zero(), "witness {ell} is not 1 (mod {p})");
            ensure!(!forbidden.contains(ell), "witness {ell} is a forbidden prime");
            ensure!(divides(ell, &cert.y), "witness {ell} does not divide y");
            let conds = role_conditions(fam, role).expect("role checked above");
            ensure!(
                w.transcript.len() == conds.len(),
                "transcript of {ell} has {} entries, expected {}",
                w.transcript.len(),
                conds.len()
            );
            for (&(base, recorded), cond) in w.transcript.iter().zip(&conds) {
                ensure!(base == cond.base, "transcript of {ell} lists base {base}, expected {}", cond.base);
                let actual = match power_residue_symbol(&int(base as i64), ell, &pi) {
                    Ok(s) => s,
                    Err(e) => return Verdict::Invalid(format!("symbol ({base}|{ell})_{p}: {e}")),
                };
                ensure!(actual == recorded, "transcript mismatch: ({base}|{ell})_{p} is {actual}, recorded {recorded}");
                ensure!(
                    actual == cond.requirement,
                    "({base}|{ell})_{p} is {actual}, role {role} needs {}",
                    cond.requirement
                );
            }
        }
    }
    Verdict::Valid
}

fn nonpower_in(cert: &ClassOrderCertificate, ctx: &Context) -> Verdict {
    let fam = cert.family;
    let ps = prime_divisors(cert.r);
    if !fam.is_galois() {
        ensure!(cert.nonpower_evidence.is_empty(), "nonpower evidence given for the {fam} family");
        return Verdict::Valid;
    }
    for ev in &cert.nonpower_evidence {
        let ell = &ev.ell;
        let p = ev.p;
        ensure!(ps.contains(&p), "evidence for p = {p} ∤ r");
        ensure!(*ell > int(1) && is_prime(ell), "evidence prime {ell} is not prime");
        ensure!(!divides(ell, &ctx.disc_num), "ramified evidence prime {ell}");
        ensure!(((ell - 1u32) % p).is_zero(), "evidence prime {ell} is not 1 (mod {p})");
        ensure!(ctx.f.eval_mod(&ev.root, ell).is_zero(), "f_n(root) is not 0 modulo evidence prime {ell}");
        let value = match target_image_mod(fam, &ev.root, ell) {
            Some(v) => v,
            None => return Verdict::Invalid(format!("denominator vanishes at evidence prime {ell}")),
        };
        ensure!(value == ev.value.mod_floor(ell), "target image modulo {ell} is {value}, recorded {}", ev.value);
        let sym = match power_residue_symbol(&value, ell, &int(p as i64)) {
            Ok(s) => s,
            Err(e) => return Verdict::Invalid(e.to_string()),
        };
        ensure!(sym == ev.symbol, "evidence symbol at {ell} is {sym}, recorded {}", ev.symbol);
        ensure!(sym == Symbol::NonResidue, "target is a {p}-th power residue modulo {ell}");
    }
    for &p in &ps {
        ensure!(
            cert.nonpower_evidence.iter().any(|e| e.p == p),
            "missing nonpower evidence for p = {p}"
        );
    }
    Verdict::Valid
}

/// For each `p | r`, a degree-1 prime at which the target element is not a
/// p-th power residue. Vacuous for `r = 1`; the cubic family carries none.
pub fn verify_nonpower(cert: &ClassOrderCertificate) -> Verdict {
    match context(cert) {
        Ok(ctx) => nonpower_in(cert, &ctx),
        Err(v) => v,
    }
}

/// `q` is prime, prime to `210r` (sextic) or `30r` (quartic), divides
/// `n² + D₀` exactly once, and `n ≡ n₀ (mod q²)`.
pub fn verify_ramification(cert: &ClassOrderCertificate) -> Verdict {
    let Some(rq) = &cert.ramified_q else {
        return Verdict::Valid;
    };
    let fam = cert.family;
    ensure!(fam.is_galois(), "ramified data given for the {fam} family");
    let q = &rq.q;
    ensure!(*q > int(1) && is_prime(q), "q = {q} is not prime");
    let guard: i64 = if fam == FamilyId::Sextic { 210 } else { 30 };
    ensure!(
        !divides(q, &int(guard)) && !divides(q, &int(cert.r as i64)),
        "q = {q} divides {guard}·r"
    );
    let d = fam.critical_factor(&cert.n);
    ensure!(divides(q, &d), "q = {q} does not divide {d}");
    ensure!(!divides(&(q * q), &d), "q² divides n² + D₀ for q = {q}");
    ensure!((&cert.n - &rq.n0).mod_floor(&(q * q)).is_zero(), "n is not n₀ (mod q²)");
    Verdict::Valid
}

/// Relative norms of `w` to the quadratic (and cubic) subfields are exactly 1.
pub fn verify_relative_norms(cert: &ClassOrderCertificate) -> Verdict {
    if !cert.family.is_galois() {
        return Verdict::Valid;
    }
    let inst = match FieldInstance::new(cert.family, &cert.n) {
        Ok(i) => i,
        Err(e) => return Verdict::Invalid(e.to_string()),
    };
    match w_element(&inst) {
        Ok(_) => Verdict::Valid,
        Err(e) => Verdict::Invalid(format!("relative norm of w: {e}")),
    }
}

/// All checks, in order; the first failure is reported.
pub fn verify_certificate(cert: &ClassOrderCertificate) -> Verdict {
    ensure!(
        cert.version == CERTIFICATE_VERSION,
        "unsupported certificate version {}",
        cert.version
    );
    ensure!(cert.family.r_allowed(cert.r), "r = {} violates the {} family's gcd constraint", cert.r, cert.family);
    ensure!(cert.r.to_usize().is_some(), "r too large");
    let ctx = match context(cert) {
        Ok(c) => c,
        Err(v) => return v,
    };
    check!(ideal_power_in(cert, &ctx));
    check!(verify_residue_conditions(cert));
    check!(nonpower_in(cert, &ctx));
    check!(verify_ramification(cert));
    verify_relative_norms(cert)
}
