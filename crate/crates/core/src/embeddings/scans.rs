use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::interval::RealInterval;
use super::pell::{pell_fundamental_unit, QuadraticUnit};
use super::roots::{ordered_real_roots, Containment, RootOrdering};
use super::EmbeddingsError;
use crate::exactmath::{Integer, Rational};
use crate::family::{FamilyId, FieldInstance};

/// Precision schedule: start at `start_bits` and double up to `max_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanOptions {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { start_bits: 24, max_bits: 1024 }
    }
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn qi(a: &Integer) -> Rational {
    Rational::from_integer(a.clone())
}

fn ln_abs(x: &RealInterval, bits: u32) -> Option<RealInterval> {
    x.abs().ln(bits)
}

fn ln_abs_ratio(ord: &RootOrdering, i: usize, j: usize, bits: u32) -> Option<RealInterval> {
    let r = ord.root(i, bits).checked_div(&ord.root(j, bits))?;
    ln_abs(&r, bits)
}

/// `log|ρ₁/ρ₄|·log|ρ₃/ρ₀| − log²|ρ₂/ρ₅|` enclosed at the given precision.
pub fn sextic_quantity(ord: &RootOrdering, bits: u32) -> Option<RealInterval> {
    let a = ln_abs_ratio(ord, 1, 4, bits)?;
    let b = ln_abs_ratio(ord, 3, 0, bits)?;
    let c = ln_abs_ratio(ord, 2, 5, bits)?;
    Some(&(&a * &b) - &c.square())
}

/// Doubles precision until `eval` yields an interval that excludes zero.
fn certify_nonzero<F>(what: &str, opts: ScanOptions, eval: F) -> Result<(RealInterval, u32), EmbeddingsError>
where
    F: Fn(u32) -> Option<RealInterval>,
{
    let mut bits = opts.start_bits.max(8);
    loop {
        if let Some(v) = eval(bits) {
            if !v.contains_zero() {
                return Ok((v, bits));
            }
        }
        if bits >= opts.max_bits {
            return Err(EmbeddingsError::PrecisionExhausted { what: what.to_string(), bits });
        }
        bits = (bits * 2).min(opts.max_bits);
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ScanStatus {
    Certified { enclosure: RealInterval, negative: bool, bits: u32 },
    Skipped { reason: String },
    Failed { error: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub n: String,
    #[serde(flatten)]
    pub status: ScanStatus,
    /// Interval labels and the inequality chain, checked for `n ≥ 76`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<Containment>,
}

impl ScanEntry {
    pub fn is_certified(&self) -> bool {
        matches!(self.status, ScanStatus::Certified { .. })
    }

    /// Certified, or skipped as inadmissible, with every chain step holding.
    pub fn is_ok(&self) -> bool {
        !matches!(self.status, ScanStatus::Failed { .. }) && self.chain.iter().all(|c| c.holds == Some(true))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub family: FamilyId,
    pub entries: Vec<ScanEntry>,
    pub all_ok: bool,
}

impl ScanReport {
    pub fn certified(&self) -> usize {
        self.entries.iter().filter(|e| e.is_certified()).count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.status, ScanStatus::Skipped { .. })).count()
    }
}

fn chain_step(name: &str, lhs: &RealInterval, rhs: &RealInterval) -> Containment {
    Containment {
        quantity: name.to_string(),
        lo: format!("{lhs}"),
        hi: format!("{rhs}"),
        holds: Some(lhs.hi() < rhs.lo()),
    }
}

/// The three strict inequalities bounding the quantity from above when `n ≥ 76`.
fn sextic_chain(n: &Integer, value: &RealInterval, bits: u32) -> Vec<Containment> {
    let ln = |x: Rational| RealInterval::point(x).ln(bits).expect("positive");
    let l910 = ln(q(9, 10));
    let ln3 = ln(qi(&(n - 3)));
    let ln4 = ln(qi(&(n + 4)));
    let first = &(-&(&l910 * &ln3)) - &ln4.square();
    let second = -&(&ln4 * &(&l910 + &ln4));
    let zero = RealInterval::from_int(0);
    vec![
        chain_step("Q < -log(9/10)log(n-3) - log²(n+4)", value, &first),
        chain_step("-log(9/10)log(n-3) - log²(n+4) < -log(n+4)(log(9/10)+log(n+4))", &first, &second),
        chain_step("-log(n+4)(log(9/10)+log(n+4)) < 0", &second, &zero),
    ]
}

fn scan_one(n: &Integer, opts: ScanOptions) -> ScanEntry {
    let entry = |status, chain| ScanEntry { n: n.to_string(), status, chain };
    if !FamilyId::Sextic.is_admissible(n) {
        return entry(ScanStatus::Skipped { reason: "inadmissible".into() }, Vec::new());
    }
    let run = || -> Result<(RealInterval, u32, Vec<Containment>), EmbeddingsError> {
        let inst = FieldInstance::new(FamilyId::Sextic, n)?;
        let ord = ordered_real_roots(&inst)?;
        let (v, bits) = certify_nonzero(&format!("sextic quantity at n = {n}"), opts, |b| sextic_quantity(&ord, b))?;
        let mut chain = ord.containments().to_vec();
        if *n >= BigInt::from(76) {
            chain.extend(sextic_chain(n, &v, bits));
        }
        Ok((v, bits, chain))
    };
    match run() {
        Ok((v, bits, chain)) => {
            let negative = v.is_negative();
            entry(ScanStatus::Certified { enclosure: v, negative, bits }, chain)
        }
        Err(e) => entry(ScanStatus::Failed { error: e.to_string() }, Vec::new()),
    }
}

/// Certifies the sextic 2×2 regulator block nonzero for every admissible `n` given.
/// Runs in parallel on the current rayon pool.
pub fn sextic_independence_scan(ns: &[Integer], opts: ScanOptions) -> ScanReport {
    let entries: Vec<ScanEntry> = ns.par_iter().map(|n| scan_one(n, opts)).collect();
    let all_ok = entries.iter().all(ScanEntry::is_ok);
    ScanReport { family: FamilyId::Sextic, entries, all_ok }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuarticRegulatorReport {
    pub n: String,
    pub unit: QuadraticUnit,
    pub log_unit: RealInterval,
    pub rho0: RealInterval,
    pub regulator: RealInterval,
    pub bits: u32,
    pub positive: bool,
}

/// `R = 2 log ε (log²ρ₀ + log²ρ₁)` with `ε` the Pell unit of `ℚ(√(n²+16))`.
pub fn quartic_regulator(n: &Integer, opts: ScanOptions) -> Result<QuarticRegulatorReport, EmbeddingsError> {
    let inst = FieldInstance::new(FamilyId::Quartic, n)?;
    let ord = ordered_real_roots(&inst)?;
    let unit = pell_fundamental_unit(&(n * n + 16))?;
    let eval = |bits: u32| -> Option<RealInterval> {
        let le = unit.ln(bits)?;
        let l0 = ln_abs(&ord.root(0, bits), bits)?;
        let l1 = ln_abs(&ord.root(1, bits), bits)?;
        Some((&le * &(&l0.square() + &l1.square())).scale(&q(2, 1)))
    };
    let (regulator, bits) = certify_nonzero(&format!("quartic regulator at n = {n}"), opts, eval)?;
    let log_unit = unit.ln(bits).ok_or_else(|| EmbeddingsError::PrecisionExhausted { what: "log ε".into(), bits })?;
    let rho0 = ord.root(0, bits);
    let positive = regulator.is_positive() && log_unit.is_positive() && rho0.lo() > &Rational::one();
    Ok(QuarticRegulatorReport { n: n.to_string(), unit, log_unit, rho0, regulator, bits, positive })
}

pub fn quartic_regulator_positive(n: &Integer) -> Result<bool, EmbeddingsError> {
    Ok(quartic_regulator(n, ScanOptions::default())?.positive)
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicRegulatorReport {
    pub n: String,
    pub regulator: RealInterval,
    pub mu0: RealInterval,
    pub mu1: RealInterval,
    pub bits: u32,
    pub containments: Vec<Containment>,
    /// Bound chain for `n ≥ 7`; empty below.
    pub chain: Vec<Containment>,
    pub nonzero: bool,
}

/// `μ = (ρ+1)³/(2ρ)` as an interval.
fn mu_interval(rho: &RealInterval) -> Option<RealInterval> {
    let s = rho + &RealInterval::from_int(1);
    (&s.square() * &s).checked_div(&rho.scale(&q(2, 1)))
}

fn cubic_chain(n: &Integer, mu0: &RealInterval, mu1: &RealInterval) -> Vec<Containment> {
    let nr = qi(n);
    let one = RealInterval::from_int(1);
    let p = |x: Rational| RealInterval::point(x);
    let upper1 = p(q(27, 1) / (q(2, 1) * &nr * &nr * (&nr + q(1, 1))));
    let lower1 = p(q(1, 1) / (q(2, 1) * &nr * &nr * (&nr + q(3, 1))));
    let m3 = &nr - q(3, 1);
    let lower0 = p(&m3 * &m3 * &m3 / (q(2, 1) * (&nr - q(1, 1))));
    let upper0 = p((&nr - q(2, 1)) * (&nr - q(2, 1)) / q(2, 1));
    let a1 = mu1.abs();
    let a0 = mu0.abs();
    vec![
        chain_step("27/(2n²(n+1)) < 1", &upper1, &one),
        chain_step("|μ1| < 27/(2n²(n+1))", &a1, &upper1),
        chain_step("1/(2n²(n+3)) < |μ1|", &lower1, &a1),
        chain_step("|μ0| < (n-2)²/2", &a0, &upper0),
        chain_step("(n-3)³/(2(n-1)) < |μ0|", &lower0, &a0),
        chain_step("1 < (n-3)³/(2(n-1))", &one, &lower0),
    ]
}

/// `R = |log|μ₀|·log|ρ₁| − log|ρ₀|·log|μ₁||` for the cubic family, roots ascending.
pub fn cubic_regulator(n: &Integer, opts: ScanOptions) -> Result<CubicRegulatorReport, EmbeddingsError> {
    let inst = FieldInstance::new(FamilyId::Cubic, n)?;
    let ord = ordered_real_roots(&inst)?;
    let eval = |bits: u32| -> Option<RealInterval> {
        let r0 = ord.root(0, bits);
        let r1 = ord.root(1, bits);
        let lm0 = ln_abs(&mu_interval(&r0)?, bits)?;
        let lm1 = ln_abs(&mu_interval(&r1)?, bits)?;
        let lr0 = ln_abs(&r0, bits)?;
        let lr1 = ln_abs(&r1, bits)?;
        Some((&(&lm0 * &lr1) - &(&lr0 * &lm1)).abs())
    };
    let (regulator, bits) = certify_nonzero(&format!("cubic regulator at n = {n}"), opts, eval)?;
    let overflow = || EmbeddingsError::PrecisionExhausted { what: "μ enclosure".into(), bits };
    let mu0 = mu_interval(&ord.root(0, bits)).ok_or_else(overflow)?;
    let mu1 = mu_interval(&ord.root(1, bits)).ok_or_else(overflow)?;
    let chain = if *n >= BigInt::from(7) { cubic_chain(n, &mu0, &mu1) } else { Vec::new() };
    let nonzero = regulator.is_positive();
    Ok(CubicRegulatorReport {
        n: n.to_string(),
        regulator,
        mu0,
        mu1,
        bits,
        containments: ord.containments().to_vec(),
        chain,
        nonzero,
    })
}

pub fn cubic_independence_check(n: &Integer) -> Result<bool, EmbeddingsError> {
    Ok(cubic_regulator(n, ScanOptions::default())?.nonzero)
}
