//! Witness construction: Bauer primes, `c_r`, the `(y, n)` family steered by
//! congruences, ramified-prime targeting and the end-to-end search loop.

mod bauer;
mod construct;
mod run;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{ExactMathError, Integer, Symbol, DEFAULT_FACTOR_BUDGET};
use crate::family::{FamilyError, FamilyId};
use crate::polynomial::PolynomialError;

pub use bauer::{find_bauer_prime, residue_transcript};
pub use construct::{
    build_cr, construct_y_n, cr_target_residue, find_ramified_q, ramified_prime_setup, CrConstruction, RamifiedSetup,
    YnPair,
};
pub use run::{find_nonpower_evidence, ideal_factors_for, run_search, SearchOutcome};

/// `(base | ℓ)_p` must equal `requirement`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueCondition {
    pub base: u64,
    pub requirement: Symbol,
}

impl ResidueCondition {
    pub fn new(base: i64, requirement: Symbol) -> Self {
        assert!(base > 1, "residue condition base must exceed 1");
        ResidueCondition { base: base as u64, requirement }
    }
}

impl fmt::Display for ResidueCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.requirement {
            Symbol::Residue => "R",
            Symbol::NonResidue => "N",
        };
        write!(f, "{}:{}", self.base, r)
    }
}

/// Parses `2:R,3:N` style condition lists.
pub fn parse_conditions(text: &str) -> Result<Vec<ResidueCondition>, SearchError> {
    let mut out: Vec<ResidueCondition> = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (b, s) = part
            .split_once(':')
            .ok_or_else(|| SearchError::Config(format!("condition {part:?} is not base:R or base:N")))?;
        let base: u64 = b
            .trim()
            .parse()
            .map_err(|_| SearchError::Config(format!("bad base in condition {part:?}")))?;
        if base < 2 {
            return Err(SearchError::Config(format!("base must be at least 2 in {part:?}")));
        }
        let requirement = match s.trim() {
            "R" | "r" | "1" | "residue" | "Residue" => Symbol::Residue,
            "N" | "n" | "0" | "nonresidue" | "NonResidue" => Symbol::NonResidue,
            other => return Err(SearchError::Config(format!("bad symbol {other:?} in condition {part:?}"))),
        };
        if out.iter().any(|c| c.base == base) {
            return Err(SearchError::Config(format!("base {base} appears twice")));
        }
        out.push(ResidueCondition { base, requirement });
    }
    Ok(out)
}

/// A prime `ℓ ≡ 1 (mod p)` with the residue symbols it was selected for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BauerWitness {
    pub p: u64,
    pub ell: Integer,
    pub transcript: Vec<(u64, Symbol)>,
}

impl BauerWitness {
    pub fn satisfies(&self, conditions: &[ResidueCondition]) -> bool {
        conditions
            .iter()
            .all(|c| self.transcript.iter().any(|&(b, s)| b == c.base && s == c.requirement))
    }
}

/// Search bounds. `precision_budget` caps the bits spent on real enclosures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest prime examined when scanning for Bauer, evidence or ramified primes.
    pub scan_bound: u64,
    /// Number of parameters `m` tried before giving up.
    pub m_max: u64,
    pub factor_budget: u64,
    pub precision_budget: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            scan_bound: 1_000_000,
            m_max: 2_000,
            factor_budget: DEFAULT_FACTOR_BUDGET,
            precision_budget: 1024,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.scan_bound == 0 || self.m_max == 0 || self.factor_budget == 0 || self.precision_budget == 0 {
            return Err(SearchError::Config("all search bounds must be positive".into()));
        }
        Ok(())
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SearchError> {
        let bad = |_| SearchError::Config(format!("{key}: {value:?} is not a positive integer"));
        match key {
            "scan_bound" => self.scan_bound = value.parse().map_err(bad)?,
            "m_max" => self.m_max = value.parse().map_err(bad)?,
            "factor_budget" => self.factor_budget = value.parse().map_err(bad)?,
            "precision_budget" => self.precision_budget = value.parse().map_err(bad)?,
            other => return Err(SearchError::Config(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, SearchError> {
        let mut cfg = SearchConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| SearchError::Config(format!("line {}: expected key = value", i + 1)))?;
            cfg.set(k.trim(), v.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, SearchError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SearchError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no {what} below the scan bound {bound}")]
    BoundExhausted { what: String, bound: u64 },
    #[error("no valid certificate for the {family} family at r = {r} after {attempts} parameters")]
    SearchExhausted { family: FamilyId, r: u64, attempts: u64 },
    #[error("q = {q} is not usable: {reason}")]
    PrimeInadmissible { q: u64, reason: String },
    #[error("congruence violated: {0}")]
    CongruenceViolated(String),
    #[error("bad configuration: {0}")]
    Config(String),
    #[error(transparent)]
    ExactMath(#[from] ExactMathError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
}

/// Distinct prime divisors of `r`, ascending.
pub fn prime_divisors(r: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = r;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}
