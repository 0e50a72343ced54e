use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactmath::{Integer, Symbol};
use crate::family::FamilyId;
use crate::search::{BauerWitness, ResidueCondition};

/// Which Bauer prime a witness stands for. The residue pattern each role must
/// realize is fixed per family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRole {
    L1,
    L2,
    L3,
}

impl fmt::Display for WitnessRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessRole::L1 => "l1",
            WitnessRole::L2 => "l2",
            WitnessRole::L3 => "l3",
        })
    }
}

impl std::str::FromStr for WitnessRole {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "l1" => Ok(WitnessRole::L1),
            "l2" => Ok(WitnessRole::L2),
            "l3" => Ok(WitnessRole::L3),
            other => Err(format!("unknown witness role {other:?}")),
        }
    }
}

fn conds(table: &[(i64, Symbol)]) -> Vec<ResidueCondition> {
    table.iter().map(|&(b, s)| ResidueCondition::new(b, s)).collect()
}

/// The roles a family needs for each prime `p | r`.
pub fn required_roles(family: FamilyId) -> &'static [WitnessRole] {
    match family {
        FamilyId::Sextic | FamilyId::Quartic => &[WitnessRole::L1, WitnessRole::L2],
        FamilyId::Cubic => &[WitnessRole::L1, WitnessRole::L2, WitnessRole::L3],
    }
}

/// Residue pattern a witness in `role` must realize.
///
/// Sextic: `(2|ℓ₁)=(3|ℓ₁)=1, (5|ℓ₁)≠1` and `(3|ℓ₂)=(5|ℓ₂)=1, (2|ℓ₂)≠1`.
/// Quartic: `(2|ℓ₁)=1, (3|ℓ₁)≠1` and `(3|ℓ₂)=1, (2|ℓ₂)≠1`.
/// Cubic: `(2|ℓ₁)=(37|ℓ₁)=1, (3|ℓ₁)≠1`; `(37|ℓ₂)=1, (2|ℓ₂)≠1, (3|ℓ₂)≠1`; `(37|ℓ₃)≠1`.
pub fn role_conditions(family: FamilyId, role: WitnessRole) -> Option<Vec<ResidueCondition>> {
    use Symbol::{NonResidue as N, Residue as R};
    use WitnessRole::*;
    let table: &[(i64, Symbol)] = match (family, role) {
        (FamilyId::Sextic, L1) => &[(2, R), (3, R), (5, N)],
        (FamilyId::Sextic, L2) => &[(3, R), (5, R), (2, N)],
        (FamilyId::Quartic, L1) => &[(2, R), (3, N)],
        (FamilyId::Quartic, L2) => &[(3, R), (2, N)],
        (FamilyId::Cubic, L1) => &[(2, R), (37, R), (3, N)],
        (FamilyId::Cubic, L2) => &[(37, R), (2, N), (3, N)],
        (FamilyId::Cubic, L3) => &[(37, N)],
        _ => return None,
    };
    Some(conds(table))
}

/// A Bauer witness tagged with the prime `p | r` and role it serves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleWitness {
    pub role: WitnessRole,
    pub witness: BauerWitness,
}

/// A prime `ℓ | y` with the residue of ρ selecting the prime ideal over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFactorCert {
    pub ell: Integer,
    /// Residue of ρ modulo the prime ideal; congruent to the family's evaluation point.
    pub root: Integer,
    /// `r·ν_ℓ(y)`, the exponent of the prime ideal in `w`'s factorization.
    pub exponent: u64,
}

/// A degree-1 prime at which the target element is not a p-th power residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPowerEvidence {
    pub p: u64,
    pub ell: Integer,
    pub root: Integer,
    pub value: Integer,
    pub symbol: Symbol,
}

/// Data for the ramified variant: `n ≡ n0 (mod q²)` with `q ‖ n0² + D₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamifiedData {
    pub q: Integer,
    pub n0: Integer,
}

pub const CERTIFICATE_VERSION: u32 = 1;

/// Everything needed to re-check that `K_n` carries an ideal class of order `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassOrderCertificate {
    pub version: u32,
    pub family: FamilyId,
    pub r: u64,
    pub n: Integer,
    pub y: Integer,
    pub c_r: Option<Integer>,
    pub bauer_witnesses: Vec<RoleWitness>,
    pub ideal_factors: Vec<IdealFactorCert>,
    pub nonpower_evidence: Vec<NonPowerEvidence>,
    pub ramified_q: Option<RamifiedData>,
}
