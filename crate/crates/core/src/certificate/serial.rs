use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::model::{
    ClassOrderCertificate, IdealFactorCert, NonPowerEvidence, RamifiedData, RoleWitness, WitnessRole,
};
use super::CertificateError;
use crate::exactmath::{Integer, Symbol};
use crate::family::FamilyId;
use crate::search::BauerWitness;

// Wire forms: every integer is a decimal string.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireTranscriptEntry {
    base: String,
    symbol: Symbol,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireWitness {
    role: WitnessRole,
    p: String,
    ell: String,
    transcript: Vec<WireTranscriptEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireIdealFactor {
    ell: String,
    root: String,
    exponent: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireEvidence {
    p: String,
    ell: String,
    root: String,
    value: String,
    symbol: Symbol,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireRamified {
    q: String,
    n0: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCertificate {
    version: String,
    family: FamilyId,
    r: String,
    n: String,
    y: String,
    c_r: Option<String>,
    bauer_witnesses: Vec<WireWitness>,
    ideal_factors: Vec<WireIdealFactor>,
    nonpower_evidence: Vec<WireEvidence>,
    ramified_q: Option<WireRamified>,
}

fn malformed(msg: impl Into<String>) -> CertificateError {
    CertificateError::MalformedCertificate(msg.into())
}

fn is_decimal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn big(field: &str, s: &str) -> Result<Integer, CertificateError> {
    if !is_decimal(s) {
        return Err(malformed(format!("{field}: {s:?} is not a decimal integer")));
    }
    s.parse().map_err(|_| malformed(format!("{field}: {s:?} is not a decimal integer")))
}

fn small(field: &str, s: &str) -> Result<u64, CertificateError> {
    if !is_decimal(s) || s.starts_with('-') {
        return Err(malformed(format!("{field}: {s:?} is not a non-negative decimal integer")));
    }
    s.parse().map_err(|_| malformed(format!("{field}: {s:?} does not fit in 64 bits")))
}

fn to_wire(cert: &ClassOrderCertificate) -> WireCertificate {
    WireCertificate {
        version: cert.version.to_string(),
        family: cert.family,
        r: cert.r.to_string(),
        n: cert.n.to_string(),
        y: cert.y.to_string(),
        c_r: cert.c_r.as_ref().map(ToString::to_string),
        bauer_witnesses: cert
            .bauer_witnesses
            .iter()
            .map(|w| WireWitness {
                role: w.role,
                p: w.witness.p.to_string(),
                ell: w.witness.ell.to_string(),
                transcript: w
                    .witness
                    .transcript
                    .iter()
                    .map(|&(b, s)| WireTranscriptEntry { base: b.to_string(), symbol: s })
                    .collect(),
            })
            .collect(),
        ideal_factors: cert
            .ideal_factors
            .iter()
            .map(|f| WireIdealFactor {
                ell: f.ell.to_string(),
                root: f.root.to_string(),
                exponent: f.exponent.to_string(),
            })
            .collect(),
        nonpower_evidence: cert
            .nonpower_evidence
            .iter()
            .map(|e| WireEvidence {
                p: e.p.to_string(),
                ell: e.ell.to_string(),
                root: e.root.to_string(),
                value: e.value.to_string(),
                symbol: e.symbol,
            })
            .collect(),
        ramified_q: cert.ramified_q.as_ref().map(|q| WireRamified { q: q.q.to_string(), n0: q.n0.to_string() }),
    }
}

/// The certificate as a JSON value; object keys come out sorted.
pub fn to_json_value(cert: &ClassOrderCertificate) -> Value {
    serde_json::to_value(to_wire(cert)).expect("wire form is plain data")
}

/// Canonical text: sorted keys, no whitespace, integers as decimal strings.
pub fn serialize(cert: &ClassOrderCertificate) -> String {
    serde_json::to_string(&to_json_value(cert)).expect("JSON values always serialize")
}

pub fn parse(text: &str) -> Result<ClassOrderCertificate, CertificateError> {
    let wire: WireCertificate = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    let version = small("version", &wire.version)?;
    let version = u32::try_from(version).map_err(|_| malformed("version out of range"))?;
    let bauer_witnesses = wire
        .bauer_witnesses
        .iter()
        .map(|w| {
            let transcript = w
                .transcript
                .iter()
                .map(|t| Ok((small("transcript base", &t.base)?, t.symbol)))
                .collect::<Result<_, CertificateError>>()?;
            Ok(RoleWitness {
                role: w.role,
                witness: BauerWitness { p: small("witness p", &w.p)?, ell: big("witness ell", &w.ell)?, transcript },
            })
        })
        .collect::<Result<_, CertificateError>>()?;
    let ideal_factors = wire
        .ideal_factors
        .iter()
        .map(|f| {
            Ok(IdealFactorCert {
                ell: big("ideal factor ell", &f.ell)?,
                root: big("ideal factor root", &f.root)?,
                exponent: small("ideal factor exponent", &f.exponent)?,
            })
        })
        .collect::<Result<_, CertificateError>>()?;
    let nonpower_evidence = wire
        .nonpower_evidence
        .iter()
        .map(|e| {
            Ok(NonPowerEvidence {
                p: small("evidence p", &e.p)?,
                ell: big("evidence ell", &e.ell)?,
                root: big("evidence root", &e.root)?,
                value: big("evidence value", &e.value)?,
                symbol: e.symbol,
            })
        })
        .collect::<Result<_, CertificateError>>()?;
    let ramified_q = wire
        .ramified_q
        .as_ref()
        .map(|q| Ok::<_, CertificateError>(RamifiedData { q: big("q", &q.q)?, n0: big("n0", &q.n0)? }))
        .transpose()?;
    Ok(ClassOrderCertificate {
        version,
        family: wire.family,
        r: small("r", &wire.r)?,
        n: big("n", &wire.n)?,
        y: big("y", &wire.y)?,
        c_r: wire.c_r.as_deref().map(|c| big("c_r", c)).transpose()?,
        bauer_witnesses,
        ideal_factors,
        nonpower_evidence,
        ramified_q,
    })
}
