//! Machine-readable chirality certificates.
//!
//! A certificate records a claim, its canonical inputs, an ordered list of
//! checks with their verdicts, optional witnesses and nested certificates.
//! The determinism hash is SHA-256 over the canonical JSON encoding (sorted
//! keys, no insignificant whitespace) of everything except the timestamp and
//! the hash itself.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::exact::{IntMatrix, IntPolynomial};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest integer magnitude emitted as a JSON number; anything larger is a
/// decimal string.
pub const MAX_SAFE_JSON_INT: i64 = (1 << 53) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    NoObstruction,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    fn severity(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::NoObstruction => 1,
            Verdict::Inconclusive => 2,
            Verdict::Fail => 3,
        }
    }

    /// Combines verdicts of mandatory checks: the most severe one wins, with
    /// `FAIL > INCONCLUSIVE > NO_OBSTRUCTION > PASS`.
    pub fn combine(self, other: Verdict) -> Verdict {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::NoObstruction => "NO_OBSTRUCTION",
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "PASS" => Ok(Verdict::Pass),
            "FAIL" => Ok(Verdict::Fail),
            "INCONCLUSIVE" => Ok(Verdict::Inconclusive),
            "NO_OBSTRUCTION" => Ok(Verdict::NoObstruction),
            _ => Err(format!("unknown verdict '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    MappingTorus,
    LensChirality,
    LensMinOrder,
    DgaDim9,
    DgaDim13,
    PlanRecipe,
    GroupsH4,
    Obstruction,
}

impl CertificateKind {
    pub const ALL: [CertificateKind; 8] = [
        CertificateKind::MappingTorus,
        CertificateKind::LensChirality,
        CertificateKind::LensMinOrder,
        CertificateKind::DgaDim9,
        CertificateKind::DgaDim13,
        CertificateKind::PlanRecipe,
        CertificateKind::GroupsH4,
        CertificateKind::Obstruction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::MappingTorus => "mapping-torus",
            CertificateKind::LensChirality => "lens-chirality",
            CertificateKind::LensMinOrder => "lens-min-order",
            CertificateKind::DgaDim9 => "dga-dim9",
            CertificateKind::DgaDim13 => "dga-dim13",
            CertificateKind::PlanRecipe => "plan-recipe",
            CertificateKind::GroupsH4 => "groups-h4",
            CertificateKind::Obstruction => "obstruction",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CertificateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CertificateKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown certificate kind '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub mandatory: bool,
    pub data: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, data: Value) -> Self {
        Self {
            name: name.into(),
            verdict,
            mandatory: true,
            data,
        }
    }

    /// A check recorded for information; it never changes the claim verdict.
    pub fn informational(name: impl Into<String>, verdict: Verdict, data: Value) -> Self {
        Self {
            name: name.into(),
            verdict,
            mandatory: false,
            data,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub tool_version: String,
    pub kind: CertificateKind,
    pub claim: String,
    pub verdict: Verdict,
    pub dimension: Option<u64>,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub witnesses: Value,
    pub references: Vec<String>,
    pub subcertificates: Vec<Certificate>,
    pub timestamp: Option<u64>,
    pub determinism_hash: String,
}

impl Certificate {
    pub fn builder(kind: CertificateKind, claim: impl Into<String>) -> CertificateBuilder {
        CertificateBuilder {
            kind,
            claim: claim.into(),
            dimension: None,
            inputs: Map::new(),
            checks: Vec::new(),
            witnesses: Map::new(),
            references: Vec::new(),
            subcertificates: Vec::new(),
        }
    }

    /// JSON value of the hashed body: everything except `timestamp` and
    /// `determinism_hash`.
    pub fn body(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("certificate serializes");
        strip_unhashed(&mut v);
        v
    }

    pub fn compute_hash(&self) -> String {
        let digest = Sha256::digest(canonical_json(&self.body()).as_bytes());
        hex::encode(digest)
    }

    /// Recomputes the hash and compares it with the stored one.
    pub fn hash_is_valid(&self) -> bool {
        self.compute_hash() == self.determinism_hash
            && self.subcertificates.iter().all(Certificate::hash_is_valid)
    }

    /// One-line canonical JSON encoding.
    pub fn to_json_line(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("certificate serializes"))
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn with_timestamp(mut self, unix_seconds: u64) -> Self {
        self.timestamp = Some(unix_seconds);
        self
    }

    /// Whether every mandatory check passed.
    pub fn all_mandatory_pass(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.mandatory)
            .all(|c| c.verdict.is_pass())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Depth-first iterator over this certificate and all nested ones.
    pub fn walk(&self) -> Vec<&Certificate> {
        let mut out = vec![self];
        for sub in &self.subcertificates {
            out.extend(sub.walk());
        }
        out
    }
}

fn strip_unhashed(v: &mut Value) {
    if let Value::Object(map) = v {
        map.remove("timestamp");
        map.remove("determinism_hash");
        if let Some(Value::Array(subs)) = map.get_mut("subcertificates") {
            for s in subs {
                strip_unhashed(s);
            }
        }
    }
}

pub struct CertificateBuilder {
    kind: CertificateKind,
    claim: String,
    dimension: Option<u64>,
    inputs: Map<String, Value>,
    checks: Vec<Check>,
    witnesses: Map<String, Value>,
    references: Vec<String>,
    subcertificates: Vec<Certificate>,
}

impl CertificateBuilder {
    pub fn dimension(mut self, d: u64) -> Self {
        self.dimension = Some(d);
        self
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn check(mut self, check: Check) -> Self {
        self.checks.push(check);
        self
    }

    pub fn checks(mut self, checks: impl IntoIterator<Item = Check>) -> Self {
        self.checks.extend(checks);
        self
    }

    pub fn witness(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.witnesses.insert(key.to_owned(), value.into());
        self
    }

    pub fn reference(mut self, r: impl Into<String>) -> Self {
        self.references.push(r.into());
        self
    }

    /// Nests a certificate and adds a mandatory check requiring it to pass.
    pub fn subcertificate(mut self, cert: Certificate) -> Self {
        self.checks.push(Check::new(
            format!("subcertificate:{}", cert.kind),
            cert.verdict,
            json!({ "claim": cert.claim, "determinism_hash": cert.determinism_hash }),
        ));
        self.subcertificates.push(cert);
        self
    }

    /// Nests a certificate for context only.
    pub fn attach(mut self, cert: Certificate) -> Self {
        self.subcertificates.push(cert);
        self
    }

    pub fn finish(self) -> Certificate {
        let verdict = self
            .checks
            .iter()
            .filter(|c| c.mandatory)
            .fold(Verdict::Pass, |acc, c| acc.combine(c.verdict));
        let mut cert = Certificate {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_owned(),
            kind: self.kind,
            claim: self.claim,
            verdict,
            dimension: self.dimension,
            inputs: Value::Object(self.inputs),
            checks: self.checks,
            witnesses: Value::Object(self.witnesses),
            references: self.references,
            subcertificates: self.subcertificates,
            timestamp: None,
            determinism_hash: String::new(),
        };
        cert.determinism_hash = cert.compute_hash();
        cert
    }
}

/// Canonical JSON text: object keys sorted, no whitespace.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_canonical(v, &mut out);
    out
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push(':');
                write_canonical(&map[k], out);
            }
            out.push('}');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(item, out);
            }
            out.push(']');
        }
        other => {
            let _ = write!(out, "{other}");
        }
    }
}

/// Integer as a JSON number when it is within the 53-bit safe range, as a
/// decimal string otherwise.
pub fn json_int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= MAX_SAFE_JSON_INT => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn json_u64(x: u64) -> Value {
    json_int(&BigInt::from(x))
}

/// Row-major nested arrays.
pub fn json_matrix(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(json_int).collect()))
            .collect(),
    )
}

/// Coefficients in ascending exponent order.
pub fn json_poly(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(json_int).collect())
}
