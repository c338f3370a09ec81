//! Chirality of products and the signature obstruction.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::descriptor::{kunneth, Chirality, ChiralityStatus, ManifoldDescriptor, Provenance};
use crate::certificate::{Certificate, CertificateKind, Check, Verdict};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductRule {
    /// Rational homology sphere times a non-sphere of the same dimension.
    SameDimension,
    /// Rational homology sphere of dimension `s` times a manifold of another
    /// dimension with `b_s = 0`.
    DifferentDimension,
}

impl ProductRule {
    pub fn as_str(self) -> &'static str {
        match self {
            ProductRule::SameDimension => "same-dimension-product",
            ProductRule::DifferentDimension => "different-dimension-product",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleVerdict {
    pub rule: ProductRule,
    pub chirality: Chirality,
    /// Why the rule does not apply, when `chirality` is `UNKNOWN`.
    pub reason: Option<String>,
}

impl RuleVerdict {
    fn unknown(rule: ProductRule, reason: String) -> Self {
        Self {
            rule,
            chirality: Chirality::Unknown,
            reason: Some(reason),
        }
    }
}

fn factor_verdict(
    rule: ProductRule,
    sphere: &ManifoldDescriptor,
    other: &ManifoldDescriptor,
) -> RuleVerdict {
    let (a, b) = (sphere.chirality.chirality, other.chirality.chirality);
    if a == Chirality::Unknown || b == Chirality::Unknown {
        return RuleVerdict::unknown(rule, "a factor has unknown chirality".into());
    }
    // A degree −1 map on one factor times the identity reverses the product.
    let chirality = if a == Chirality::StronglyChiral && b == Chirality::StronglyChiral {
        Chirality::StronglyChiral
    } else {
        Chirality::Amphicheiral
    };
    RuleVerdict {
        rule,
        chirality,
        reason: None,
    }
}

/// `Σ × M` with `dim Σ = dim M`, `Σ` a rational homology sphere and `M` not
/// one. A self-map then has degree `a·d` where `a`, `d` are the degrees on the
/// two factor classes, since every map `Σ → M` has degree zero.
pub fn product_chirality_same_dim(
    sigma: &ManifoldDescriptor,
    m: &ManifoldDescriptor,
) -> RuleVerdict {
    let rule = ProductRule::SameDimension;
    if sigma.dimension != m.dimension {
        return RuleVerdict::unknown(
            rule,
            format!("dimensions differ: {} and {}", sigma.dimension, m.dimension),
        );
    }
    match sigma.rational_sphere_status() {
        Some(true) => {}
        Some(false) => {
            return RuleVerdict::unknown(
                rule,
                format!("{} is not a rational homology sphere", sigma.name),
            )
        }
        None => {
            return RuleVerdict::unknown(
                rule,
                format!("Betti numbers of {} are not all known", sigma.name),
            )
        }
    }
    match m.rational_sphere_status() {
        Some(false) => {}
        Some(true) => {
            return RuleVerdict::unknown(
                rule,
                format!("{} is also a rational homology sphere", m.name),
            )
        }
        None => {
            return RuleVerdict::unknown(
                rule,
                format!("not known whether {} is a rational homology sphere", m.name),
            )
        }
    }
    factor_verdict(rule, sigma, m)
}

/// `Σ × M` with `Σ` a rational homology sphere of dimension `s ≠ dim M` and
/// `b_s(M) = 0`; Künneth alone separates the two fundamental classes.
pub fn product_chirality_diff_dim(
    sigma: &ManifoldDescriptor,
    m: &ManifoldDescriptor,
) -> RuleVerdict {
    let rule = ProductRule::DifferentDimension;
    let s = sigma.dimension;
    if s == m.dimension {
        return RuleVerdict::unknown(rule, format!("both factors have dimension {s}"));
    }
    match sigma.rational_sphere_status() {
        Some(true) => {}
        Some(false) => {
            return RuleVerdict::unknown(
                rule,
                format!("{} is not a rational homology sphere", sigma.name),
            )
        }
        None => {
            return RuleVerdict::unknown(
                rule,
                format!("Betti numbers of {} are not all known", sigma.name),
            )
        }
    }
    match m.betti(s) {
        Some(0) => factor_verdict(rule, sigma, m),
        Some(b) => RuleVerdict::unknown(rule, format!("b_{s}({}) = {b} is nonzero", m.name)),
        None => RuleVerdict::unknown(rule, format!("b_{s}({}) is unknown", m.name)),
    }
}

/// Product descriptor with chirality from whichever rule matches the
/// dimensions.
pub fn product(
    sigma: &ManifoldDescriptor,
    m: &ManifoldDescriptor,
) -> (ManifoldDescriptor, RuleVerdict) {
    let verdict = if sigma.dimension == m.dimension {
        product_chirality_same_dim(sigma, m)
    } else {
        product_chirality_diff_dim(sigma, m)
    };
    let mut d = kunneth(sigma, m);
    d.chirality = if verdict.chirality == Chirality::Unknown {
        ChiralityStatus::unknown()
    } else {
        ChiralityStatus {
            chirality: verdict.chirality,
            provenance: Provenance::Rule {
                rule: verdict.rule.as_str().to_owned(),
                factors: vec![sigma.name.clone(), m.name.clone()],
            },
        }
    };
    (d, verdict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureEvidence {
    pub name: String,
    pub dimension: u64,
    pub signature: i64,
    pub verdict: Verdict,
}

impl SignatureEvidence {
    pub fn to_check(&self) -> Check {
        Check::new(
            "signature is nonzero",
            self.verdict,
            json!({ "manifold": self.name, "dimension": self.dimension, "signature": self.signature }),
        )
    }

    pub fn to_certificate(&self) -> Certificate {
        Certificate::builder(
            CertificateKind::Obstruction,
            format!("{} admits no self-map of negative degree", self.name),
        )
        .dimension(self.dimension)
        .input("manifold", self.name.clone())
        .input("signature", self.signature)
        .check(self.to_check())
        .reference("orientation reversal negates the signature")
        .finish()
    }
}

/// A self-map of degree `d` multiplies the signature by `d` on the top
/// class, so a nonzero signature rules out negative degrees.
pub fn signature_obstruction(d: &ManifoldDescriptor) -> Result<SignatureEvidence> {
    if !d.dimension.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "signature obstruction needs dimension 0 mod 4, got {}; the intersection form is antisymmetric in dimensions 2 mod 4",
            d.dimension
        )));
    }
    let signature = d
        .signature
        .ok_or_else(|| Error::InvalidArgument(format!("signature of {} is unknown", d.name)))?;
    let verdict = if signature != 0 {
        Verdict::Pass
    } else {
        Verdict::NoObstruction
    };
    Ok(SignatureEvidence {
        name: d.name.clone(),
        dimension: d.dimension,
        signature,
        verdict,
    })
}
