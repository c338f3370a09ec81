//! Rational Betti bookkeeping for closed, connected, orientable manifolds.
//!
//! Betti numbers are stored as `Option<u64>`: an entry is `None` when the
//! tool does not know it. Every rule that reads Betti numbers treats an
//! unknown entry as unknown, never as zero.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::certificate::{Certificate, CertificateKind, Verdict};
use crate::error::{Error, Result};
use crate::exact::rational::{rref, to_rational_rows};
use crate::exact::IntMatrix;
use crate::lens::LensSpace;
use crate::torus::MappingTorusCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Chirality {
    StronglyChiral,
    /// Admits a self-map of degree −1.
    Amphicheiral,
    Unknown,
}

impl Chirality {
    pub fn as_str(self) -> &'static str {
        match self {
            Chirality::StronglyChiral => "STRONGLY_CHIRAL",
            Chirality::Amphicheiral => "AMPHICHEIRAL",
            Chirality::Unknown => "UNKNOWN",
        }
    }
}

/// Where a chirality status comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    Certificate {
        kind: CertificateKind,
        determinism_hash: String,
    },
    Rule {
        rule: String,
        factors: Vec<String>,
    },
    Citation {
        text: String,
    },
    Axiom {
        text: String,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiralityStatus {
    pub chirality: Chirality,
    pub provenance: Provenance,
}

impl ChiralityStatus {
    pub fn unknown() -> Self {
        Self {
            chirality: Chirality::Unknown,
            provenance: Provenance::None,
        }
    }

    pub fn axiom(chirality: Chirality, text: impl Into<String>) -> Self {
        Self {
            chirality,
            provenance: Provenance::Axiom { text: text.into() },
        }
    }

    pub fn cited(chirality: Chirality, text: impl Into<String>) -> Self {
        Self {
            chirality,
            provenance: Provenance::Citation { text: text.into() },
        }
    }

    /// `STRONGLY_CHIRAL` when the certificate passes, `UNKNOWN` otherwise.
    pub fn from_certificate(cert: &Certificate) -> Self {
        Self {
            chirality: if cert.verdict == Verdict::Pass {
                Chirality::StronglyChiral
            } else {
                Chirality::Unknown
            },
            provenance: Provenance::Certificate {
                kind: cert.kind,
                determinism_hash: cert.determinism_hash.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldDescriptor {
    pub name: String,
    pub dimension: u64,
    /// `b_0, …, b_dim`; `None` marks an unknown entry.
    pub betti: Vec<Option<u64>>,
    pub simply_connected: bool,
    pub signature: Option<i64>,
    pub chirality: ChiralityStatus,
}

impl ManifoldDescriptor {
    /// Entered as given, then validated.
    pub fn axiomatic(
        name: impl Into<String>,
        betti: Vec<Option<u64>>,
        simply_connected: bool,
        signature: Option<i64>,
        chirality: ChiralityStatus,
    ) -> Result<Self> {
        if betti.is_empty() {
            return Err(Error::InvalidArgument(
                "betti sequence must contain b_0".into(),
            ));
        }
        let d = Self {
            name: name.into(),
            dimension: betti.len() as u64 - 1,
            betti,
            simply_connected,
            signature,
            chirality,
        };
        d.validate()?;
        Ok(d)
    }

    fn known(
        name: impl Into<String>,
        betti: Vec<u64>,
        simply_connected: bool,
        chirality: ChiralityStatus,
    ) -> Self {
        let betti: Vec<Option<u64>> = betti.into_iter().map(Some).collect();
        Self {
            name: name.into(),
            dimension: betti.len() as u64 - 1,
            betti,
            simply_connected,
            signature: None,
            chirality,
        }
    }

    pub fn point() -> Self {
        Self {
            signature: Some(1),
            ..Self::known("pt", vec![1], true, ChiralityStatus::unknown())
        }
    }

    pub fn sphere(n: u64) -> Self {
        let mut b = vec![0; n as usize + 1];
        b[0] = 1;
        b[n as usize] += 1;
        let mut d = Self::known(
            format!("S^{n}"),
            b,
            n != 1,
            ChiralityStatus::axiom(
                Chirality::Amphicheiral,
                "a reflection reverses the orientation of a sphere",
            ),
        );
        if n.is_multiple_of(4) {
            d.signature = Some(0);
        }
        d
    }

    /// `S^p × S^q` with a reflection in one factor.
    pub fn sphere_product(p: u64, q: u64) -> Self {
        let mut d = kunneth(&Self::sphere(p), &Self::sphere(q));
        d.chirality = ChiralityStatus::axiom(
            Chirality::Amphicheiral,
            "a reflection in one sphere factor reverses orientation",
        );
        d
    }

    /// `CP^k`; for even `k` the signature is 1, for odd `k` complex
    /// conjugation reverses the orientation.
    pub fn complex_projective(k: u64) -> Self {
        let b: Vec<u64> = (0..=2 * k).map(|i| u64::from(i % 2 == 0)).collect();
        let chirality = if k % 2 == 1 {
            ChiralityStatus::axiom(
                Chirality::Amphicheiral,
                "complex conjugation has degree (-1)^k on CP^k",
            )
        } else {
            ChiralityStatus::unknown()
        };
        let mut d = Self::known(format!("CP^{k}"), b, true, chirality);
        if k.is_multiple_of(2) {
            d.signature = Some(1);
        }
        d
    }

    /// A lens space is a rational homology sphere; its chirality comes from
    /// the given certificate (`FAIL` there means a degree −1 self-map exists).
    pub fn lens(lens: &LensSpace, cert: &Certificate) -> Self {
        let dim = lens.dimension();
        let mut b = vec![0; dim as usize + 1];
        b[0] = 1;
        b[dim as usize] = 1;
        let chirality = match cert.verdict {
            Verdict::Pass => Chirality::StronglyChiral,
            Verdict::Fail => Chirality::Amphicheiral,
            _ => Chirality::Unknown,
        };
        Self::known(
            lens.name(),
            b,
            false,
            ChiralityStatus {
                chirality,
                provenance: Provenance::Certificate {
                    kind: cert.kind,
                    determinism_hash: cert.determinism_hash.clone(),
                },
            },
        )
    }

    /// Mapping torus of a torus automorphism. Betti numbers are
    /// `b_k = f_k + f_{k−1}` with `f_k` the dimension of the fixed space of
    /// `Λ^k F`; exterior powers larger than [`EXTERIOR_POWER_LIMIT`] are left
    /// unknown.
    pub fn mapping_torus(cert: &MappingTorusCertificate) -> Result<Self> {
        let f = &cert.matrix;
        let fixed = exterior_fixed_dimensions(f, EXTERIOR_POWER_LIMIT)?;
        let r = f.rows();
        let betti: Vec<Option<u64>> = (0..=r + 1)
            .map(|k| {
                let hi = if k <= r { fixed[k] } else { Some(0) };
                let lo = if k >= 1 { fixed[k - 1] } else { Some(0) };
                Some(hi? + lo?)
            })
            .collect();
        let c = cert.to_certificate();
        Ok(Self {
            name: format!("T^{r}_F"),
            dimension: r as u64 + 1,
            betti,
            simply_connected: false,
            signature: None,
            chirality: ChiralityStatus::from_certificate(&c),
        })
    }

    /// The total space of the linear `S^{2k−1}`-bundle over `S^{2k}` with
    /// Euler class 6, a rational homology sphere of dimension `4k − 1` with
    /// `H_{2k−1} = Z/6`.
    pub fn euler_six_bundle(k: u64, linking: &Certificate) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!(
                "sphere bundle needs k >= 2, got {k}"
            )));
        }
        let dim = 4 * k - 1;
        let mut b = vec![0; dim as usize + 1];
        b[0] = 1;
        b[dim as usize] = 1;
        Ok(Self::known(
            format!("E^{dim}"),
            b,
            true,
            ChiralityStatus::from_certificate(linking),
        ))
    }

    pub fn validate(&self) -> Result<()> {
        if self.betti.len() as u64 != self.dimension + 1 {
            return Err(Error::InvalidArgument(format!(
                "{}: {} Betti numbers for dimension {}",
                self.name,
                self.betti.len(),
                self.dimension
            )));
        }
        if matches!(self.betti[0], Some(b) if b != 1) {
            return Err(Error::InvalidArgument(format!(
                "{}: b_0 must be 1",
                self.name
            )));
        }
        let n = self.betti.len() - 1;
        for i in 0..=n {
            if let (Some(x), Some(y)) = (self.betti[i], self.betti[n - i]) {
                if x != y {
                    return Err(Error::InvalidArgument(format!(
                        "{}: b_{i} = {x} but b_{} = {y}",
                        self.name,
                        n - i
                    )));
                }
            }
        }
        if self.signature.is_some() && !self.dimension.is_multiple_of(4) {
            return Err(Error::InvalidArgument(format!(
                "{}: signature given in dimension {}",
                self.name, self.dimension
            )));
        }
        Ok(())
    }

    pub fn betti(&self, k: u64) -> Option<u64> {
        if k > self.dimension {
            Some(0)
        } else {
            self.betti[k as usize]
        }
    }

    /// `Some(true)` for known `(1, 0, …, 0, 1)`, `Some(false)` once a known
    /// middle entry is nonzero, `None` if undecided.
    pub fn rational_sphere_status(&self) -> Option<bool> {
        if self.dimension == 0 {
            return Some(false);
        }
        let n = self.dimension as usize;
        let middle = &self.betti[1..n];
        if middle.iter().any(|b| matches!(b, Some(x) if *x != 0)) {
            return Some(false);
        }
        if middle.iter().all(Option::is_some) && self.betti[0].is_some() && self.betti[n].is_some()
        {
            return Some(self.betti[0] == Some(1) && self.betti[n] == Some(1));
        }
        None
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("descriptor serializes")
    }
}

pub fn is_rational_homology_sphere(d: &ManifoldDescriptor) -> bool {
    d.rational_sphere_status() == Some(true)
}

/// Rational Künneth formula. The product has unknown chirality; signature is
/// multiplicative with the convention that it vanishes off dimensions
/// `0 mod 4`.
pub fn kunneth(a: &ManifoldDescriptor, b: &ManifoldDescriptor) -> ManifoldDescriptor {
    let dim = a.dimension + b.dimension;
    let betti: Vec<Option<u64>> = (0..=dim)
        .map(|k| {
            let mut sum = Some(0u64);
            for i in k.saturating_sub(b.dimension)..=k.min(a.dimension) {
                let term = match (a.betti(i), b.betti(k - i)) {
                    (Some(0), _) | (_, Some(0)) => Some(0),
                    (Some(x), Some(y)) => Some(x * y),
                    _ => None,
                };
                sum = sum.zip(term).map(|(s, t)| s + t);
            }
            sum
        })
        .collect();
    let signature = if dim.is_multiple_of(4) {
        let part = |d: &ManifoldDescriptor| {
            if d.dimension.is_multiple_of(4) {
                d.signature
            } else {
                Some(0)
            }
        };
        part(a).zip(part(b)).map(|(x, y)| x * y)
    } else {
        None
    };
    let name = match (a.dimension, b.dimension) {
        (0, _) => b.name.clone(),
        (_, 0) => a.name.clone(),
        _ => format!("{} x {}", a.name, b.name),
    };
    ManifoldDescriptor {
        name,
        dimension: dim,
        betti,
        simply_connected: a.simply_connected && b.simply_connected,
        signature,
        chirality: ChiralityStatus::unknown(),
    }
}

/// Connected sum of two manifolds of the same dimension `n ≥ 3`: middle
/// Betti numbers add. Chirality is left unknown.
pub fn connected_sum(a: &ManifoldDescriptor, b: &ManifoldDescriptor) -> Result<ManifoldDescriptor> {
    if a.dimension != b.dimension || a.dimension < 3 {
        return Err(Error::DimensionMismatch(format!(
            "connected sum of dimensions {} and {}",
            a.dimension, b.dimension
        )));
    }
    let n = a.dimension as usize;
    let betti = (0..=n)
        .map(|k| {
            if k == 0 || k == n {
                Some(1)
            } else {
                a.betti[k].zip(b.betti[k]).map(|(x, y)| x + y)
            }
        })
        .collect();
    Ok(ManifoldDescriptor {
        name: format!("{} # {}", a.name, b.name),
        dimension: a.dimension,
        betti,
        simply_connected: a.simply_connected && b.simply_connected,
        signature: a.signature.zip(b.signature).map(|(x, y)| x + y),
        chirality: ChiralityStatus::unknown(),
    })
}

/// Largest exterior power (as a binomial coefficient) whose fixed space is
/// computed for mapping-torus Betti numbers.
pub const EXTERIOR_POWER_LIMIT: usize = 256;

fn binomial(n: usize, k: usize) -> usize {
    (0..k.min(n - k)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Matrix of `Λ^k F` in the basis of increasing index subsets.
pub fn exterior_power(f: &IntMatrix, k: usize) -> Result<IntMatrix> {
    if !f.is_square() {
        return Err(Error::NotSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let idx = subsets(f.rows(), k);
    let size = idx.len();
    let mut out = IntMatrix::zeros(size, size);
    for (a, rows) in idx.iter().enumerate() {
        for (b, cols) in idx.iter().enumerate() {
            let entries = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| f.get(i, j).clone()))
                .collect();
            out.set(a, b, IntMatrix::new(k, k, entries)?.determinant()?);
        }
    }
    Ok(out)
}

/// `dim ker(Λ^k F − I)` over Q for `k = 0..=n`, `None` where the exterior
/// power exceeds `limit`. Uses `f_k = f_{n−k}` when `det F = 1`.
pub fn exterior_fixed_dimensions(f: &IntMatrix, limit: usize) -> Result<Vec<Option<u64>>> {
    let n = f.rows();
    let det_one = f.determinant()? == 1.into();
    let mut out: Vec<Option<u64>> = vec![None; n + 1];
    for k in 0..=n {
        if det_one && k > n / 2 {
            out[k] = out[n - k];
            continue;
        }
        if k == 0 {
            out[0] = Some(1);
            continue;
        }
        let size = binomial(n, k);
        if size > limit {
            continue;
        }
        let mut m = exterior_power(f, k)?;
        for i in 0..size {
            let v = m.get(i, i) - 1;
            m.set(i, i, v);
        }
        let mut rows = to_rational_rows(&m.to_rows());
        let rank = rref(&mut rows).len();
        out[k] = Some((size - rank) as u64);
    }
    Ok(out)
}
