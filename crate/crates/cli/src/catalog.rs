//! Append-only catalog of certificates, one JSON line per record.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chirality_core::{Certificate, CertificateKind, Verdict};

pub const DEFAULT_PATH: &str = "chirality-catalog.jsonl";
pub const ENV_VAR: &str = "CHIRALITY_CATALOG";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filter {
    pub kind: Option<CertificateKind>,
    pub dimension: Option<u64>,
    pub verdict: Option<Verdict>,
}

impl Filter {
    pub fn matches(&self, c: &Certificate) -> bool {
        self.kind.is_none_or(|k| c.kind == k)
            && self.dimension.is_none_or(|d| c.dimension == Some(d))
            && self.verdict.is_none_or(|v| c.verdict == v)
    }
}

#[derive(Debug, Default)]
pub struct Query {
    pub records: Vec<Certificate>,
    /// One message per skipped line.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    path: PathBuf,
}

impl Catalog {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    /// The explicit path if given, else `./chirality-catalog.jsonl`. The
    /// environment variable is read by the argument parser.
    pub fn resolve(explicit: Option<PathBuf>) -> Self {
        Self::new(explicit.unwrap_or_else(|| PathBuf::from(DEFAULT_PATH)))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends under an exclusive advisory lock.
    pub fn append(&self, certs: &[Certificate]) -> io::Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        file.lock()?;
        let mut buf = String::new();
        for c in certs {
            buf.push_str(&c.to_json_line());
            buf.push('\n');
        }
        let res = file.write_all(buf.as_bytes()).and_then(|_| file.flush());
        file.unlock()?;
        res
    }

    /// Records passing the filter, first occurrence of each determinism hash
    /// only. Unparseable lines and records whose hash does not verify are
    /// skipped with a warning. A missing file is an empty catalog.
    pub fn query(&self, filter: &Filter) -> io::Result<Query> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Query::default()),
            Err(e) => return Err(e),
        };
        file.lock_shared()?;
        let mut out = Query::default();
        let mut seen = BTreeSet::new();
        for (i, line) in BufReader::new(&file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let cert = match Certificate::from_json(&line) {
                Ok(c) => c,
                Err(e) => {
                    out.warnings.push(format!(
                        "{}:{}: skipped corrupt record: {e}",
                        self.path.display(),
                        i + 1
                    ));
                    continue;
                }
            };
            if !cert.hash_is_valid() {
                out.warnings.push(format!(
                    "{}:{}: skipped record with invalid hash",
                    self.path.display(),
                    i + 1
                ));
                continue;
            }
            if seen.insert(cert.determinism_hash.clone()) && filter.matches(&cert) {
                out.records.push(cert);
            }
        }
        file.unlock()?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chirality_core::Check;

    fn cert(kind: CertificateKind, dim: u64) -> Certificate {
        Certificate::builder(kind, format!("claim {dim}"))
            .dimension(dim)
            .check(Check::new("c", Verdict::Pass, serde_json::Value::Null))
            .finish()
    }

    #[test]
    fn missing_file_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let q = Catalog::new(dir.path().join("none.jsonl"))
            .query(&Filter::default())
            .unwrap();
        assert!(q.records.is_empty() && q.warnings.is_empty());
    }

    #[test]
    fn filter_by_dimension_and_verdict() {
        let dir = tempfile::tempdir().unwrap();
        let cat = Catalog::new(dir.path().join("c.jsonl"));
        cat.append(&[
            cert(CertificateKind::Obstruction, 7),
            cert(CertificateKind::Obstruction, 11),
        ])
        .unwrap();
        let f = Filter {
            dimension: Some(11),
            ..Filter::default()
        };
        assert_eq!(cat.query(&f).unwrap().records.len(), 1);
        let f = Filter {
            verdict: Some(Verdict::Fail),
            ..Filter::default()
        };
        assert!(cat.query(&f).unwrap().records.is_empty());
    }
}
