//! The `chirality` command line: every subcommand prints one canonical JSON
//! certificate per line on stdout and a short summary per certificate on
//! stderr.
//!
//! Exit codes: 0 when every claim is certified, 1 when a claim is refuted or
//! an obstruction is absent, 2 when a check is inconclusive or the input is
//! invalid. Input errors print a JSON object with an `error` key instead of a
//! certificate.

pub mod catalog;

use std::ffi::OsString;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context};
use chirality_core::dga::{
    admissibility_certificate, minimal_model, minimal_model_with_x, parse_algebra,
};
use chirality_core::dga::{verify_dim13, verify_dim9, Dim13Options, Dim9Options, GcAlgebra};
use chirality_core::groups::{h4_certificate, search_tuples, MetacyclicTuple};
use chirality_core::lens::{
    chirality_certificate, construct_minimal_order, degrees_certificate, linking_obstruction,
    LensSpace,
};
use chirality_core::products::{
    signature_obstruction, ChiralityStatus, ManifoldDescriptor, PlanOptions, Planner,
};
use chirality_core::torus::certify_mapping_torus;
use chirality_core::{Certificate, CertificateKind, IntMatrix, Verdict};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use catalog::{Catalog, Filter};

#[derive(Debug, Parser)]
#[command(
    name = "chirality",
    version,
    about = "Certificates for orientation-reversal obstructions"
)]
pub struct Cli {
    /// Catalog file for `catalog` commands and `--record`.
    #[arg(long, global = true, env = catalog::ENV_VAR)]
    pub catalog: Option<PathBuf>,
    /// Also append every emitted certificate to the catalog.
    #[arg(long, global = true)]
    pub record: bool,
    /// Leave the timestamp field empty.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mapping tori of torus automorphisms.
    #[command(subcommand)]
    Torus(TorusCommand),
    /// Lens space degree arithmetic.
    #[command(subcommand)]
    Lens(LensCommand),
    /// The minimal-model obstructions in dimensions 9 and 13.
    #[command(subcommand)]
    Dga(DgaCommand),
    /// A strongly chiral construction in a given dimension.
    Plan(PlanArgs),
    /// Torsion predicates for products of metacyclic groups.
    #[command(subcommand)]
    Groups(GroupsCommand),
    /// The persistent certificate catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Single obstructions.
    #[command(subcommand)]
    Obstruction(ObstructionCommand),
}

#[derive(Debug, Subcommand)]
pub enum TorusCommand {
    /// Certify the mapping torus of the rank-n family matrix.
    Certify {
        #[arg(long)]
        n: usize,
        /// Entry bound of the brute-force falsifier; defaults to 10 for
        /// n = 2, 3 for n = 4 and 0 otherwise.
        #[arg(long)]
        brute_bound: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct LensArgs {
    #[arg(long)]
    pub t: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u64>,
}

#[derive(Debug, Subcommand)]
pub enum LensCommand {
    /// All self-map degrees mod t.
    Degrees(LensArgs),
    /// Decide whether some self-map has degree −1.
    Chirality(LensArgs),
    /// Lens space whose orientation reversals all have order divisible by 2^k.
    MinOrder {
        #[arg(long)]
        k: u32,
        /// Largest prime candidate examined.
        #[arg(long, default_value_t = 1 << 40)]
        limit: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum DgaCommand {
    VerifyDim9 {
        /// Algebra in the text format; defaults to the built-in model.
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        sweep_bound: i64,
    },
    VerifyDim13 {
        #[arg(long, default_value_t = 3)]
        star_bound: i64,
    },
    /// Whether a matrix on H^2 (rows separated by ';') is realized.
    Admissible {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub dim: u64,
    #[arg(long)]
    pub simply_connected: bool,
    /// Plan every dimension from --dim to this one.
    #[arg(long)]
    pub max_dim: Option<u64>,
    #[arg(long, default_value_t = PlanOptions::default().dim13_star_bound)]
    pub star_bound: i64,
    #[arg(long, default_value_t = PlanOptions::default().dim9_sweep_bound)]
    pub sweep_bound: i64,
    #[arg(long)]
    pub no_bordism_note: bool,
}

#[derive(Debug, Subcommand)]
pub enum GroupsCommand {
    /// The torsion condition for one tuple of odd primes.
    H4 {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Qualifying tuples of smallest, pairwise distinct group order.
    H4Search {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    List {
        #[arg(long)]
        kind: Option<CertificateKind>,
        #[arg(long)]
        dimension: Option<u64>,
        #[arg(long)]
        verdict: Option<Verdict>,
    },
    /// Append certificates read as JSON lines from a file or stdin.
    Add {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ObstructionCommand {
    /// Linking form on H = Z/t in a dimension 3 mod 4.
    Linking {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        dim: u64,
    },
    /// Nonzero signature in a dimension 0 mod 4.
    Signature {
        #[arg(long)]
        dim: u64,
        #[arg(long, allow_negative_numbers = true)]
        signature: i64,
    },
}

/// Exit code for a verdict.
pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail | Verdict::NoObstruction => 1,
        Verdict::Inconclusive => 2,
    }
}

/// Runs with the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = io::stdin();
    run_with(
        args,
        &mut stdin.lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}

pub fn run_with<I, T>(
    args: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, input, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(
                out,
                "{}",
                json!({ "error": { "type": "input", "message": format!("{e:#}") } })
            );
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn execute(
    cli: &Cli,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    let certs = match &cli.command {
        Command::Catalog(cmd) => return catalog_command(cli, cmd, input, out, err),
        Command::Torus(TorusCommand::Certify { n, brute_bound }) => {
            let bound = brute_bound.unwrap_or(match n {
                2 => 10,
                4 => 3,
                _ => 0,
            });
            vec![certify_mapping_torus(*n, bound)?.to_certificate()]
        }
        Command::Lens(cmd) => vec![lens_command(cmd)?],
        Command::Dga(cmd) => vec![dga_command(cmd)?],
        Command::Plan(args) => plan_command(args)?,
        Command::Groups(GroupsCommand::H4 { primes }) => {
            vec![h4_certificate(&MetacyclicTuple::new(primes)?)]
        }
        Command::Groups(GroupsCommand::H4Search { count, bound }) => {
            vec![search_tuples(*count, *bound)?.to_certificate()]
        }
        Command::Obstruction(ObstructionCommand::Linking { t, dim }) => {
            vec![linking_obstruction(*t, *dim)?.to_certificate()]
        }
        Command::Obstruction(ObstructionCommand::Signature { dim, signature }) => {
            let betti = (0..=*dim).map(|_| None).collect();
            let d = ManifoldDescriptor::axiomatic(
                format!("X^{dim}"),
                betti,
                false,
                Some(*signature),
                ChiralityStatus::unknown(),
            )?;
            vec![signature_obstruction(&d)?.to_certificate()]
        }
    };
    emit(cli, &certs, out, err)
}

fn emit(
    cli: &Cli,
    certs: &[Certificate],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    let stamp = if cli.no_timestamp {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        )
    };
    let stamped: Vec<Certificate> = certs
        .iter()
        .map(|c| stamp.map_or_else(|| c.clone(), |s| c.clone().with_timestamp(s)))
        .collect();
    for c in &stamped {
        writeln!(out, "{}", c.to_json_line())?;
        writeln!(err, "{} {}: {}", c.verdict, c.kind, c.claim)?;
    }
    if cli.record {
        let cat = Catalog::resolve(cli.catalog.clone());
        cat.append(&stamped)
            .with_context(|| format!("appending to {}", cat.path().display()))?;
    }
    let worst = certs
        .iter()
        .fold(Verdict::Pass, |acc, c| acc.combine(c.verdict));
    Ok(exit_code(worst))
}

fn lens_command(cmd: &LensCommand) -> anyhow::Result<Certificate> {
    Ok(match cmd {
        LensCommand::Degrees(a) => degrees_certificate(&LensSpace::new(a.t, &a.q)?),
        LensCommand::Chirality(a) => chirality_certificate(&LensSpace::new(a.t, &a.q)?)?,
        LensCommand::MinOrder { k, limit } => construct_minimal_order(*k, *limit)?.to_certificate(),
    })
}

fn load_algebra(path: Option<&PathBuf>, default: fn() -> GcAlgebra) -> anyhow::Result<GcAlgebra> {
    match path {
        None => Ok(default()),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(parse_algebra(&text).with_context(|| format!("parsing {}", p.display()))?)
        }
    }
}

/// Parses `"1,0,0;0,-1,0;0,0,1"`.
pub fn parse_matrix(s: &str) -> anyhow::Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .with_context(|| format!("bad entry '{x}'"))
                })
                .collect()
        })
        .collect::<anyhow::Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        bail!("matrix rows must be non-empty and of equal length");
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn dga_command(cmd: &DgaCommand) -> anyhow::Result<Certificate> {
    Ok(match cmd {
        DgaCommand::VerifyDim9 {
            algebra,
            sweep_bound,
        } => {
            let alg = load_algebra(algebra.as_ref(), minimal_model)?;
            verify_dim9(
                &alg,
                Dim9Options {
                    sweep_bound: *sweep_bound,
                },
            )?
            .to_certificate(&alg)
        }
        DgaCommand::VerifyDim13 { star_bound } => verify_dim13(Dim13Options {
            star_bound: *star_bound,
        })?
        .to_certificate(),
        DgaCommand::Admissible { matrix, algebra } => {
            let m = parse_matrix(matrix)?;
            let default = if m.rows() == 4 {
                minimal_model_with_x
            } else {
                minimal_model
            };
            let alg = load_algebra(algebra.as_ref(), default)?;
            admissibility_certificate(&alg, &m)?
        }
    })
}

fn plan_command(args: &PlanArgs) -> anyhow::Result<Vec<Certificate>> {
    let last = args.max_dim.unwrap_or(args.dim);
    if last < args.dim {
        bail!("--max-dim {last} is below --dim {}", args.dim);
    }
    let planner = Planner::new(PlanOptions {
        dim9_sweep_bound: args.sweep_bound,
        dim13_star_bound: args.star_bound,
        bordism_note: !args.no_bordism_note,
        ..PlanOptions::default()
    });
    (args.dim..=last)
        .into_par_iter()
        .map(|n| Ok(planner.plan(n, args.simply_connected)?.to_certificate()))
        .collect()
}

fn catalog_command(
    cli: &Cli,
    cmd: &CatalogCommand,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    let cat = Catalog::resolve(cli.catalog.clone());
    match cmd {
        CatalogCommand::List {
            kind,
            dimension,
            verdict,
        } => {
            let q = cat
                .query(&Filter {
                    kind: *kind,
                    dimension: *dimension,
                    verdict: *verdict,
                })
                .with_context(|| format!("reading {}", cat.path().display()))?;
            for w in &q.warnings {
                writeln!(err, "warning: {w}")?;
            }
            for c in &q.records {
                writeln!(out, "{}", c.to_json_line())?;
            }
            writeln!(
                err,
                "{} record(s) in {}",
                q.records.len(),
                cat.path().display()
            )?;
            Ok(0)
        }
        CatalogCommand::Add { file } => {
            let mut text = String::new();
            match file {
                Some(p) => {
                    BufReader::new(
                        std::fs::File::open(p)
                            .with_context(|| format!("opening {}", p.display()))?,
                    )
                    .read_to_string(&mut text)?;
                }
                None => {
                    input.read_to_string(&mut text)?;
                }
            }
            let mut certs = Vec::new();
            let mut rejected = 0;
            for (i, line) in text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
            {
                match Certificate::from_json(line) {
                    Ok(c) if c.hash_is_valid() => certs.push(c),
                    Ok(_) => {
                        rejected += 1;
                        writeln!(
                            err,
                            "warning: line {}: determinism hash does not match",
                            i + 1
                        )?;
                    }
                    Err(e) => {
                        rejected += 1;
                        writeln!(err, "warning: line {}: {e}", i + 1)?;
                    }
                }
            }
            cat.append(&certs)
                .with_context(|| format!("appending to {}", cat.path().display()))?;
            writeln!(
                err,
                "added {} record(s) to {}",
                certs.len(),
                cat.path().display()
            )?;
            Ok(if certs.is_empty() && rejected > 0 {
                2
            } else {
                0
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_parsing() {
        assert_eq!(
            parse_matrix("1,0;0,-1").unwrap(),
            IntMatrix::from_rows(&[[1, 0], [0, -1]])
        );
        assert!(parse_matrix("1,0;0").is_err());
        assert!(parse_matrix("a").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(Verdict::Pass), 0);
        assert_eq!(exit_code(Verdict::NoObstruction), 1);
        assert_eq!(exit_code(Verdict::Inconclusive), 2);
    }
}
