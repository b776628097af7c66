//! Subcommands and exit codes.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use arquiver_core::meshhom::{hom_matrix, oracle_hom_matrix};
use arquiver_core::{
    cluster_quiver, is_isomorphic, search_quotients, verify_theorem_a, verify_theorem_d,
    verify_theorem_e, ClusterRef, ECase, Error, Family, TranslationQuiver, VerificationReport,
};
use clap::{Parser, Subcommand, ValueEnum};

use crate::document::QuiverDocument;
use crate::render::{self, HomDocument, ReportDocument, WitnessDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "arquiver",
    version,
    about = "AR quivers of higher cluster categories and their quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum QuiverFormat {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the AR quiver of a u-cluster category
    Cluster {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: QuiverFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Delete a τ-stable set of rows or τ-orbits
    Delete {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "orbits",
            required_unless_present = "orbits"
        )]
        rows: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        orbits: Vec<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: QuiverFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test two quivers for isomorphism
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Hom-dimension matrix
    Hom {
        #[arg(long = "in")]
        input: PathBuf,
        /// Use the path-space oracle instead of the covering
        #[arg(long)]
        oracle: bool,
    },
    /// Check a quotient theorem instance
    Verify {
        /// A, D, E7_from_E8, E6_from_E8 or E6_from_E7
        case: String,
        #[arg(long)]
        u: u32,
        #[arg(long)]
        v: u32,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Also compare Hom dimensions through the oracle
        #[arg(long)]
        hom: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Search all τ-orbit deletions from one cluster quiver onto another
    Search {
        /// FAMILY,RANK,LEVEL
        #[arg(long, value_parser = parse_cluster_ref)]
        source: ClusterRef,
        /// FAMILY,RANK,LEVEL
        #[arg(long, value_parser = parse_cluster_ref)]
        target: ClusterRef,
    },
}

fn parse_cluster_ref(s: &str) -> Result<ClusterRef, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [family, rank, level] = parts[..] else {
        return Err(format!("expected FAMILY,RANK,LEVEL, got {s:?}"));
    };
    let family: Family = family.parse().map_err(|e: Error| e.to_string())?;
    let rank = rank
        .parse()
        .map_err(|e| format!("bad rank {rank:?}: {e}"))?;
    let level = level
        .parse()
        .map_err(|e| format!("bad level {level:?}: {e}"))?;
    Ok(ClusterRef::new(family, rank, level))
}

/// Errors tagged with the exit code they map to.
enum Failure {
    Usage(anyhow::Error),
    Check(anyhow::Error),
}

impl Failure {
    /// Engine errors caused by the request itself are usage errors; the rest
    /// are failed checks.
    fn from_engine(e: Error) -> Failure {
        match e {
            Error::InvalidRank { .. }
            | Error::InvalidLevel(_)
            | Error::RankTooSmall { .. }
            | Error::UnknownVertex(_)
            | Error::NotRightward { .. } => Failure::Usage(e.into()),
            _ => Failure::Check(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Runs one command. Output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_CHECK_FAILED
            }
        },
        Err(Failure::Usage(e)) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_USAGE
        }
        Err(Failure::Check(e)) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_CHECK_FAILED
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Cluster {
            family,
            rank,
            level,
            format,
            out,
        } => {
            let (q, _) = cluster_quiver(family, rank, level).map_err(Failure::from_engine)?;
            emit_quiver(&q, format, out.as_deref())
        }
        Command::Delete {
            input,
            rows,
            orbits,
            format,
            out,
        } => {
            let q = load(&input)?;
            let deleted: BTreeSet<usize> = if orbits.is_empty() {
                q.vertices_in_rows(&rows.into_iter().collect())
            } else {
                let all = q.tau_orbits();
                let mut set = BTreeSet::new();
                for o in orbits {
                    let orbit = all
                        .get(o)
                        .ok_or_else(|| anyhow!("no tau-orbit {o}; the quiver has {}", all.len()))?;
                    set.extend(orbit.iter().copied());
                }
                set
            };
            let deletion = q
                .delete_tau_stable(&deleted)
                .map_err(Failure::from_engine)?;
            emit_quiver(&deletion.quiver, format, out.as_deref())
        }
        Command::Iso { a, b } => {
            let (qa, qb) = (load(&a)?, load(&b)?);
            match is_isomorphic(&qa, &qb) {
                Some(w) => Ok((
                    render::to_json(&serde_json::json!({ "isomorphic": true, "witness": w })),
                    EXIT_OK,
                )),
                None => Ok((
                    render::to_json(&serde_json::json!({ "isomorphic": false, "witness": null })),
                    EXIT_CHECK_FAILED,
                )),
            }
        }
        Command::Hom { input, oracle } => {
            let q = load(&input)?;
            let m = if oracle {
                oracle_hom_matrix(&q, &BTreeSet::new())
            } else {
                hom_matrix(&q)
            }
            .map_err(Failure::from_engine)?;
            Ok((render::to_json(&HomDocument::new(&q, &m)), EXIT_OK))
        }
        Command::Verify {
            case,
            u,
            v,
            m,
            n,
            hom,
            format,
        } => {
            let report = verify(&case, u, v, m, n, hom)?;
            let code = if report.is_isomorphic() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            };
            let text = match format {
                ReportFormat::Json => render::to_json(&ReportDocument::from(&report)),
                ReportFormat::Text => report.to_string(),
            };
            Ok((text, code))
        }
        Command::Search { source, target } => {
            let found = search_quotients(source, target).map_err(Failure::from_engine)?;
            let docs: Vec<WitnessDocument> = found.iter().map(WitnessDocument::from).collect();
            let code = if found.is_empty() {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            };
            Ok((render::to_json(&docs), code))
        }
    }
}

fn verify(
    case: &str,
    u: u32,
    v: u32,
    m: Option<u32>,
    n: Option<u32>,
    hom: bool,
) -> Result<VerificationReport, Failure> {
    let ranks = || -> anyhow::Result<(u32, u32)> {
        match (m, n) {
            (Some(m), Some(n)) => Ok((m, n)),
            _ => bail!("case {case} needs --m and --n"),
        }
    };
    let result = match case {
        "A" | "a" => {
            let (m, n) = ranks()?;
            verify_theorem_a(u, v, m, n, hom)
        }
        "D" | "d" => {
            let (m, n) = ranks()?;
            verify_theorem_d(u, v, m, n, hom)
        }
        other => {
            let case: ECase = other.parse().map_err(|_| {
                anyhow!(
                    "unknown case {other:?}; expected A, D, E7_from_E8, E6_from_E8 or E6_from_E7"
                )
            })?;
            verify_theorem_e(case, u, v, hom)
        }
    };
    result.map_err(Failure::from_engine)
}

fn load(path: &Path) -> Result<TranslationQuiver, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)?;
    QuiverDocument::from_json(&text)
        .and_then(|d| d.to_quiver())
        .with_context(|| format!("loading {}", path.display()))
        .map_err(Failure::Usage)
}

fn emit_quiver(q: &TranslationQuiver, format: QuiverFormat, out: Option<&Path>) -> Outcome {
    let text = match format {
        QuiverFormat::Json => QuiverDocument::from_quiver(q).to_json(),
        QuiverFormat::Dot => render::dot(q),
        QuiverFormat::Text => render::text(q),
    };
    match out {
        Some(path) => {
            fs::write(path, text)
                .with_context(|| format!("writing {}", path.display()))
                .map_err(Failure::Check)?;
            Ok((String::new(), EXIT_OK))
        }
        None => Ok((text, EXIT_OK)),
    }
}
