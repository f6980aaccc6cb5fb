//! The `ncg` command line. [`run`] does all the work and returns the exit
//! code with both output streams, so the binary stays a thin wrapper and
//! tests can drive it in-process.
//!
//! Exit codes: `0` every check passed, `1` a check failed or a conversion
//! was refused (the report is still printed), `2` parse, shape or input
//! error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::climit::{convergence_report, Profile};
use crate::error::{Error, Result};
use crate::fellbundle::{check_fell_axioms, check_saturated, check_unital, BundleFile, FellBundleFD};
use crate::geometry::{categorify, fell_triple_from_category, fluctuate, CategoryFile, FluctuationTerm, SpectralCStarCategoryFD};
use crate::matops::Tolerance;
use crate::report::AxiomReport;
use crate::sptriple::{full_battery, FiniteSpectralTriple, TripleFile};

#[derive(Debug, Parser)]
#[command(name = "ncg", version, about = "Check and convert finite spectral triples, C*-categories and Fell bundles")]
struct Cli {
    /// Relative tolerance for every residual test.
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an axiom battery on a JSON object file.
    Check {
        #[command(subcommand)]
        what: CheckTarget,
    },
    /// Spectral triple → spectral C*-category.
    Categorify {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Spectral C*-category → Fell bundle triple.
    ToFell {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Replace D by Σ rⱼ Uⱼ D Uⱼ* and re-check the triple.
    Fluctuate {
        input: PathBuf,
        #[arg(long)]
        terms: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Lattice convergence of D_ħ towards −i d/dx.
    Limit {
        /// Comma-separated, strictly increasing lattice sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long, value_name = "NAME[:k]")]
        profile: Profile,
        #[arg(long, value_name = "NAME[:k]")]
        theta: Option<Profile>,
    },
}

#[derive(Debug, Subcommand)]
enum CheckTarget {
    /// Even, real and S°-real batteries plus the Poincaré dimensions.
    Triple { path: PathBuf },
    /// Fell axioms, saturation and unitality.
    Bundle { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn report_outcome(report: &AxiomReport, format: Format) -> Outcome {
    let stdout = match format {
        Format::Text => {
            let mut s = report.to_text();
            s.push_str(if report.passed() { "result: pass\n" } else { "result: fail\n" });
            s
        }
        Format::Json => to_json(report),
    };
    Outcome::ok(if report.passed() { 0 } else { 1 }, stdout)
}

fn load_triple(path: &Path) -> Result<FiniteSpectralTriple> {
    FiniteSpectralTriple::from_file(&read_json::<TripleFile>(path)?)
}

fn summary(format: Format, text: String, json: serde_json::Value) -> String {
    match format {
        Format::Text => text + "\n",
        Format::Json => to_json(&json),
    }
}

fn execute(cli: Cli) -> Result<Outcome> {
    let tol = match cli.tol {
        Some(rel) => Tolerance::with_rel(rel)?,
        None => Tolerance::default(),
    };
    let format = cli.format;
    match cli.command {
        Command::Check {
            what: CheckTarget::Triple { path },
        } => Ok(report_outcome(&full_battery(&load_triple(&path)?, tol), format)),
        Command::Check {
            what: CheckTarget::Bundle { path },
        } => {
            let b = FellBundleFD::from_file(&read_json::<BundleFile>(&path)?, tol)?;
            let mut report = check_fell_axioms(&b, tol);
            report.push(check_saturated(&b, tol));
            report.push(check_unital(&b, tol));
            Ok(report_outcome(&report, format))
        }
        Command::Categorify { input, output } => {
            let c = categorify(&load_triple(&input)?, tol)?;
            write_json(&output, &c.to_file())?;
            let perm = c.sigma().perm().images().to_vec();
            Ok(Outcome::ok(
                0,
                summary(
                    format,
                    format!("categorified: {} objects, section support {perm:?}", c.category().objects()),
                    serde_json::json!({ "objects": c.category().objects(), "support": perm }),
                ),
            ))
        }
        Command::ToFell { input, output } => {
            let c = SpectralCStarCategoryFD::from_file(&read_json::<CategoryFile>(&input)?, tol)?;
            let f = fell_triple_from_category(&c, tol)?;
            write_json(&output, &f.to_file())?;
            Ok(Outcome::ok(
                0,
                summary(
                    format,
                    format!(
                        "Fell bundle triple: {} objects, Hilbert space dimension {}",
                        f.bundle().blocks().count(),
                        f.hilbert_dim()
                    ),
                    serde_json::json!({ "objects": f.bundle().blocks().count(), "hilbert_dim": f.hilbert_dim() }),
                ),
            ))
        }
        Command::Fluctuate { input, terms, output } => {
            let mut t = load_triple(&input)?;
            let terms: Vec<FluctuationTerm> = read_json(&terms)?;
            t.dirac = fluctuate(&t.dirac, &terms)?;
            write_json(&output, &t.to_file())?;
            Ok(report_outcome(&full_battery(&t, tol), format))
        }
        Command::Limit { ns, profile, theta } => {
            let report = convergence_report(&profile, theta.as_ref(), &ns)?;
            let stdout = match format {
                Format::Text => report.to_text(),
                Format::Json => to_json(&report),
            };
            Ok(Outcome::ok(0, stdout))
        }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(0, rendered)
            };
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(outcome) => outcome,
        Err(Error::Refused { reason, report }) => {
            let stdout = match (report, format) {
                (Some(r), Format::Text) => r.to_text(),
                (Some(r), Format::Json) => to_json(&*r),
                (None, _) => String::new(),
            };
            Outcome {
                code: 1,
                stdout,
                stderr: format!("refused: {reason}\n"),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
