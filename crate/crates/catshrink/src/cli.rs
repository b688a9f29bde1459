//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for malformed input or invalid flags, 3 when
//! the analysis itself is undefined for the data (e.g. a zero margin).

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use catshrink_core::association::{regularized_association, table_association};
use catshrink_core::bootstrap::BootstrapConfig;
use catshrink_core::estimators::{self as est, BetaPrior, BinomialSample};
use catshrink_core::mutual_info::{mi_regularized, MITargetSpec};
use catshrink_core::tests::{homogeneity_regularized, mcnemar_regularized, sign_regularized};
use catshrink_core::{ContingencyTable, Error as CoreError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::input::{parse_table, parse_targets, Format, InputError};
use crate::parallel::{par_bootstrap_homogeneity, par_bootstrap_mcnemar};
use crate::report::{
    AssocDoc, BootstrapDoc, BootstrapKind, Document, EstimateDoc, Estimator, MiBase, MiDoc,
    TestDoc, TestKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Default McNemar cell target: uniform over the four cells.
pub const DEFAULT_TAU: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    /// A single JSON document.
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "catshrink",
    version,
    about = "Shrinkage estimation and regularized inference for categorical data"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    pub output: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a binomial proportion.
    Estimate(EstimateArgs),
    /// Sign, homogeneity or McNemar test with λ-regularized estimates.
    Test(TestArgs),
    /// Pearson's C, φ and Cramér's V.
    Assoc(AssocArgs),
    /// Regularized mutual information.
    Mi(MiArgs),
    /// Parametric bootstrap of a regularized test.
    Bootstrap(BootstrapArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Table file; standard input when absent or `-`.
    pub input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Auto)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub x: u64,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub prior_a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub prior_b: f64,
    #[arg(long, value_enum, default_value_t = Estimator::Beta)]
    pub estimator: Estimator,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[arg(long, value_enum)]
    pub kind: TestKind,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Shrinkage target of the sign test.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub pi0: f64,
    /// Shrinkage target of the discordant McNemar cells.
    #[arg(long, default_value_t = DEFAULT_TAU, allow_negative_numbers = true)]
    pub tau: f64,
    /// Successes (sign test only).
    #[arg(long, required_if_eq("kind", "sign"))]
    pub x: Option<u64>,
    /// Trials (sign test only).
    #[arg(long, required_if_eq("kind", "sign"))]
    pub n: Option<u64>,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct AssocArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct MiArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Delimited target table with the same shape as the input; uniform when absent.
    #[arg(long)]
    pub targets: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MiBase::Nats)]
    pub base: MiBase,
    /// Remove empty rows and columns before the computation.
    #[arg(long, conflicts_with = "targets")]
    pub drop_empty: bool,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct BootstrapArgs {
    #[arg(long, value_enum)]
    pub kind: BootstrapKind,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = DEFAULT_TAU, allow_negative_numbers = true)]
    pub tau: f64,
    #[arg(long, default_value_t = catshrink_core::bootstrap::DEFAULT_REPLICATES)]
    pub replicates: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = catshrink_core::bootstrap::DEFAULT_ALPHA, allow_negative_numbers = true)]
    pub alpha: f64,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{source_name}: {error}")]
    Input {
        source_name: String,
        error: InputError,
    },
    #[error("invalid value for {flag}: {message}")]
    Flag { flag: &'static str, message: String },
    #[error("cannot read {path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error("{0}")]
    Domain(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            _ => EXIT_INVALID,
        }
    }
}

fn flag_error(flag: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Flag {
        flag,
        message: e.to_string(),
    }
}

fn check_unit(flag: &'static str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(flag_error(flag, format!("{v} is outside [0, 1]")))
    }
}

/// λ for a scaled test statistic: (0, 1].
fn check_test_lambda(v: f64) -> Result<f64, CliError> {
    let v = check_unit("--lambda", v)?;
    if v == 0.0 {
        return Err(flag_error(
            "--lambda",
            "must be positive for a scaled statistic",
        ));
    }
    Ok(v)
}

struct Source<'a> {
    stdin: &'a mut dyn Read,
}

impl Source<'_> {
    fn read_table(&mut self, args: &InputArgs) -> Result<ContingencyTable, CliError> {
        let (name, text) = match &args.input {
            Some(p) if p.as_os_str() != "-" => {
                let text = std::fs::read_to_string(p).map_err(|error| CliError::Io {
                    path: p.display().to_string(),
                    error,
                })?;
                (p.display().to_string(), text)
            }
            _ => {
                let mut text = String::new();
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|error| CliError::Io {
                        path: "<stdin>".into(),
                        error,
                    })?;
                ("<stdin>".to_string(), text)
            }
        };
        parse_table(&text, args.format).map_err(|error| CliError::Input {
            source_name: name,
            error,
        })
    }
}

fn estimate(args: &EstimateArgs) -> Result<Document, CliError> {
    let sample = BinomialSample::new(args.x, args.n).map_err(|e| flag_error("--x", e))?;
    let prior = match args.estimator {
        Estimator::Bl => BetaPrior::uniform(),
        Estimator::Jeffreys => BetaPrior::jeffreys(),
        _ => BetaPrior::new(args.prior_a, args.prior_b).map_err(|e| match e {
            CoreError::InvalidParameter { name: "a", .. } => flag_error("--prior-a", e),
            e => flag_error("--prior-b", e),
        })?,
    };
    let shrinkage = |p: BetaPrior| est::decompose_shrinkage(p, args.n).ok();
    let (estimate, config, mode_kind) = match args.estimator {
        Estimator::Mle => (est::mle(sample).map_err(CliError::Domain)?, None, None),
        Estimator::Beta => (
            est::posterior_mean_beta(prior, sample),
            shrinkage(prior),
            None,
        ),
        Estimator::Bl => (est::bayes_laplace(sample), shrinkage(prior), None),
        Estimator::Jeffreys => (est::jeffreys(sample), shrinkage(prior), None),
        Estimator::Map => {
            let m = est::map_estimate(prior, sample);
            (m.value, None, Some(m.kind))
        }
    };
    let (lambda, target) = match (args.estimator, config) {
        (Estimator::Mle, _) => (Some(1.0), None),
        (_, Some(c)) => (Some(c.lambda()), Some(c.target())),
        (_, None) => (None, None),
    };
    Ok(Document::Estimate(EstimateDoc {
        estimator: args.estimator,
        x: args.x,
        n: args.n,
        prior_a: prior.a(),
        prior_b: prior.b(),
        estimate,
        lambda,
        target,
        mode_kind,
        prior_advisory: args.estimator != Estimator::Mle && prior.advisory().is_some(),
    }))
}

fn test(args: &TestArgs, src: &mut Source<'_>) -> Result<Document, CliError> {
    let lambda = check_test_lambda(args.lambda)?;
    let doc = match args.kind {
        TestKind::Sign => {
            let (x, n) = (args.x.unwrap_or_default(), args.n.unwrap_or_default());
            let pi0 = check_unit("--pi0", args.pi0)?;
            let sample = BinomialSample::new(x, n).map_err(|e| flag_error("--x", e))?;
            let report = sign_regularized(sample, lambda, pi0).map_err(CliError::Domain)?;
            TestDoc {
                kind: args.kind,
                counts: None,
                x: Some(x),
                n: Some(n),
                pi0: Some(pi0),
                tau: None,
                report,
            }
        }
        TestKind::Homogeneity => {
            let table = src.read_table(&args.input)?;
            let report = homogeneity_regularized(&table, lambda).map_err(CliError::Domain)?;
            TestDoc {
                kind: args.kind,
                counts: Some(table.to_rows()),
                x: None,
                n: None,
                pi0: None,
                tau: None,
                report,
            }
        }
        TestKind::Mcnemar => {
            let tau = check_unit("--tau", args.tau)?;
            let table = src.read_table(&args.input)?;
            let report = mcnemar_regularized(&table, lambda, tau).map_err(CliError::Domain)?;
            TestDoc {
                kind: args.kind,
                counts: Some(table.to_rows()),
                x: None,
                n: None,
                pi0: None,
                tau: Some(tau),
                report,
            }
        }
    };
    Ok(Document::Test(doc))
}

fn assoc(args: &AssocArgs, src: &mut Source<'_>) -> Result<Document, CliError> {
    let lambda = check_test_lambda(args.lambda)?;
    let table = src.read_table(&args.input)?;
    let report = if table.is_two_by_two() {
        regularized_association(&table, lambda)
    } else if lambda == 1.0 {
        table_association(&table)
    } else {
        return Err(flag_error(
            "--lambda",
            "regularized measures are defined for 2x2 tables only",
        ));
    }
    .map_err(CliError::Domain)?;
    Ok(Document::Assoc(AssocDoc {
        counts: table.to_rows(),
        report,
    }))
}

fn mi(args: &MiArgs, src: &mut Source<'_>) -> Result<Document, CliError> {
    let lambda = check_unit("--lambda", args.lambda)?;
    let mut table = src.read_table(&args.input)?;
    if args.drop_empty {
        table = table.drop_empty_margins().map_err(CliError::Domain)?;
    }
    let (targets, label) = match &args.targets {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|error| CliError::Io {
                path: path.display().to_string(),
                error,
            })?;
            let spec = parse_targets(&text, table.shape()).map_err(|error| CliError::Input {
                source_name: path.display().to_string(),
                error,
            })?;
            (spec, path.display().to_string())
        }
        None => {
            let (r, c) = table.shape();
            (
                MITargetSpec::uniform(r, c).map_err(CliError::Domain)?,
                "uniform".to_string(),
            )
        }
    };
    let result = mi_regularized(&table, lambda, &targets).map_err(CliError::Domain)?;
    let value = match args.base {
        MiBase::Nats => result.value,
        MiBase::Bits => result.bits(),
    };
    Ok(Document::Mi(MiDoc {
        counts: table.to_rows(),
        lambda: result.lambda,
        value_nats: result.value,
        value_bits: result.bits(),
        base: args.base,
        value,
        cells_elided: result.cells_elided,
        targets: label,
    }))
}

fn bootstrap(args: &BootstrapArgs, src: &mut Source<'_>) -> Result<Document, CliError> {
    let lambda = check_test_lambda(args.lambda)?;
    let cfg =
        BootstrapConfig::new(args.replicates, args.seed, args.alpha).map_err(|e| match e {
            CoreError::InsufficientReplicates { .. } => flag_error("--replicates", e),
            e => flag_error("--alpha", e),
        })?;
    let table = src.read_table(&args.input)?;
    let (report, tau) = match args.kind {
        BootstrapKind::Homogeneity => (par_bootstrap_homogeneity(&table, lambda, &cfg), None),
        BootstrapKind::Mcnemar => {
            let tau = check_unit("--tau", args.tau)?;
            (par_bootstrap_mcnemar(&table, lambda, tau, &cfg), Some(tau))
        }
    };
    Ok(Document::Bootstrap(BootstrapDoc {
        kind: args.kind,
        counts: table.to_rows(),
        tau,
        report: report.map_err(CliError::Domain)?,
    }))
}

/// Executes a parsed command.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Document, CliError> {
    let mut src = Source { stdin };
    match &cli.command {
        Command::Estimate(a) => estimate(a),
        Command::Test(a) => test(a, &mut src),
        Command::Assoc(a) => assoc(a, &mut src),
        Command::Mi(a) => mi(a, &mut src),
        Command::Bootstrap(a) => bootstrap(a, &mut src),
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `stdout` or a diagnostic to `stderr`. Returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(doc) => {
            let text = match cli.output {
                OutputFormat::Human => doc.to_human(),
                OutputFormat::Structured => doc.to_json() + "\n",
            };
            match stdout.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(_) => EXIT_INVALID,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
