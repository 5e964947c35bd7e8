//! Command-line definitions and the two commands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infoclust_core::entropy::SourceKind;
use infoclust_core::psp::{StopRule, DEFAULT_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::generate::random_bits;
use crate::report::Report;
use crate::validate::{check_source, summarize};
use crate::{parallel, source};

#[derive(Debug, Parser)]
#[command(name = "infoclust", version, about = "Hierarchical clustering of random variables by multivariate mutual information")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the full cluster hierarchy of a source.
    Cluster(ClusterArgs),
    /// Compare the fast hierarchy against brute-force enumeration (at most 8 variables).
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// JSON source file.
    pub input: PathBuf,
    /// Treat the input as this kind of source, overriding its `kind` field.
    #[arg(long, value_parser = source::parse_kind)]
    pub kind: Option<SourceKind>,
    /// Numerical tolerance for the minimum norm point algorithm and merge decisions.
    #[arg(long, env = "INFOCLUST_TOL", default_value_t = DEFAULT_TOL, value_parser = positive)]
    pub tol: f64,
    /// Stop once the partition has at most this many blocks.
    #[arg(long, value_name = "K")]
    pub stop_size: Option<usize>,
    /// Stop after the first critical value at or below this threshold.
    #[arg(long, value_name = "G", allow_negative_numbers = true)]
    pub stop_gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads per level; 0 uses every available core.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// JSON source file; omit with --random.
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    pub input: Option<PathBuf>,
    #[arg(long, value_parser = source::parse_kind)]
    pub kind: Option<SourceKind>,
    /// Validate seeded random bit sources instead of a file.
    #[arg(long)]
    pub random: bool,
    /// Variables per random source.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(2..=8))]
    pub n: u8,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random sources.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, env = "INFOCLUST_TOL", default_value_t = DEFAULT_TOL, value_parser = positive)]
    pub tol: f64,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("tolerance must be a positive number".into())
    }
}

/// Everything a run needs, independent of how it was requested.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub kind: Option<SourceKind>,
    pub tol: f64,
    pub stop: StopRule,
    pub format: Format,
    pub threads: usize,
    /// `(seed, variables, count)` for random validation batches.
    pub random: Option<(u64, usize, usize)>,
}

impl From<&ClusterArgs> for RunConfig {
    fn from(a: &ClusterArgs) -> Self {
        RunConfig {
            input: Some(a.input.clone()),
            kind: a.kind,
            tol: a.tol,
            stop: StopRule { max_blocks: a.stop_size, gamma_floor: a.stop_gamma },
            format: a.format,
            threads: a.threads,
            random: None,
        }
    }
}

impl From<&ValidateArgs> for RunConfig {
    fn from(a: &ValidateArgs) -> Self {
        RunConfig {
            input: a.input.clone(),
            kind: a.kind,
            tol: a.tol,
            stop: StopRule::default(),
            format: Format::Json,
            threads: 1,
            random: a.random.then_some((a.seed, a.n as usize, a.count)),
        }
    }
}

/// Runs a parsed command line, writing the report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Cluster(a) => run_cluster(&RunConfig::from(a), out),
        Command::Validate(a) => run_validate(&RunConfig::from(a), out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "infoclust: {e}");
            e.exit_code()
        }
    }
}

pub fn run_cluster(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let path = config.input.as_ref().ok_or_else(|| CliError::Schema("no input file".into()))?;
    let h = source::read(path, config.kind)?.build(config.tol)?;
    let threads = match config.threads {
        0 => std::thread::available_parallelism().map_or(1, usize::from),
        t => t,
    };
    let (psp, error) = match parallel::agglomerate(&h, config.tol, config.stop, threads) {
        Ok(psp) => (psp, None),
        Err(interrupted) => (interrupted.partial, Some(interrupted.error)),
    };
    // bad input yields no report; anything else keeps the levels reached so far
    if let Some(e @ (infoclust_core::Error::Domain(_) | infoclust_core::Error::Unsupported(_))) = error {
        return Err(e.into());
    }
    let report = Report::new(&psp, h.kind(), error.as_ref());
    let rendered = match config.format {
        Format::Json => report.to_json(),
        Format::Dot => report.to_dot(),
        Format::Text => report.to_text(),
    };
    out.write_all(rendered.as_bytes())?;
    match error {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

pub fn run_validate(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let mut checks = Vec::new();
    let instances = match (config.random, &config.input) {
        (Some((seed, n, count)), _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..count {
                let h = random_bits(&mut rng, n, n + 2)?;
                checks.extend(check_source(&h, config.tol, &format!("random #{} (seed {seed})", i + 1))?);
            }
            count
        }
        (None, Some(path)) => {
            let h = source::read(path, config.kind)?.build(config.tol)?;
            checks.extend(check_source(&h, config.tol, &path.display().to_string())?);
            1
        }
        (None, None) => return Err(CliError::Schema("validate needs an input file or --random".into())),
    };
    let report = summarize(checks, instances);
    out.write_all(report.to_json().as_bytes())?;
    if report.all_agree {
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.agree).count();
        Err(CliError::Disagreement(format!("{failed} of {} checks disagree", report.checks.len())))
    }
}
