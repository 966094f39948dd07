//! Command-line front end for `rank2lift`: family files in, seeded JSON
//! reports out.
//!
//! Exit codes: 0 for a pass, 1 for a certified failure, 2 for usage or data
//! errors. Check reports are written in every case.

pub mod commands;
pub mod format;
pub mod report;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rank2lift::angular::DEFAULT_CLUSTER_WIDTH;
use rank2lift::geometry::Tolerance;
use rank2lift::retrieval::SearchOptions;

use commands::{CheckKind, Context, GenerateKind};
use format::AnyFamily;
use report::{Budget, ReportFile};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed family file: {0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] rank2lift::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "rank2lift",
    version,
    about = "Phase retrieval, frame and angle checks via rank-2 lifts"
)]
pub struct Cli {
    /// Root seed of every random substream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random unit probes per search.
    #[arg(long, global = true, default_value_t = 64)]
    pub samples: usize,
    /// Local searches per check.
    #[arg(long, global = true, default_value_t = 16)]
    pub restarts: usize,
    /// Relative singular-value threshold for rank decisions.
    #[arg(long = "tol-rank", global = true)]
    pub tol_rank: Option<f64>,
    /// Absolute threshold for equality and orthogonality tests.
    #[arg(long = "tol-eq", global = true)]
    pub tol_eq: Option<f64>,
    /// Output file (family for lift/generate, report otherwise).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the full JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lift a complex family to the real family of its realified subspaces.
    Lift { input: PathBuf },
    /// Run a check on a family file ("-" reads stdin).
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        input: PathBuf,
        /// Cluster width for angle spectra.
        #[arg(long, default_value_t = DEFAULT_CLUSTER_WIDTH)]
        width: f64,
    },
    /// Generate a verified family.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Report the angle spectrum of a family.
    Angles {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLUSTER_WIDTH)]
        width: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Generate {
    /// Harmonic Parseval frame of m vectors in C^n.
    Harmonic {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// p + 1 mutually unbiased bases of C^p, p prime.
    Mub {
        #[arg(short)]
        p: u64,
    },
    /// Tight fusion frame of m planes in R^{2n}.
    Tightfusion {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
}

impl Cli {
    fn context(&self, width: f64) -> Result<Context, CliError> {
        let mut tol = Tolerance::<f64>::default();
        if let Some(t) = self.tol_rank {
            tol = tol.with_rank_tol(t)?;
        }
        if let Some(t) = self.tol_eq {
            tol = tol.with_eq_tol(t)?;
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(CliError::Usage("--width must be positive".into()));
        }
        let opts = SearchOptions {
            tol,
            samples: self.samples,
            restarts: self.restarts,
            ..SearchOptions::default()
        }
        .with_seed(self.seed);
        Ok(Context { opts, width })
    }

    fn budget(&self) -> Budget {
        Budget {
            samples: self.samples,
            restarts: self.restarts,
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(io)
    }
}

fn parse_family(bytes: &[u8]) -> Result<AnyFamily, CliError> {
    let text = std::str::from_utf8(bytes).map_err(|e| CliError::Format(e.to_string()))?;
    AnyFamily::parse(text)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn family_json(fam: &AnyFamily) -> String {
    let file = match fam {
        AnyFamily::Real(f) => f.to_file(),
        AnyFamily::Complex(f) => f.to_file(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("family serializes");
    s.push('\n');
    s
}

/// Runs a check or angles command and returns the report and exit code.
/// Errors end up in the report with verdict `ERROR`.
pub fn run_report(cli: &Cli) -> (ReportFile, i32) {
    let start = Instant::now();
    let (name, input, kind, width) = match &cli.command {
        Command::Check { kind, input, width } => (format!("check {}", kind.as_str()), input, Some(*kind), *width),
        Command::Angles { input, width } => ("angles".to_string(), input, None, *width),
        _ => unreachable!("run_report handles check and angles"),
    };
    let tol = cli.context(width).map(|c| *c.tol()).unwrap_or_default();
    let mut report = ReportFile::new(name, cli.seed, &tol, cli.budget());
    let result = (|| {
        let ctx = cli.context(width)?;
        let bytes = read_input(input)?;
        report.input_digest = Some(report::digest(&bytes));
        let fam = parse_family(&bytes)?;
        match kind {
            Some(k) => commands::check(k, &fam, &ctx, &mut report),
            None => {
                let (details, reason) = commands::angle_details(&fam, &ctx)?;
                report.details.extend(details);
                if let Some(r) = reason {
                    report.details.insert("warning".into(), r.into());
                }
                Ok(())
            }
        }
    })();
    let code = match result {
        Ok(()) => match report.verdict.as_deref() {
            Some("CERTIFIED_FAIL") => EXIT_FAIL,
            _ => EXIT_PASS,
        },
        Err(e) => {
            report.verdict = Some("ERROR".into());
            report.error = Some(e.to_string());
            EXIT_ERROR
        }
    };
    report.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    (report, code)
}

fn run_family_command(cli: &Cli) -> Result<(), CliError> {
    let ctx = cli.context(DEFAULT_CLUSTER_WIDTH)?;
    let fam = match &cli.command {
        Command::Lift { input } => AnyFamily::Real(commands::lift(&parse_family(&read_input(input)?)?, &ctx)?),
        Command::Generate { what } => {
            let kind = match *what {
                Generate::Harmonic { m, n } => GenerateKind::Harmonic { m, n },
                Generate::Mub { p } => GenerateKind::Mub { p },
                Generate::Tightfusion { m, n } => GenerateKind::TightFusion { m, n },
            };
            commands::generate(kind, &ctx)?
        }
        _ => unreachable!("run_family_command handles lift and generate"),
    };
    write_output(cli.out.as_deref(), &family_json(&fam))
}

/// Runs the parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Lift { .. } | Command::Generate { .. } => match run_family_command(cli) {
            Ok(()) => EXIT_PASS,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        },
        Command::Check { .. } | Command::Angles { .. } => {
            let (report, code) = run_report(cli);
            let text = report.to_json();
            let mut code = code;
            if let Some(p) = &cli.out {
                if let Err(e) = write_output(Some(p), &text) {
                    eprintln!("error: {e}");
                    code = EXIT_ERROR;
                }
            }
            if cli.json || cli.out.is_none() {
                print!("{text}");
            } else {
                println!("{}: {}", report.command, report.verdict.as_deref().unwrap_or("done"));
            }
            if let Some(e) = &report.error {
                eprintln!("error: {e}");
            }
            code
        }
    }
}
