use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use g2l_cli::{enumerate, run_suite, Format, Overrides, SuiteConfig, SuiteName};

#[derive(Parser)]
#[command(name = "g2verify", version, about = "Run verification suites and print enumeration tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Run {
        #[arg(value_enum)]
        suite: SuiteName,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print a CSV table.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        /// Largest index for `subrings`.
        #[arg(long, default_value_t = 30)]
        bound: u64,
        /// Integer coefficients `a,b,c,d` for `sublattice-contents`.
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Subrings,
    Cosets,
    SublatticeContents,
}

#[derive(Args)]
struct Opts {
    /// Primes, comma separated.
    #[arg(long = "p", value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Largest determinant valuation of coset representatives.
    #[arg(long)]
    val_bound: Option<u32>,
    /// Even weights, comma separated.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u32>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance for numeric comparisons.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// File of `key = value` lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Opts {
    fn resolve(self) -> Result<SuiteConfig> {
        let file = match &self.config {
            Some(path) => Overrides::from_file(path)?,
            None => Overrides::default(),
        };
        let flags = Overrides {
            primes: self.primes,
            val_bound: self.val_bound,
            weights: self.weights,
            samples: self.samples,
            seed: self.seed,
            tol: self.tol,
            format: self.format,
            out: self.out,
        };
        SuiteConfig::resolve(file.then(flags))
    }
}

const USAGE: u8 = 2;

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, job) = match cli.command {
        Command::Run { suite, opts } => (opts, Err(suite)),
        Command::Enumerate { kind, bound, form, opts } => (opts, Ok((kind, bound, form))),
    };
    let cfg = match opts.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {:#}", e);
            return ExitCode::from(USAGE);
        }
    };
    match job {
        Err(suite) => {
            let report = run_suite(suite, &cfg);
            let text = match cfg.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            if let Err(e) = emit(&text, &cfg.out) {
                eprintln!("error: {:#}", e);
                return ExitCode::FAILURE;
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Ok((kind, bound, form)) => {
            let table = match kind {
                EnumKind::Subrings => enumerate::subrings(bound),
                EnumKind::Cosets => match cfg.primes.as_slice() {
                    [p] => enumerate::cosets(*p, cfg.val_bound),
                    _ => Err(anyhow::anyhow!("cosets needs exactly one prime, e.g. --p 2")),
                },
                EnumKind::SublatticeContents => match (form.as_deref(), cfg.primes.as_slice()) {
                    (Some(f), [p]) => enumerate::parse_form(f).and_then(|f| enumerate::sublattice_contents(&f, *p)),
                    _ => Err(anyhow::anyhow!("sublattice-contents needs --form a,b,c,d and one prime --p")),
                },
            };
            match table {
                Ok(csv) => match emit(&csv, &cfg.out) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: {:#}", e);
                        ExitCode::FAILURE
                    }
                },
                Err(e) => {
                    eprintln!("error: {:#}", e);
                    ExitCode::from(USAGE)
                }
            }
        }
    }
}
