use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand};
use qbundle_core::algebra::{parse_rational, BigRational};
use qbundle_core::brauer::Place;
use qbundle_core::report::VerificationReport;
use qbundle_core::suites::{self, SuiteError, SuiteOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "qbundle", version, about = "Exact verification of quadric surface bundle normal forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Run {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        window: i32,
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        gamma_exp: String,
        /// Restrict `normal-forms` or `section5` to one entry.
        #[arg(long)]
        entry: Option<u8>,
        /// Base dimension for `normal-forms --entry`.
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Check one normal form: certificate, discriminant and rank strata.
    VerifyNormalForms {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        entry: u8,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Check one cover map: factorization, sign action, equivariance, inverse.
    VerifySection5 {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=8))]
        entry: u8,
        #[command(flatten)]
        out: Output,
    },
    /// Hilbert symbols and Albert forms over Q.
    Brauer {
        #[command(subcommand)]
        command: BrauerCommand,
    },
    /// Module intersection and non-flatness checks on (2,2)-biforms.
    VerifyAppendix {
        #[arg(long, default_value_t = 4)]
        window: i32,
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        gamma_exp: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum BrauerCommand {
    /// Hilbert symbol `(a, b)_v`, at one place or all relevant places.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// `real` or a prime; omit for every relevant place.
        #[arg(long)]
        place: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Albert form comparison for the parameters `p, q, r, d`.
    Albert {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        out: Output,
    },
}

fn usage(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn gamma(text: &str) -> Option<i32> {
    match text {
        "auto" => None,
        "-1" => Some(-1),
        "-2" => Some(-2),
        other => usage(format!("--gamma-exp must be -1, -2 or auto, got {other:?}")),
    }
}

fn window(w: i32) -> i32 {
    if w < 4 {
        usage(format!("--window must be at least 4, got {w}"));
    }
    w
}

fn rational(name: &str, text: &str) -> BigRational {
    parse_rational(text).unwrap_or_else(|e| usage(format!("--{name}: {e}")))
}

fn input<T>(r: Result<T, SuiteError>) -> T {
    r.unwrap_or_else(|e| usage(e))
}

fn emit(mut report: VerificationReport, out: &Output, start: Instant) -> ExitCode {
    if out.timing && report.timing_ms.is_none() {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    match out.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json() + "\n") {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
            print!("{}", report.summary());
        }
        None => print!("{}", report.summary()),
    }
    ExitCode::from(report.status.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match cli.command {
        Command::Run {
            suite,
            seed,
            window: w,
            gamma_exp,
            entry,
            dim,
            out,
        } => {
            let opts = SuiteOptions {
                seed,
                window: window(w),
                gamma_exp: gamma(&gamma_exp),
                timing: out.timing,
                ..SuiteOptions::default()
            };
            let report = match (suite.as_str(), entry) {
                (_, None) => {
                    if dim.is_some() {
                        usage("--dim requires --entry");
                    }
                    input(suites::run(&suite, &opts))
                }
                ("normal-forms", Some(k)) => {
                    if !(1..=8).contains(&k) {
                        usage(format!("--entry must be in 1..=8 for normal-forms, got {k}"));
                    }
                    input(suites::normal_form_report(k, dim.unwrap_or_else(|| default_dim(k))))
                }
                ("section5", Some(k)) => {
                    if !(2..=8).contains(&k) {
                        usage(format!("--entry must be in 2..=8 for section5, got {k}"));
                    }
                    input(suites::section5_report(k))
                }
                (other, Some(_)) => usage(format!("--entry does not apply to suite {other}")),
            };
            emit(report, &out, start)
        }
        Command::VerifyNormalForms { entry, dim, out } => {
            let n = dim.unwrap_or_else(|| default_dim(entry));
            emit(input(suites::normal_form_report(entry, n)), &out, start)
        }
        Command::VerifySection5 { entry, out } => emit(input(suites::section5_report(entry)), &out, start),
        Command::Brauer { command } => match command {
            BrauerCommand::Hilbert { a, b, place, out } => {
                let place = place.map(|p| p.parse::<Place>().unwrap_or_else(|e| usage(format!("--place: {e}"))));
                let report = input(suites::hilbert_report(&rational("a", &a), &rational("b", &b), place));
                emit(report, &out, start)
            }
            BrauerCommand::Albert { p, q, r, d, out } => {
                let report = input(suites::albert_report(
                    &rational("p", &p),
                    &rational("q", &q),
                    &rational("r", &r),
                    d,
                ));
                emit(report, &out, start)
            }
        },
        Command::VerifyAppendix { window: w, gamma_exp, out } => {
            let opts = SuiteOptions {
                window: window(w),
                gamma_exp: gamma(&gamma_exp),
                timing: out.timing,
                ..SuiteOptions::default()
            };
            emit(input(suites::run("appendix", &opts)), &out, start)
        }
    }
}

fn default_dim(entry: u8) -> usize {
    qbundle_core::bundles::minimum_dimension(entry).unwrap_or(1).max(1)
}
