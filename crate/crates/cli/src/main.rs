//! `hardylab`: exact checks of the subsampling change-of-variable estimate and
//! the discrete Hardy inequality.
//!
//! Exit status: 0 when every check holds, 1 on any violation or unverified
//! instance, 2 on usage, input or I/O errors.

mod commands;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hardylab::exact::parse_rational;
use hardylab::Rational;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "hardylab",
    version,
    about = "Exact change-of-variable and Hardy inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output style: aligned text blocks or one `key=value` record per line.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare s·Σ_{n>=1} |a_⌊ns⌋| with Σ |a_n| for one sequence and rate.
    VerifyCov {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long, value_parser = rational)]
        s: Rational,
        /// Require a non-increasing nonnegative sequence.
        #[arg(long)]
        monotone: bool,
    },
    /// Search random (a, s) for violations of the estimate without monotonicity.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample non-increasing nonnegative sequences instead of signed ones.
        #[arg(long)]
        monotone: bool,
    },
    /// Certify Σ|A_n|^p <= (p/(p-1))^p Σ|a_n|^p with an exact tail bound.
    VerifyHardy {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long, value_parser = rational)]
        p: Rational,
        /// Truncation point; defaults to 4·(support_max + 1).
        #[arg(long)]
        m: Option<u64>,
    },
    /// Check A_n = ∫_0^1 a_⌊(n+1)s⌋ ds exactly for n < N.
    InghamCheck {
        /// Sequence file; a seeded random sequence is used when absent.
        #[arg(long, value_name = "PATH")]
        seq: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare ‖A‖_p (n <= M) with a certified lower bound on the Minkowski integral.
    Minkowski {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long, value_parser = rational)]
        p: Rational,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, value_parser = rational, default_value = "1/100")]
        s_min: Rational,
    },
    /// Ratio table ‖A‖_p/‖a‖_p for a_n = (n+1)^(-1/p-ε).
    Sharpness {
        #[arg(long, value_parser = rational)]
        p: Rational,
        /// Comma-separated list of ε values.
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true)]
        eps: Vec<Rational>,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, value_parser = rational, default_value = "1/1000000000")]
        prec: Rational,
    },
    /// Largest singular value of the (N+1)×(N+1) Cesàro matrix.
    Norm2 {
        #[arg(long)]
        n: usize,
    },
    /// Run every exact identity (counting, Abel, domination, dual paths, step integrals).
    Identities {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long, value_parser = rational)]
        s: Rational,
    },
}

#[derive(Args, Debug)]
struct SeqArg {
    /// Sequence file: one `<index> <rational>` per line, `#` comments.
    #[arg(long = "seq", value_name = "PATH")]
    path: PathBuf,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn render(outcome: &Outcome, format: Format) -> String {
    if let (Format::Text, Some(table)) = (format, &outcome.table) {
        return table.clone();
    }
    match format {
        Format::Machine => outcome
            .records
            .iter()
            .map(|r| r.machine_line() + "\n")
            .collect(),
        Format::Text => outcome
            .records
            .iter()
            .map(|r| r.text_block())
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = render(&outcome, cli.format);
    let written = match &cli.output {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
