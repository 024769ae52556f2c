use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use deformed_voa::RMode;
use deformed_voa_cli::{render::render, run, Command, Format, RunConfig, UsageError};

#[derive(Parser, Debug)]
#[command(
    name = "deformed-voa",
    version,
    about = "Exact checks and data for the r-deformed Sugawara VOA"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Rank d of the underlying space H.
    #[arg(long, global = true, default_value_t = 1)]
    d: usize,

    /// "symbolic" or an exact rational such as -22/5.
    #[arg(long, global = true, default_value = "symbolic", value_parser = parse_r, allow_hyphen_values = true)]
    r: RMode,

    #[arg(long = "max-weight", global = true, default_value_t = 4)]
    max_weight: usize,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Scale every central term by this factor (negative-path testing).
    #[arg(long = "inject-fault", global = true, hide = true)]
    inject_fault: Option<i64>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Run every identity check.
    Verify,
    /// Graded dimensions of M_r and V_J.
    Dims,
    /// Griess algebra structure constants and the Jordan isomorphism.
    Griess,
    /// Gram matrices of the invariant form.
    Gram,
    /// Nullities of the Gram matrices at a numeric r.
    Radical,
    /// Orthogonal automorphism checks.
    Auto,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

fn parse_r(s: &str) -> Result<RMode, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        command: match cli.command {
            Cmd::Verify => Command::Verify,
            Cmd::Dims => Command::Dims,
            Cmd::Griess => Command::Griess,
            Cmd::Gram => Command::Gram,
            Cmd::Radical => Command::Radical,
            Cmd::Auto => Command::Auto,
        },
        d: cli.d,
        r: cli.r,
        max_weight: cli.max_weight,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        out: cli.out,
        jobs: cli.jobs,
        fault: cli.inject_fault,
    };
    match execute(&config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(config: &RunConfig) -> Result<u8, UsageError> {
    let report = run(config)?;
    let text = render(&report, config.format)?;
    match &config.out {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if let Some(failure) = report.first_failure() {
        if let Some(w) = &failure.witness {
            eprintln!(
                "{} failed at {}: {} != {}",
                failure.identity, w.context, w.lhs, w.rhs
            );
        }
    }
    Ok(report.exit_code() as u8)
}
