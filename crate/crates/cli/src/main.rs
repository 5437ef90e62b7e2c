//! `berkram`: ramification invariants of rational maps from the command line.

mod commands;
mod examples;
mod plot;

use std::process::ExitCode;

use berkram_core::json::error_report;
use berkram_core::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "berkram", version, about = "Exact ramification invariants on the Berkovich line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Residue characteristic.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u64,
    /// Ground field: qp (p-adic) or fpt (t-adic).
    #[arg(long, global = true, default_value = "qp")]
    pub domain: String,
    /// A JSON file, inline JSON `{"f": [...], "g": [...]}`, or ex61 | ex62 | ex63.
    #[arg(long, global = true)]
    pub map: Option<String>,
    /// `n` for ex62 (pole order of the middle coefficient).
    #[arg(long, global = true, default_value_t = 1)]
    pub n: i64,
    /// Degree for ex62.
    #[arg(long, global = true, default_value_t = 5)]
    pub deg: usize,
    /// A point `a,s` (`s` may be `inf`).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub center: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s1: Option<String>,
    /// Print the JSON report even when CSV is requested.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write an SVG plot (profile only).
    #[arg(long, global = true)]
    pub plot: Option<String>,
    /// Print CSV (profile only).
    #[arg(long, global = true)]
    pub csv: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Coefficients A_0, ..., A_{d-1} of the auxiliary polynomial.
    Aux,
    Wronskian,
    /// Newton polygon of --poly (default: the Wronskian), optionally shifted to --center.
    Newton {
        #[arg(long)]
        poly: Option<String>,
    },
    Tau,
    Tfrak,
    /// Piecewise-affine profile of τ or 𝔱 along s ↦ ζ_{center,s}, s ∈ [s0, s1].
    Profile {
        #[arg(long, default_value = "tau")]
        which: String,
    },
    Mult,
    Ramified,
    Hulldist,
    Tube {
        #[arg(long)]
        radius: String,
    },
    Critical,
    /// Check the uniform tube radius on --points (`a,s;a,s;...`) or a default grid.
    #[command(name = "thmD")]
    ThmD {
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Ramified disk near δ for a normalized series z^m(1 + ε(z)).
    Fuzz {
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    Binomlemma {
        #[arg(long)]
        m: u64,
    },
    Rolle {
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
    Surjective,
    /// Reproduce a worked example: 6.1, 6.2 or 6.3.
    Example {
        which: String,
    },
    /// Run a JSON job spec from a file, or from stdin with `-`.
    Run {
        spec: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&usage_error(&e)),
    };
    match commands::execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&e),
    }
}

pub fn usage_error(e: &clap::Error) -> Error {
    let text = e.to_string();
    let first = text.lines().next().unwrap_or_default();
    Error::Schema(first.trim_start_matches("error: ").to_string())
}

fn fail(e: &Error) -> ExitCode {
    print!("{}", error_report(e));
    ExitCode::from(2)
}
