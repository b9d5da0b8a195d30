//! `sp6`: command-line access to the packet, K-type, projector, L-factor
//! and quadrature computations.

mod commands;
mod table;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use sp6::Weight;

#[derive(Parser)]
#[command(name = "sp6", version, about = "Exact Sp6(R) / U(3) computations and numerical checks")]
struct Cli {
    /// Emit JSON instead of an aligned table.
    #[arg(long, global = true)]
    json: bool,

    /// Include wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete-series packet with infinitesimal character λ+ρ.
    Packets {
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lambda: Weight,
    },
    /// U(3)-decomposition of Λ^p p+ ⊗ Λ^q p-.
    Ktypes {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Check that the named highest-weight vector is killed by the compact raising operators.
    HwvCheck {
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        target: Weight,
    },
    /// Projection coefficient of X0 onto a minimal K-type.
    Projector {
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        target: Weight,
    },
    /// Local Spin factors and the partial Spin L-function.
    Lfactor {
        /// JSON file with one Satake record or an array of them.
        #[arg(long)]
        satake: std::path::PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        /// Largest prime used; all supplied primes by default.
        #[arg(long)]
        cutoff: Option<u64>,
        /// Also sum the Dirichlet series over n ≤ TERMS.
        #[arg(long)]
        terms: Option<u64>,
    },
    /// Archimedean Γ-factor and its pole order at an integer.
    Gamma {
        /// JSON file with Hodge numbers.
        #[arg(long)]
        hodge: std::path::PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: i64,
    },
    /// Homotopy residuals and decay fit for the Bochner–Martinelli operator.
    BmVerify {
        #[arg(long = "N", default_value_t = 6)]
        n: u32,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    let parts: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    match parts {
        Ok(v) if v.len() == 3 => Ok(Weight::new(v[0], v[1], v[2])),
        _ => Err(format!("expected three comma-separated integers, got `{s}`")),
    }
}

/// Name, echoed inputs, exactness mode and payload of a successful run.
pub struct Outcome {
    pub inputs: Value,
    pub mode: &'static str,
    pub results: Value,
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = match &cli.command {
        Command::Packets { .. } => "packets",
        Command::Ktypes { .. } => "ktypes",
        Command::HwvCheck { .. } => "hwv-check",
        Command::Projector { .. } => "projector",
        Command::Lfactor { .. } => "lfactor",
        Command::Gamma { .. } => "gamma",
        Command::BmVerify { .. } => "bm-verify",
    };
    let outcome = match cli.command {
        Command::Packets { lambda } => commands::packets(lambda),
        Command::Ktypes { p, q } => commands::ktypes(p, q),
        Command::HwvCheck { target } => commands::hwv_check(target),
        Command::Projector { target } => commands::projector(target),
        Command::Lfactor { satake, s, cutoff, terms } => commands::lfactor(&satake, s, cutoff, terms),
        Command::Gamma { hodge, at } => commands::gamma(&hodge, at),
        Command::BmVerify { n, grid, levels, tol } => commands::bm_verify(n, grid, levels, tol),
    };
    match outcome {
        Ok(out) => {
            let mut report = Map::new();
            report.insert("command".into(), json!(name));
            report.insert("inputs".into(), out.inputs);
            report.insert("mode".into(), json!(out.mode));
            report.insert("results".into(), out.results);
            if cli.timing {
                report.insert("elapsed_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
            }
            let report = Value::Object(report);
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            } else {
                table::render(&report)
            };
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let err = json!({"command": name, "error": {"kind": e.kind, "message": e.message}});
            if cli.json {
                emit(&(serde_json::to_string_pretty(&err).expect("serializable") + "\n"));
            } else {
                eprintln!("error ({}): {}", e.kind, e.message);
            }
            ExitCode::from(1)
        }
    }
}
