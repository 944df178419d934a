//! `lfds`: cycle lengths and transient height of `g -> f g` on
//! `GR(p^e, d)[x]/<m>`.

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{ArgAction, Parser, Subcommand};

mod commands;
mod system;

use commands::analyze::AnalyzeArgs;
use commands::decompose::DecomposeArgs;
use commands::factor::FactorArgs;
use commands::graph::GraphArgs;
use commands::histogram::HistogramArgs;
use commands::order::OrderArgs;
use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "lfds", version, about = "Cycle structure of linear maps g -> f g over Galois rings")]
#[command(disable_help_flag = true)]
struct Cli {
    /// Print help.
    #[arg(long, action = ArgAction::Help, global = true)]
    help: Option<bool>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Leave wall-clock timings out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cycle sets at every precision, height and decomposition.
    #[command(disable_help_flag = true)]
    Analyze(AnalyzeArgs),
    /// Count of irreducible divisors of M1 per order, as CSV.
    #[command(name = "orders-histogram", disable_help_flag = true)]
    OrdersHistogram(HistogramArgs),
    /// Enumerate the functional graph.
    #[command(disable_help_flag = true)]
    Graph(GraphArgs),
    /// Primary factorization of m, lifted to precision e.
    #[command(disable_help_flag = true)]
    Factor(FactorArgs),
    /// Orders of f modulo the bijective part of m.
    #[command(disable_help_flag = true)]
    Order(OrderArgs),
    /// Split m into bijective and nilpotent parts.
    #[command(disable_help_flag = true)]
    Decompose(DecomposeArgs),
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze(a) => commands::analyze::run(a, !cli.no_timing),
        Command::OrdersHistogram(a) => commands::histogram::run(a),
        Command::Graph(a) => commands::graph::run(a),
        Command::Factor(a) => commands::factor::run(a),
        Command::Order(a) => commands::order::run(a),
        Command::Decompose(a) => commands::decompose::run(a),
    }
}

/// 2 for rejected input, 3 for resource limits, 1 otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    use lfds_core::Error;
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Usage(_) | Error::Domain(_) | Error::Parse { .. }) => 2,
        Some(Error::Resource(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let body = if cli.json { &out.json } else { &out.text };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: the oracle disagrees with the computed cycle structure");
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
