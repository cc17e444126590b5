//! `stabft`: command-line front end for the stabilizer toolkit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod report;

#[derive(Parser, Debug)]
#[command(name = "stabft", version, about = "Stabilizer codes, Clifford maps and fault-tolerant constructions")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Refuse registers larger than this for tableau work.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_n: usize,
    /// Refuse registers larger than this for dense state vectors (at most 10).
    #[arg(long, global = true, default_value_t = 10)]
    pub max_dense_n: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, env = "STABFT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a code given as a `.stab` file or a built-in name.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Check whether a gate applied qubit by qubit preserves a code.
    Transversal {
        code: String,
        /// Named gate, `.gate` file, or an eight-qubit permutation
        /// (swap_halves, swap_pairs, swap_odd_even).
        gate: String,
        /// Number of code blocks (defaults to the gate's arity).
        #[arg(long)]
        blocks: Option<usize>,
    },
    /// Run a `.circ` file on the stabilizer simulator.
    Sim {
        circuit: PathBuf,
        /// Cross-check against the dense simulator.
        #[arg(long)]
        oracle: bool,
        /// Initial computational basis state, e.g. `0110` (default all zeros).
        #[arg(long)]
        basis: Option<String>,
    },
    /// Turn a `.gate` table into a circuit of named gates.
    Synth { gate: PathBuf },
    /// Inject every single fault into a circuit and weigh the result per block.
    Faults {
        circuit: PathBuf,
        /// Code on each uniform block.
        #[arg(long)]
        code: Option<String>,
        /// Number of consecutive blocks of `--code`, starting at qubit 1.
        #[arg(long)]
        blocks: Option<usize>,
        /// Extra block given as qubit list, e.g. `9,10` or `9-12` (repeatable).
        #[arg(long = "block")]
        block: Vec<String>,
    },
    /// List, run or dump the registered protocols.
    Protocol {
        #[command(subcommand)]
        action: ProtocolAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodeAction {
    Validate { code: String },
    Info { code: String },
    Distance { code: String },
}

#[derive(clap::Args, Debug, Clone)]
pub struct ProtocolArgs {
    pub name: String,
    /// Code for encoded protocols (built-in name or `.stab` file).
    #[arg(long)]
    pub code: Option<String>,
    /// First encoded slot (1-based).
    #[arg(long)]
    pub i: Option<usize>,
    /// Second encoded slot (1-based).
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ProtocolAction {
    List,
    Run {
        #[command(flatten)]
        args: ProtocolArgs,
        /// Number of consecutive seeds to sweep, starting at `--seed`.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
    },
    Dump {
        #[command(flatten)]
        args: ProtocolArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let report = commands::dispatch(&cli, echo);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code as u8)
}
