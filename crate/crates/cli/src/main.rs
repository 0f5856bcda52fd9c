mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "eulerweft", version, about = "Pauli-product circuits, Eulerian subgraphs and Ising partition functions")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "EULERWEFT_THREADS")]
    pub threads: Option<usize>,
    /// Raise the kernel-enumeration limit (free dimensions, at most 62).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=62))]
    pub cap_override: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect H-matrix circuits.
    #[command(subcommand)]
    Circuit(CircuitCmd),
    /// Convert between graphs and circuits; check and search for the Euler condition.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Exact generating functions and weight enumerators.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Ising partition functions.
    #[command(subcommand)]
    Ising(IsingCmd),
    /// Statevector simulation and Hadamard-test estimates.
    #[command(subcommand)]
    Sim(SimCmd),
    /// List or write the bundled example inputs.
    Corpus {
        /// Directory to write the fixture files into.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    /// `(λ I + σ̃) / √(1+λ²)`.
    #[value(alias = "identity")]
    Paper,
    /// `(I + λ σ̃) / √(1+λ²)`.
    Edge,
}

#[derive(Args, Debug, Clone)]
pub struct GateArgs {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = FormArg::Edge)]
    pub form: FormArg,
    /// Per-gate signs as a string of `+` and `-`.
    #[arg(long)]
    pub signs: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CircuitCmd {
    /// Check every gate has an odd number of Y factors.
    Validate {
        file: PathBuf,
        /// Also require one Y and at most one X per gate.
        #[arg(long)]
        graph_restricted: bool,
    },
    /// List the gates as tensor products.
    Show {
        file: PathBuf,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, value_enum, default_value_t = FormArg::Edge)]
        form: FormArg,
    },
    /// Rotation angle of the λ gate, or of every gate in a circuit.
    Angle {
        file: Option<PathBuf>,
        #[command(flatten)]
        gate: GateArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Randomized,
    /// Exact linear solve over all Y and Z placements.
    Solve,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Lift a graph to a circuit (Y on the lowest-numbered vertex of each edge).
    ToCircuit { file: PathBuf },
    /// Read the graph off a circuit's flip bits.
    FromCircuit { file: PathBuf },
    /// Whether the phase vanishes on the whole cycle space.
    EulerCheck {
        file: PathBuf,
        /// Scan every kernel element instead of the basis-pair test.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Search lifts of a graph for one satisfying the Euler condition.
    EulerSearch {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        #[arg(long, default_value_t = 2)]
        z_cap: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum EvalCmd {
    /// S(A, B, x, y) from matrix files.
    Qwgt {
        #[arg(long)]
        a: PathBuf,
        /// Defaults to the zero matrix.
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 1.0)]
        y: f64,
    },
    /// Eulerian subgraph generating function of a graph.
    E {
        file: PathBuf,
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Signed generating function of a circuit.
    Eprime {
        file: PathBuf,
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Kernel sum with one weight per edge.
    Multi {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum IsingCmd {
    Direct { file: PathBuf },
    Vdw { file: PathBuf },
    Qwgt { file: PathBuf },
    /// All applicable evaluators and their largest relative deviation.
    All { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SimCmd {
    /// ⟨0…0|U|0…0⟩ by statevector simulation.
    Amplitude {
        file: PathBuf,
        #[command(flatten)]
        gate: GateArgs,
    },
    /// ⟨0…0|U|0…0⟩ from the cycle-space expansion.
    Expansion {
        file: PathBuf,
        #[command(flatten)]
        gate: GateArgs,
    },
    /// Sampled Hadamard-test estimate of the amplitude.
    Hadamard {
        file: PathBuf,
        #[command(flatten)]
        gate: GateArgs,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// U, copy a decision qubit to an ancilla, U†; report the ancilla.
    Decision {
        file: PathBuf,
        #[command(flatten)]
        gate: GateArgs,
        /// 1-based qubit index.
        #[arg(long, default_value_t = 1)]
        decision_qubit: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::dispatch(&cli) {
        Ok(out) => {
            match cli.output {
                OutputFormat::Text => print!("{}", out.text),
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if matches!(e, CliError::Usage(_)) {
                eprintln!("error: {e}\n\n{}", <Cli as clap::CommandFactory>::command().render_usage());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
