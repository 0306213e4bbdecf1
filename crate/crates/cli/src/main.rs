mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact computations with Leavitt path algebras of directed graphs.
#[derive(Parser, Debug)]
#[command(name = "leavitt-lab", version)]
pub struct Cli {
    /// Graph file (JSON).
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Desingularization depth.
    #[arg(long, global = true, default_value_t = 3)]
    pub depth: usize,
    /// Exponent for `norm`, in [1, 8].
    #[arg(long, global = true, default_value_t = 1.0)]
    pub p: f64,
    /// Convergence tolerance of the norm estimator.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide between not simple, simple purely infinite and simple acyclic.
    Classify,
    /// Find x, y with x·a·y a vertex.
    Witness {
        /// Element file (JSON term list).
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        element: Option<PathBuf>,
        /// Run on this many seeded random elements instead.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Print the normal form of an element.
    Normalize {
        #[arg(long)]
        element: PathBuf,
    },
    /// Operator norm of an element of a finite acyclic graph algebra.
    Norm {
        #[arg(long)]
        element: PathBuf,
    },
    /// Graph surgeries.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum TransformOp {
    /// Repeatedly delete vertices that receive no edges.
    RemoveSources,
    /// Replace infinite emitters by tails of length `--depth`.
    Desingularize,
    /// Restrict to the vertices reachable from a vertex.
    Reachable {
        #[arg(long)]
        from: String,
    },
    /// Complete a finite subgraph and embed its algebra.
    Complete {
        /// Subgraph file: {"vertices": [..], "edges": [..]}.
        #[arg(long)]
        subgraph: PathBuf,
        /// Also write the generator images to this file.
        #[arg(long)]
        emit_embedding: Option<PathBuf>,
    },
}

fn configure_threads() {
    if let Some(n) = std::env::var("LEAVITT_LAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            if let Some(h) = &e.hint {
                eprintln!("hint: {h}");
            }
            ExitCode::from(e.code)
        }
    }
}
