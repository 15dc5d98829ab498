use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gbsiso", version, about = "Hafnian certificates for graph non-isomorphism")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write one certificate JSON per input graph.
    Certify {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Directory for certificate files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Compare two graphs, stopping at the first decisive separation.
    Compare {
        /// First graph, or a file holding exactly two graphs.
        a: PathBuf,
        b: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Split a family into classes orbit by orbit.
    Family {
        input: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Orbit probabilities of one graph, for plotting.
    Probabilities {
        input: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List orbits of a photon total on a number of modes.
    Orbits {
        #[arg(long)]
        total: u64,
        #[arg(long)]
        modes: usize,
        #[arg(long, value_enum)]
        output: Option<OutputFormat>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    /// Scaling constant, e.g. "1/6.9" or "0.1". Defaults to a value just
    /// inside the encodable range shared by all inputs.
    #[arg(long)]
    pub c: Option<String>,
    /// Diagonal shift.
    #[arg(long, default_value = "0")]
    pub k: String,
    #[arg(long, default_value_t = 4)]
    pub max_photons: u64,
    /// Explicit orbit such as "2,2,2,2"; zero-padded to the graph order.
    /// Repeatable. Replaces the `--max-photons` schedule.
    #[arg(long = "orbit")]
    pub orbits: Vec<String>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Largest orbit, in elements, that is computed rather than skipped.
    #[arg(long, default_value_t = gbsiso::invariants::DEFAULT_ORBIT_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `.json` files as JSON, anything else as graph6.
    Auto,
    Graph6,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}
