//! `gslep`: Slepian bases on graphs from the command line.
//!
//! Every command writes plain CSV with `#` comment lines echoing its
//! parameters. Exit status is 0 on success, 1 for invalid input or a failed
//! computation, 2 for file system errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_slepian::{Design, LaplacianKind};

mod commands;
mod output;

#[derive(Debug, Parser)]
#[command(name = "gslep", version, about = "Slepian function design on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Laplacian eigenvalues and, optionally, eigenvectors.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        /// Number of eigenpairs, smallest first.
        #[arg(long)]
        nev: usize,
        /// `k,lambda` CSV.
        #[arg(long)]
        out: PathBuf,
        /// Eigenvector matrix CSV, one row per node.
        #[arg(long)]
        eigvecs: Option<PathBuf>,
    },
    /// Slepian basis and per-vector metrics for a node subset.
    Slepian {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        band: BandArgs,
        #[arg(long, value_parser = parse_design)]
        design: Design,
        /// Output order of the basis; defaults to μ descending or ξ ascending.
        #[arg(long, value_enum)]
        order: Option<Order>,
        /// `node,s_1,..` CSV.
        #[arg(long)]
        basis_out: PathBuf,
        /// `k,value,lambda_metric,mu_metric,xi_metric` CSV.
        #[arg(long)]
        metrics_out: PathBuf,
    },
    /// Time-frequency Slepian vectors of a length-N signal.
    Classic1d {
        /// Signal length.
        #[arg(long)]
        n: usize,
        /// Interval length.
        #[arg(long)]
        ns: usize,
        /// Interval center sample; defaults to N/2.
        #[arg(long)]
        center: Option<usize>,
        /// Number of lowest-frequency DFT columns.
        #[arg(long)]
        nw: usize,
        /// `sample,s_1,..` CSV.
        #[arg(long)]
        out: PathBuf,
        /// `k,mu` CSV.
        #[arg(long)]
        mu_out: PathBuf,
    },
    /// Spectral filtering of a node signal.
    Filter {
        #[command(flatten)]
        graph: GraphArgs,
        /// `node,value` CSV.
        #[arg(long)]
        signal: PathBuf,
        /// `heat:<t>`, `lowpass:<cutoff>` or `table:<path>`.
        #[arg(long)]
        window: String,
        #[arg(long, value_enum)]
        basis: FilterBasis,
        /// Subset for the Slepian basis; all nodes if omitted.
        #[arg(long)]
        subset: Option<PathBuf>,
        /// Number of eigenpairs used; all nodes if omitted.
        #[arg(long)]
        bandwidth: Option<usize>,
        #[arg(long, value_parser = parse_design, default_value = "embedding")]
        design: Design,
        /// Accept a concentration basis, whose window abscissa is μ.
        #[arg(long)]
        mu_abscissa: bool,
        /// Add the out-of-band part of the signal back unfiltered.
        #[arg(long)]
        passthrough: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Test signal `sin(2π·cycles·t)` with `t` the rescaled eigenvector.
    SynthSignal {
        #[command(flatten)]
        graph: GraphArgs,
        /// Eigenvector number, 1-based (2 is the Fiedler vector).
        #[arg(long)]
        eigvec: usize,
        #[arg(long)]
        cycles: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// λ, μ and ξ of each of the first N_W Laplacian eigenvectors.
    Metrics {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        band: BandArgs,
        /// `k,lambda_metric,mu_metric,xi_metric` CSV.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge list (`i j [w]` per line) or, with `--mesh-off`, a triangle mesh.
    #[arg(long)]
    graph: PathBuf,
    /// Read `--graph` as an OFF triangle mesh.
    #[arg(long)]
    mesh_off: bool,
    /// Node count for an edge list; defaults to the largest index + 1.
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, value_parser = parse_kind, default_value = "norm")]
    laplacian: LaplacianKind,
}

#[derive(Debug, Args)]
struct BandArgs {
    /// Node subset file, one index per line.
    #[arg(long)]
    subset: PathBuf,
    /// Number of lowest Laplacian eigenvectors spanning the band.
    #[arg(long)]
    bandwidth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    Asc,
    Desc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterBasis {
    Laplacian,
    Slepian,
}

fn parse_kind(s: &str) -> Result<LaplacianKind, String> {
    s.parse().map_err(|e: graph_slepian::Error| e.to_string())
}

fn parse_design(s: &str) -> Result<Design, String> {
    s.parse().map_err(|e: graph_slepian::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}
