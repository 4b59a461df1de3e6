mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "triaffine", version, about = "Dimension toolkit for lower-triangular self-affine IFS")]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct SystemSource {
    /// System document (JSON).
    #[arg(long)]
    pub system: Option<PathBuf>,
    /// Registered example: j49, j29, j48, j33.
    #[arg(long)]
    pub example: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Affinity dimension and the applicable dimension theorem.
    Dim {
        #[command(flatten)]
        source: SystemSource,
    },
    /// Box, correlation or slice dimension of a chaos-game cloud.
    Estimate {
        #[command(flatten)]
        source: SystemSource,
        #[arg(long, value_enum, default_value = "box")]
        method: EstimateMethod,
        #[arg(long, default_value_t = 1_000_000)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        burn_in: usize,
        /// Dyadic exponents `k_min:k_max`, scales 2^-k.
        #[arg(long, default_value = "4:10")]
        scales: String,
        /// Strip width for the slice method; defaults to the finest scale.
        #[arg(long)]
        strip_width: Option<f64>,
        /// Read a binary cloud instead of generating one.
        #[arg(long)]
        cloud: Option<PathBuf>,
    },
    /// L^q density diagnostics of the x-marginal over a refinement sweep.
    Density {
        #[command(flatten)]
        source: SystemSource,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// Comma-separated bin counts.
        #[arg(long, default_value = "16,32,64,128,256,512,1024")]
        bins: String,
        #[arg(long, default_value_t = 1_000_000)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Separation checks: SSP certificate, exact gaps, pair counts.
    Check {
        #[command(flatten)]
        source: SystemSource,
        #[arg(long, value_enum)]
        kind: CheckKind,
        #[arg(long, default_value_t = 8)]
        max_level: usize,
        /// Shrink of the unit square for the certificate box.
        #[arg(long, default_value = "1/100")]
        eps: String,
        /// Word length for gap checks.
        #[arg(long)]
        n: Option<usize>,
        /// Common ratio of a line system given directly.
        #[arg(long)]
        ratio: Option<String>,
        /// Comma-separated offsets of a line system given directly.
        #[arg(long)]
        offsets: Option<String>,
        /// Line system derived from a planar system.
        #[arg(long, value_enum, default_value = "h")]
        projection: Projection,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long = "L", default_value_t = 1.0)]
        l: f64,
    },
    /// Phase-transition profile `b -> dim` of the three-map family.
    Sweep {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 0.01)]
        b_min: f64,
        /// Defaults to c/2.
        #[arg(long)]
        b_max: Option<f64>,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Chaos-game point cloud, binary or CSV by extension of --out.
    Cloud {
        #[command(flatten)]
        source: SystemSource,
        #[arg(long, default_value_t = 1_000_000)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        burn_in: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    Box,
    Corr,
    Slice,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Ssp,
    Delta,
    Pairs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    /// x -> c x + u
    H,
    /// y -> b y + v
    V,
    /// forward Furstenberg system
    F,
    /// backward Furstenberg system
    B,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
