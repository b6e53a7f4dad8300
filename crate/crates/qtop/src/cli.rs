//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qtop", version, about = "Quantum invariants of links and 3-manifolds from braid presentations")]
pub struct Cli {
    /// Worker threads for tensor evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct LinkArgs {
    /// Braid text, e.g. "2: 1 1 1".
    #[arg(long)]
    pub braid: Option<String>,
    /// Built-in knot: unknot, trefoil, figure8, hopf.
    #[arg(long)]
    pub knot: Option<String>,
    /// Braid JSON, inline or a file path.
    #[arg(long)]
    pub input: Option<String>,
    /// One framing per component (default 0).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub framings: Option<Vec<i64>>,
    /// Component cut open for the bracket.
    #[arg(long)]
    pub cut: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JonesMethod {
    Rt,
    Skein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Nr0Method {
    Closed,
    Cabled,
    Limit,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Colored Jones polynomial at q = exp(iπ/r).
    Jones {
        #[arg(long = "r", default_value_t = 3)]
        r: u32,
        #[command(flatten)]
        link: LinkArgs,
        /// Color index n of S_n per component.
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<u32>,
        #[arg(long, value_enum, default_value_t = JonesMethod::Rt)]
        method: JonesMethod,
        /// Evaluate both routes and compare.
        #[arg(long)]
        both: bool,
    },
    /// Renormalized invariant F′ of a link with a typical color.
    Ado {
        #[arg(long = "r", default_value_t = 3)]
        r: u32,
        #[command(flatten)]
        link: LinkArgs,
        /// Color V_α on every component without an explicit color.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Color strings per component: S<n>, V<α>, tau, Omega<α>, OmegaRT<0|1>.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        colors: Option<Vec<String>>,
        /// Sample α = re over "min:max:count" (with --im) instead of --alpha.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        im: f64,
    },
    /// N⁰_r of surgery on a framed knot.
    Nr0 {
        #[arg(long = "r", default_value_t = 3)]
        r: u32,
        #[command(flatten)]
        link: LinkArgs,
        /// Surgery framing.
        #[arg(long, allow_negative_numbers = true)]
        f: i64,
        #[arg(long, default_value_t = 0)]
        omega: u8,
        #[arg(long, value_enum, default_value_t = Nr0Method::Closed)]
        method: Nr0Method,
        /// Auxiliary color for the cabled route.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Refined WRT_r invariant.
    Wrt {
        #[arg(long = "r", default_value_t = 3)]
        r: u32,
        /// Knot surgery "name:framing"; repeated entries form a connected sum.
        #[arg(long)]
        surgery: Vec<String>,
        #[command(flatten)]
        link: LinkArgs,
        /// Color strings per component; surgery components carry OmegaRT<ω>.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        colors: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        omega: u8,
        /// The SO(3) version (ω = 0 on every surgery component).
        #[arg(long)]
        so3: bool,
    },
    /// N_r of a surgery presentation L ∪ T.
    Nr {
        #[arg(long = "r", default_value_t = 3)]
        r: u32,
        #[command(flatten)]
        link: LinkArgs,
        /// Color strings per component; Omega<g> marks a surgery component of degree g.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        colors: Option<Vec<String>>,
    },
    /// Run verification suites; exits 0 iff every non-skipped check passes.
    Verify {
        /// Suite name or "all".
        suite: String,
        #[arg(long = "r", default_value_t = 3)]
        r: u32,
        #[arg(long)]
        knot: Option<String>,
        #[arg(long, default_value_t = qtop_core::verify::DEFAULT_SEED)]
        seed: u64,
    },
}
