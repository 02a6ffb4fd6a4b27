use clap::{Args, Parser, Subcommand, ValueEnum};

use orbitc_core::root_system::DEFAULT_WEYL_CAP;
use orbitc_core::span_oracle::{DEFAULT_TOLERANCE, DEFAULT_TRIALS};

#[derive(Parser, Debug)]
#[command(name = "orbitc", version, about = "Absolute continuity of orbital measure convolutions in classical compact Lie algebras")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Oracle trials.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub trials: usize,
    /// Master seed for sampled group elements.
    #[arg(long, global = true, env = "ORBITC_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Oracle arithmetic.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Relative singular-value threshold (numeric mode).
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_f64)]
    pub tol: f64,
    /// Largest Weyl group enumerated by brute force.
    #[arg(long, global = true, default_value_t = DEFAULT_WEYL_CAP)]
    pub weyl_cap: u128,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Leave out the conjecture note on open-case verdicts.
    #[arg(long, global = true)]
    pub no_conjecture: bool,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Numeric,
    Exact,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    /// Second element of type D1 x SU(n-1).
    D1,
    /// Second element of type SU(n-1) x SU(1).
    Su1,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type, S_X and annihilator of each element.
    Classify {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Verdict for a tuple; exit code 0 AC, 1 Singular, 2 Unknown.
    Decide {
        #[arg(required = true, num_args = 2..)]
        elements: Vec<String>,
        /// Run the span oracle and compare.
        #[arg(long)]
        verify: bool,
        /// Evaluate the Wright criterion.
        #[arg(long)]
        wright: bool,
    },
    /// Verdicts for all type multisets of size L at one rank.
    Sweep {
        /// Ambient system such as B3 or D4.
        system: String,
        #[arg(short = 'L', long = "len", default_value_t = 2, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        len: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Span oracle on the pair (SU(n), SU(n-1)) in D_n; exit 0 on a proof.
    ExploreOpen {
        n: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::D1)]
        variant: VariantArg,
    },
    /// Wright criterion table.
    Wright {
        #[arg(required = true, num_args = 2..)]
        elements: Vec<String>,
    },
    /// Verdict for conjugacy classes in the group; values are angles in units of π.
    GroupDecide {
        #[arg(required = true, num_args = 2..)]
        elements: Vec<String>,
    },
    /// Smallest L with an absolutely continuous L-fold self-convolution.
    MinPower { element: String },
}
