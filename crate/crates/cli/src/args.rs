use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "skewmorph", version, about = "Skew-morphisms of cyclic p-groups Z_{p^e}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Largest permutation group a closure may build.
    #[arg(long, global = true, env = "SKEWMORPH_CLOSURE_CAP", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub closure_cap: u64,

    /// Wall-clock limit for the pruned oracle, in seconds.
    #[arg(long, global = true, env = "SKEWMORPH_TIME_CAP", value_name = "SECONDS", default_value_t = 600,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub time_cap: u64,

    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, env = "SKEWMORPH_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ModulusArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub e: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    /// Exhaustive up to n = 10, pruned above.
    Auto,
    Exhaustive,
    Pruned,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Number of skew-morphisms of Z_{p^e}, split by k = 0 and k != 0.
    Count(ModulusArgs),
    /// Every skew-morphism of Z_{p^e} with its tuple, power function and order.
    Enum(ModulusArgs),
    /// Check candidate permutations with both verifiers.
    Verify {
        /// JSON file of candidates, or - for stdin.
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Find the admissible tuple of each candidate skew-morphism.
    Classify {
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Brute-force search for all skew-morphisms of Z_n.
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = OracleMode::Auto)]
        mode: OracleMode,
        /// Largest n the pruned search accepts.
        #[arg(long, default_value_t = 27)]
        bound: u32,
        /// Progress file for resuming an interrupted pruned search.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Print search statistics on stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Invariants of the skew product group G(i,j).
    Group {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u64,
    },
    /// Compare tuple enumeration, the closed-form count and optionally an oracle.
    Crosscheck {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 27)]
        bound: u32,
    },
}
