use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "parahoric", version, about = "Mod p parahoric Hecke algebras and their Satake transforms")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// JSON session file supplying defaults for any flag.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Directory of the persistent interval cache.
    #[arg(long, global = true, env = "PARAHORIC_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the persistent cache even if a directory is configured.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Largest Bruhat interval enumerated before giving up.
    #[arg(long, global = true, value_name = "N")]
    pub interval_cap: Option<usize>,
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iwahori-Weyl group computations.
    #[command(subcommand)]
    Weyl(WeylCommand),
    /// Parahoric Hecke algebra computations.
    #[command(subcommand)]
    Hecke(HeckeCommand),
    /// Satake transform to a standard Levi.
    Satake(SatakeArgs),
    /// Persistent interval cache maintenance.
    #[command(subcommand)]
    Cache(CacheCommand),
    /// Brute-force cross-validation.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Clone, Args)]
pub struct DatumArg {
    /// Root datum, e.g. `A2`, `A1:ad`, `C2xA1`.
    pub datum: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum WeylCommand {
    /// Reduced word and length of an element.
    Reduce {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        elt: String,
    },
    Length {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        elt: String,
    },
    /// Bruhat comparison `u ≤ w`.
    Leq {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Demazure product of a word or of a list of elements.
    Demazure {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, conflicts_with = "elts", required_unless_present = "elts")]
        word: Option<String>,
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        elts: Vec<String>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    #[command(flatten)]
    pub datum: DatumArg,
    /// Facet as a list of affine simple indices; `""` is the Iwahori level.
    #[arg(long)]
    pub facet: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Phi,
    Indicator,
}

#[derive(Debug, Subcommand)]
pub enum HeckeCommand {
    /// Convolution of two elements.
    Multiply {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Left factor `φ_{w1}`.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "a", conflicts_with = "a")]
        w1: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "b", conflicts_with = "b")]
        w2: Option<String>,
        /// Left factor as a JSON element file.
        #[arg(long, value_name = "FILE")]
        a: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        b: Option<PathBuf>,
        /// Record the Demazure computation of every term product.
        #[arg(long)]
        witness: bool,
    },
    /// Change of basis.
    Basis {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_enum)]
        to: BasisArg,
        #[arg(long, value_enum, default_value = "phi")]
        from: BasisArg,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "input", conflicts_with = "input")]
        w: Option<String>,
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Cell count of the closure of a double coset, as a polynomial in q.
    Pointcount {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        facet: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Recompute a `multiply --witness` document.
    Replay {
        #[arg(long, value_name = "FILE")]
        witness: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SatakeArgs {
    #[command(flatten)]
    pub alg: AlgebraArgs,
    /// Finite simple indices of the Levi; `""` is the torus.
    #[arg(long)]
    pub levi: Option<String>,
    /// Cocharacter defining the attracting parabolic.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    pub w: Option<String>,
    /// A JSON Hecke element file.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Use the anti-dominant fast path; requires a special facet and the torus.
    #[arg(long)]
    pub special: bool,
    /// List anti-dominant coweights instead of transforming.
    #[arg(long, conflicts_with_all = ["w", "input"])]
    pub list_lambda_minus: bool,
    /// Length bound for `--list-lambda-minus`.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub chain_cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CacheCommand {
    Stats,
    /// Remove every entry and reset the counters.
    Clear,
    /// Precompute the lower intervals of all double cosets up to a length.
    Warm {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        facet: Option<String>,
        #[arg(long)]
        len: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Length, Bruhat and Iwahori convolution against brute force.
    Check {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 4)]
        len: usize,
        #[arg(long, default_value = "2,3,5")]
        primes: String,
    },
}
