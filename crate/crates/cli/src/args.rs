use std::path::PathBuf;

use asymcode::{MatrixRole, Strategy};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "asymcode",
    version,
    about = "Construct, verify and search codes for asymmetric and limited-magnitude channels"
)]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of codewords any enumeration may produce
    /// (default: $ASYMCODE_ENUM_CAP, else 1000000).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and re-verify it.
    Construct(ConstructArgs),
    /// Check whether a code file corrects t errors.
    Verify(VerifyArgs),
    /// Search for shift-closed ternary codes.
    Search(SearchArgs),
    /// Decode a received word.
    Decode(DecodeArgs),
    /// Monte Carlo channel simulation.
    Simulate(SimulateArgs),
    /// Size bounds.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Reference tables.
    Tables(TablesArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the code to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Skip the oracle check of the result.
    #[arg(long, global = true)]
    pub unchecked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// Every codeword.
    Words,
    /// The generator matrix only.
    Matrix,
}

#[derive(Debug, Args)]
pub struct LinearArgs {
    /// Delete the first coordinate.
    #[arg(long)]
    pub shorten: bool,
    #[arg(long, value_enum, default_value_t = Emit::Words)]
    pub emit: Emit,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Varshamov-Tenengolts code `sum i*x_i = g (mod n+1)`.
    Vt {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        g: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Group code `sum x_i g_i = g` over a finite abelian group.
    Cr {
        /// Group, e.g. `9`, `3x3` or `Z2+Z4`.
        #[arg(long)]
        group: String,
        /// Target element as comma-separated components (default: identity).
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Binary image of a ternary code (or a mixed `2,3,..,3` code).
    Ternary {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Odd-length binary code from two ternary parts.
    Extended {
        #[arg(long)]
        part0: PathBuf,
        #[arg(long)]
        part1: PathBuf,
    },
    /// Pair-coset concatenation of a linear outer code.
    Concat {
        /// Matrix file in `q rows cols role` format.
        #[arg(long, conflicts_with = "rows")]
        matrix: Option<PathBuf>,
        /// Inline rows as digit strings, e.g. `0111,1012`.
        #[arg(long, value_delimiter = ',', requires = "q")]
        rows: Vec<String>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, default_value = "generator")]
        role: MatrixRole,
        #[command(flatten)]
        linear: LinearArgs,
    },
    /// Concatenation with the q-ary Hamming code of redundancy r.
    Hamming {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        linear: LinearArgs,
    },
    /// Concatenation with a single-Lee-error-correcting code of redundancy r.
    Lee {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
        /// Use the longest admissible parity-check matrix.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        linear: LinearArgs,
    },
    /// Repeat every symbol twice.
    Double {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Asymmetric errors counted by total magnitude.
    Asym,
    /// At most t coordinates, each shifted down by at most l.
    Limited,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Model::Asym)]
    pub model: Model,
    #[arg(long)]
    pub t: u32,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// Errors wrap around from 0 to q-1.
    #[arg(long)]
    pub wrap: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchKind {
    /// Shift-closed codes in `T^m`.
    Cyclic,
    /// Two shift-closed parts in `Z x T^m`.
    Extended,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub kind: SearchKind,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    /// `exact`, `greedy` or `random`.
    #[arg(long, default_value = "exact")]
    pub strategy: Strategy,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Stop after this many branch-and-bound nodes; makes truncated runs
    /// reproducible.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Write the binary image instead of the ternary code.
    #[arg(long)]
    pub binary: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Code file; decoding is exhaustive.
    #[arg(long, required_unless_present = "matrix")]
    pub code: Option<PathBuf>,
    /// Outer parity-check matrix of a concatenated code; decoding uses
    /// syndromes.
    #[arg(long, conflicts_with = "code")]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub received: String,
    #[arg(long, default_value_t = 1)]
    pub t: u32,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Per-edge error probability.
    #[arg(long, required_unless_present = "errors")]
    pub p: Option<f64>,
    /// Inject exactly this many errors per trial instead.
    #[arg(long, conflicts_with = "p")]
    pub errors: Option<u32>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Decoding radius.
    #[arg(long, default_value_t = 1)]
    pub t: u32,
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    /// Sphere-packing bound for wrap-around limited-magnitude codes.
    Sphere {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 1)]
        l: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Rate ratios of ternary images against binary codes.
    Table1,
    /// Code sizes for n = 6..16.
    Table2,
    /// Oracle check of the built-in generator tables.
    VerifyGenerators,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(value_enum)]
    pub table: Table,
    /// Also check every table2 code exhaustively.
    #[arg(long)]
    pub verify: bool,
}
