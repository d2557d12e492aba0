use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

/// Verifies the Witt-vector and characteristic-one identities and prints
/// their tables.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on a
/// usage error.
#[derive(Parser, Debug, Clone, PartialEq)]
#[command(name = "tropwitt", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized samples.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// The polynomials S_1..S_n in k variables.
    WittPoly(WittPolyArgs),
    /// Support and coefficients of the series w_p(α).
    Wp(WpArgs),
    /// Teichmüller sum identity in W_N(F_q).
    Teich(TeichArgs),
    /// Partial sums σ_n(a, b) against log(e^a + e^b).
    Deform(DeformArgs),
    /// Functional equations of weights w = χ(α)^α χ(1-α)^(1-α).
    EntropyCheck(EntropyArgs),
    /// Evaluate an exponential fraction, its residues and T → 0 limit.
    Run(RunArgs),
    /// Coefficients of g(T)^T and their inversion.
    Asym(AsymArgs),
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct WittPolyArgs {
    #[arg(short = 'k', default_value_t = 2)]
    pub k: usize,
    #[arg(short = 'n', default_value_t = 10)]
    pub n: usize,
    /// Compare S_1..S_10 (k = 2) with the reference table.
    #[arg(long)]
    pub check_table: bool,
    /// Check the power-sum identity for every index up to this one.
    #[arg(long)]
    pub newton: Option<usize>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct WpArgs {
    #[arg(short = 'p')]
    pub p: u64,
    /// Series are reduced modulo T^order.
    #[arg(long, default_value_t = 4)]
    pub order: usize,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct TeichArgs {
    #[arg(short = 'p')]
    pub p: u32,
    #[arg(short = 'm', default_value_t = 1)]
    pub m: u32,
    /// Witt vector length.
    #[arg(short = 'N')]
    pub n: usize,
    /// Number of summands.
    #[arg(long, default_value_t = 2)]
    pub arity: usize,
    /// Above this many tuples, sample instead of enumerating.
    #[arg(long, default_value_t = 4096)]
    pub exhaustive_limit: u64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct DeformArgs {
    #[arg(short = 'a', allow_hyphen_values = true)]
    pub a: f64,
    #[arg(short = 'b', allow_hyphen_values = true)]
    pub b: f64,
    #[arg(short = 'T', default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 1024)]
    pub n_max: u32,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct EntropyArgs {
    /// A character given by l(p) values, e.g. "2:1,3:10". Repeatable.
    #[arg(long)]
    pub chi: Vec<String>,
    /// Number of extra random characters.
    #[arg(long, default_value_t = 20)]
    pub random: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Largest exponent tried by the positivity probe.
    #[arg(long, default_value_t = 12)]
    pub depth: u32,
    /// Scale of the entropy solution, l(p) = λ log p.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct RunArgs {
    /// e.g. "2 - 1*exp(-1.5/T) / (1 + 1*exp(-0.5/T))"
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    /// Second fraction for the hyperfield membership check.
    #[arg(long, allow_hyphen_values = true)]
    pub with: Option<String>,
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    /// Comma-separated temperatures; defaults to 2^-k for k = 0..=k_max.
    #[arg(long)]
    pub schedule: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub k_max: u32,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct AsymArgs {
    /// b_0, b_1, … as comma-separated rationals (b_0 = 1).
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["a", "symbolic"])]
    pub b: Option<String>,
    /// a_0, a_1, … as comma-separated rationals (a_0 > 0).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
    pub a: Option<String>,
    /// Print a_0..a_N as polynomials in b_1..b_(N-1).
    #[arg(long)]
    pub symbolic: Option<usize>,
    /// Compare a_1..a_6 with the reference table.
    #[arg(long)]
    pub check_table: bool,
}
