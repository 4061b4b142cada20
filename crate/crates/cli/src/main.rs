//! `qchar`: build quantum cohomology and quantum K-rings, evaluate quantum
//! Chern character maps, and emit verification certificates.

mod cert;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qchar_core::catalog::Family;

#[derive(Debug, Parser)]
#[command(name = "qchar", version, about = "Exact quantum cohomology / quantum K-theory computations and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Presented rings: relations, bases, products, structure constants.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Quantum Chern character maps.
    #[command(subcommand)]
    Qch(QchCmd),
    /// Power series evaluated at degree-two classes with quantum products.
    Todd(ToddArgs),
    /// K-theoretic J-functions and difference operators.
    #[command(subcommand)]
    Jfun(JfunCmd),
    /// Binomial and polynomial identities.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Mirror superpotential checks and the non-zero-divisor property.
    #[command(subcommand)]
    Mirror(MirrorCmd),
    /// Classical limits: dimensions and Chern characters.
    #[command(subcommand)]
    Classical(ClassicalCmd),
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: qchar_core::Error| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    /// Ring family: qh_pn, qk_pn, qh_fl, qk_fl, k_milnor, qk_milnor, qh_milnor, k_pnxpm.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: u32,
    /// Second parameter for the Milnor and product families.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Total Novikov degree kept.
    #[arg(long, default_value_t = 2)]
    pub trunc: u32,
}

#[derive(Debug, Clone, Args)]
pub struct OutArg {
    /// Write the JSON certificate here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum RingCmd {
    /// Print the presentation relations.
    Show {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Print the monomial basis of the classical quotient.
    Basis {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Multiply two elements.
    Mul {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Structure constants, plus a randomized confluence check of the reduction.
    Table {
        #[command(flatten)]
        ring: RingArgs,
        /// Random polynomials reduced by two strategies.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// pn, fl or milnor.
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 3)]
    pub trunc: u32,
}

#[derive(Debug, Subcommand)]
pub enum QchCmd {
    /// Print the images of generators and Novikov variables.
    Build {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Image of an expression in the quantum K-ring.
    Apply {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Relation images, classical limit and the Todd simplification identities.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Solve for the Novikov image and report whether it is unique.
    Unique {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ToddArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// exp_neg, one_minus_exp, one_minus_exp_over_x or x_over_one_minus_exp.
    #[arg(long)]
    pub series: String,
    /// Degree-two class, e.g. "h1 + h2".
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
    /// Quantum power applied to the result.
    #[arg(long, default_value_t = 1)]
    pub power: u32,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Args)]
pub struct NmArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Subcommand)]
pub enum JfunCmd {
    /// Print one J-function coefficient.
    Coeff {
        #[command(flatten)]
        nm: NmArgs,
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        d2: u32,
        /// Use the J-function of the product of projective spaces.
        #[arg(long)]
        product: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Both difference equations at every degree, with controls.
    Verify {
        #[command(flatten)]
        nm: NmArgs,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Vanishing at ħ = ∞ by degree comparison.
    Infinity {
        #[command(flatten)]
        nm: NmArgs,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdentityCmd {
    /// Alternating binomial sum identity for all n <= max-n.
    Binomial {
        #[arg(long, default_value_t = 12)]
        max_n: i64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Reduction of F2 modulo F1; one (n, m) or every 3 <= m <= n <= max-n.
    F2Reduction {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum MirrorCmd {
    /// Jacobi ideal memberships, elimination chain and determinant witness.
    Verify {
        #[arg(long)]
        n: u32,
        /// Truncation of the determinant witness.
        #[arg(long, default_value_t = 6)]
        trunc: u32,
        #[arg(long, default_value_t = qchar_core::groebner::DEFAULT_STEP_CAP)]
        step_cap: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Multiplication by h1 + h2 is injective on the truncated module.
    Nzd {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 6)]
        trunc: u32,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClassicalCmd {
    /// Dimension of the classical limit against the geometric prediction.
    Dim {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Classical Chern character of a K-class, and its agreement with the
    /// q = 0 limit of the quantum Chern character on every basis monomial.
    Chern {
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::error_code(&e))
        }
    }
}
