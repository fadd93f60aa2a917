use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use omega_core::exact::rational::parse;
use omega_core::exact::Rational;

use crate::document::Format;

fn rational(s: &str) -> Result<Rational, String> {
    parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "omega", version, about = "Exact genus-zero Chiodo integrals, vanishing relations and Hurwitz numbers")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Intersection-number cache file, loaded at startup and appended to.
    #[arg(long, env = "OMEGA_CACHE_PATH", global = true)]
    pub cache_path: Option<PathBuf>,

    /// Turn the intersection-number cache off.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Largest degree handed to the symmetric-group enumeration.
    #[arg(long, default_value_t = 8, global = true)]
    pub max_degree_cap: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct OmegaArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long, default_value_t = 0)]
    pub s: u32,
    /// Weights a_1,…,a_n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub a: Vec<i64>,
    #[arg(long, value_parser = rational, default_value = "1")]
    pub xscale: Rational,
}

#[derive(Debug, Args, Clone)]
pub struct RelationArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    pub mu: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub b: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DenominatorArg {
    Rscaled,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracle,
    #[value(alias = "moebius")]
    Fock,
    Elsv,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ∫ Ω ∏ ψ_i^{e_i} over the n-pointed genus-zero space.
    OmegaIntegral {
        #[command(flatten)]
        omega: OmegaArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        psi: Vec<u32>,
    },
    /// ∫ Ω / (1 - c x ψ_point) as a polynomial in x.
    DescendantPoly {
        #[command(flatten)]
        omega: OmegaArgs,
        /// Marking, 1-based.
        #[arg(long, default_value_t = 1)]
        point: usize,
        /// rscaled: c = 1/r; plain: c = 1. Default: rscaled when xscale = 1.
        #[arg(long, value_enum)]
        denominator: Option<DenominatorArg>,
    },
    /// Evaluates the full vanishing relation and its condition flags.
    TrRelation {
        #[command(flatten)]
        relation: RelationArgs,
    },
    /// Compares engine output with a closed form or an invariant.
    Verify {
        #[command(subcommand)]
        kind: VerifyCommand,
    },
    /// Connected double Hurwitz number with full r-ramification.
    Hurwitz {
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<u32>,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
    },
    /// Interpolates the normalized counts in fixed residue classes.
    Interpolate {
        #[arg(long)]
        r: u32,
        /// Weights -μ̄_i in 0..r.
        #[arg(long, value_delimiter = ',', required = true)]
        residues: Vec<u32>,
        #[arg(long, value_enum, default_value = "oracle")]
        method: MethodArg,
    },
    /// Recomputes the worked examples.
    Reproduce {
        #[arg(long)]
        section: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Weierstrass family, g = 1..=gmax.
    Afandi {
        #[arg(long)]
        gmax: u32,
        #[arg(long, default_value_t = 0)]
        a_extra: u32,
    },
    /// Non-Weierstrass family, g = 1..=gmax.
    NonWeierstrass {
        #[arg(long)]
        gmax: u32,
        #[arg(long, default_value_t = 0)]
        a_extra: u32,
    },
    /// One-descendant formula for weights (-μ̄, b).
    HigherR {
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
        /// Default: the value fixed by the congruence.
        #[arg(long)]
        mu_bar: Option<u32>,
    },
    /// The full relation vanishes.
    TrVanishing {
        #[command(flatten)]
        relation: RelationArgs,
    },
    /// Appending a weight-s point multiplies by x/r.
    String {
        #[command(flatten)]
        omega: OmegaArgs,
        #[arg(long, default_value_t = 1)]
        point: usize,
    },
    /// Lifting a_index by r.
    Shift {
        #[command(flatten)]
        omega: OmegaArgs,
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 1)]
        point: usize,
    },
    /// Low-order vanishing below the degree bound.
    Jkv {
        #[command(flatten)]
        omega: OmegaArgs,
        #[arg(long, default_value_t = 1)]
        point: usize,
    },
}
