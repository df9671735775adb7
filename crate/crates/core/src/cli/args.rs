use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::Dyadic;

#[derive(Debug, Parser)]
#[command(
    name = "ped",
    version,
    about = "Preimage entropy and preimage entropy dimension estimates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate preimage entropy, dimension and the s-curve of one system.
    Estimate(EstimateArgs),
    /// Run verification suites on the corpus.
    Verify(VerifyArgs),
    /// Compare preimage and topological estimates across several systems.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KPolicyArg {
    Saturate,
    Double,
    List,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Window lengths: "A..B" (inclusive) or a comma list.
    #[arg(long, default_value = "1..=8")]
    pub n: String,
    /// Dyadic scales, comma separated (e.g. "1/2,1/4").
    #[arg(long, default_value = "1/2,1/4")]
    pub eps: String,
    /// Exponents for the s-curve, comma separated.
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long, value_enum, default_value = "saturate")]
    pub k_policy: KPolicyArg,
    /// Preimage depths when --k-policy list is used.
    #[arg(long)]
    pub k: Option<String>,
    /// Branch-and-bound node budget per count.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Components up to this size are solved exactly without a budget check.
    #[arg(long)]
    pub threshold: Option<usize>,
    /// Largest preimage set that will be enumerated.
    #[arg(long)]
    pub max_candidates: Option<usize>,
    /// Largest number of distance comparisons per count.
    #[arg(long)]
    pub max_pairs: Option<u64>,
    /// JSON file holding an array of base points.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long)]
    pub tau: Option<f64>,
    /// Skip the minimal spanning counts.
    #[arg(long)]
    pub no_spanning: bool,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Builtin name, JSON path, or an expression like "shift:2*golden-mean" or "shift:2^2".
    #[arg(long)]
    pub system: Option<String>,
    /// Product of two systems: "A,B".
    #[arg(long)]
    pub product: Option<String>,
    /// Power of a system: "SYSTEM,M".
    #[arg(long)]
    pub power: Option<String>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Count over a sample of the whole space instead of preimage sets.
    #[arg(long)]
    pub topological: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or "all".
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Power exponents, comma separated.
    #[arg(long)]
    pub m: Option<String>,
    /// Corpus JSON file; the built-in corpus is used otherwise.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write the reports as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated system expressions.
    #[arg(long, default_value = "identity8,golden-mean,shift:2")]
    pub systems: String,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Combined CSV for all systems.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses "A..B" (both ends included; "A..=B" is also accepted) or "a,b,c".
pub fn parse_n_range(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let bad = || Error::Config(format!("cannot read range {s:?}; use A..B or a comma list"));
    let num = |t: &str| {
        t.trim()
            .trim_start_matches('=')
            .parse::<usize>()
            .map_err(|_| bad())
    };
    let v: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if v.is_empty() {
        return Err(bad());
    }
    Ok(v)
}

pub fn parse_eps_list(s: &str) -> Result<Vec<Dyadic>> {
    s.split(',').map(|t| t.parse::<Dyadic>()).collect()
}

pub(crate) fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("not a number: {t:?}")))
        })
        .collect()
}

pub(crate) fn parse_exponents(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::Config(format!("not a positive integer: {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_n_range("2..=5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_n_range("1, 4,9").unwrap(), vec![1, 4, 9]);
        assert!(parse_n_range("5..2").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn eps_lists() {
        assert_eq!(parse_eps_list("1/2,1/4").unwrap().len(), 2);
        assert!(parse_eps_list("0.5").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
