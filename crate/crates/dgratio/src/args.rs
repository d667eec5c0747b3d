//! Command-line grammar.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dgratio_core::{DistanceSet, Method};

#[derive(Parser, Debug)]
#[command(name = "dgratio", version, about = "Independence ratios of integer distance graphs")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the independence ratio of G(S).
    Compute(ComputeArgs),
    /// Check a periodic set given in block notation.
    Blocks(BlocksArgs),
    /// Check a catalog family against the engines.
    Verify(VerifyArgs),
    /// Grid of ratios for S = {1, 1+k, 1+k+i}, as CSV.
    Table(TableArgs),
    /// List the catalog of closed forms.
    Families,
    /// Minimum density of a dominating set.
    Domination(SetArg),
    /// Minimum density of an r-identifying code.
    Idcode(IdcodeArgs),
    /// Periodic proper coloring with k colors.
    Coloring(ColoringArgs),
    /// Fractional chromatic number.
    #[command(name = "chi-f")]
    ChiF(SetArg),
}

#[derive(Args, Debug)]
pub struct SetArg {
    /// Distances, comma separated (e.g. 1,4,7).
    #[arg(long, value_parser = parse_set)]
    pub set: DistanceSet,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArgs {
    /// Search-node budget [env: DGRATIO_BUDGET].
    #[arg(long)]
    pub budget: Option<u64>,
    /// Wall-clock limit in seconds for each computation.
    #[arg(long)]
    pub timeout: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum MethodArg {
    #[default]
    Auto,
    Search,
    Stategraph,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Search => Method::Search,
            MethodArg::Stategraph => Method::StateGraph,
        }
    }
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub set: SetArg,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct BlocksArgs {
    #[command(flatten)]
    pub set: SetArg,
    /// Block notation, e.g. "(2 3)^5 7".
    #[arg(long)]
    pub blocks: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub family: String,
    /// Values of the family's sweep parameter, `A..B` inclusive.
    #[arg(long, value_parser = parse_range)]
    pub range: RangeInclusive<u64>,
    /// Fix another parameter, `name=value` (repeatable).
    #[arg(long = "param", value_parser = parse_param)]
    pub params: Vec<(String, u64)>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_range)]
    pub k: RangeInclusive<u64>,
    #[arg(long, value_parser = parse_range)]
    pub i: RangeInclusive<u64>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IdcodeArgs {
    #[command(flatten)]
    pub set: SetArg,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
}

#[derive(Args, Debug)]
pub struct ColoringArgs {
    #[command(flatten)]
    pub set: SetArg,
    #[arg(long)]
    pub k: u32,
}

pub fn parse_set(text: &str) -> Result<DistanceSet, String> {
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    let items = body
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("`{}`: {e}", t.trim())))
        .collect::<Result<Vec<_>, _>>()?;
    DistanceSet::from_signed(items).map_err(|e| e.to_string())
}

/// `A..B` (inclusive), `A..=B`, or a single value.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{}`: {e}", t.trim()));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(text)?;
            (a, a)
        }
    };
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

pub fn parse_param(text: &str) -> Result<(String, u64), String> {
    let (name, value) = text.split_once('=').ok_or("expected name=value")?;
    let value = value.trim().parse::<u64>().map_err(|e| e.to_string())?;
    Ok((name.trim().to_string(), value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_and_ranges() {
        assert_eq!(parse_set("1,4,7").unwrap().as_slice(), &[1, 4, 7]);
        assert_eq!(parse_set("{7, 1}").unwrap().as_slice(), &[1, 7]);
        assert!(parse_set("1,0").is_err());
        assert!(parse_set("1,x").is_err());
        assert_eq!(parse_range("5..40").unwrap(), 5..=40);
        assert_eq!(parse_range("5..=6").unwrap(), 5..=6);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("4..2").is_err());
        assert_eq!(parse_param("l=3").unwrap(), ("l".to_string(), 3));
    }
}
