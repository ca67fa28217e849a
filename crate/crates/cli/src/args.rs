use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phs::compile::{Fragment, DEFAULT_BUDGET};
use phs::corpus::DEFAULT_TRACE_BUDGET;
use phs::rewrite::Stage;
use phs::syntax::parser::Dialect;

#[derive(Debug, Parser)]
#[command(name = "phs", version, about = "Parametric interval temporal logic toolkit")]
pub struct Cli {
    /// Report format: one JSON object per line, or `key: value` text.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include wall-clock stage timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula and print its normalised rendering.
    Parse(FormulaArgs),
    /// Apply a rewriting stage.
    Rewrite {
        #[command(flatten)]
        input: FormulaArgs,
        #[arg(long, default_value = "pipeline", value_parser = parse_stage)]
        stage: Stage,
        /// Colour atom; defaults to a fresh one.
        #[arg(long)]
        color: Option<String>,
        /// Also report the applied rules.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a formula on a lasso trace.
    Eval {
        #[command(flatten)]
        input: FormulaArgs,
        #[arg(long, value_name = "FILE")]
        trace: PathBuf,
        #[arg(long, default_value = "")]
        valuation: String,
        /// Interval `i:j` (position `i` for hybrid formulas).
        #[arg(long, default_value = "0:0")]
        interval: String,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Translate to hybrid logic or compile to a Büchi automaton.
    Compile {
        #[command(flatten)]
        input: FormulaArgs,
        #[arg(long, value_enum, default_value_t = Target::Nba)]
        to: Target,
        #[arg(long, default_value = "auto", value_parser = parse_fragment)]
        fragment: Fragment,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        /// Write the emitted automaton here instead of into the report.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Include per-subformula sizes.
        #[arg(long)]
        report: bool,
        /// Compile the coloured prompt formula of a parametric input.
        #[arg(long)]
        colored: bool,
    },
    /// Decide satisfiability.
    Sat {
        #[command(flatten)]
        input: FormulaArgs,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long, value_name = "FILE")]
        emit_witness: Option<PathBuf>,
        /// Shrink the upward values on the witness trace.
        #[arg(long)]
        minimize: bool,
        /// Write rewritten formulas and the automaton into this directory.
        #[arg(long, value_name = "DIR")]
        dump: Option<PathBuf>,
    },
    /// Decide whether some valuation makes every path of a model satisfy the formula.
    Mc {
        #[command(flatten)]
        input: FormulaArgs,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
        /// Pump a counterexample so that every colour block has this many positions.
        #[arg(long, value_name = "K")]
        pump: Option<usize>,
        #[arg(long, value_name = "DIR")]
        dump: Option<PathBuf>,
    },
    /// Generate benchmark families.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Longest trace prefix to write.
        #[arg(long, default_value_t = DEFAULT_TRACE_BUDGET)]
        trace_budget: usize,
        /// Random family: generator seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random family: profile name.
        #[arg(long, default_value = "tiny")]
        profile: String,
        /// Random family: number of instances.
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Formula file.
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
    /// Formula file (alternative spelling).
    #[arg(long = "formula", value_name = "FILE")]
    pub formula_file: Option<PathBuf>,
    /// Inline formula text.
    #[arg(long, short = 'e', value_name = "TEXT")]
    pub expr: Option<String>,
}

#[derive(Debug, Args)]
pub struct FormulaArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "phs", value_parser = parse_dialect)]
    pub dialect: Dialect,
}

#[derive(Debug, Args)]
pub struct BudgetArg {
    /// State budget for automata constructions.
    #[arg(long, env = "PHS_BUDGET", default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Hl,
    Nba,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Hoa,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Yardstick,
    SatLb,
    McLb,
    Succinct,
    Random,
}

fn parse_stage(s: &str) -> Result<Stage, String> {
    s.parse()
}

fn parse_fragment(s: &str) -> Result<Fragment, String> {
    s.parse()
}

fn parse_dialect(s: &str) -> Result<Dialect, String> {
    s.parse()
}

fn parse_budget(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}
