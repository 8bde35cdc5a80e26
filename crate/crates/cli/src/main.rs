// SPDX-License-Identifier: Apache-2.0

//! `revsynth` command-line front end.
//!
//! Exit codes: 0 success or verification pass, 1 verification failure,
//! 2 input error (unreadable file, parse failure, bad flag), 3 internal
//! invariant violation.

mod commands;
mod output;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "revsynth",
    version,
    about = "Reversible logic synthesis with mixed-polarity Toffoli gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a circuit from a `.rspec` specification.
    Synth(SynthArgs),
    /// Check a `.circ` circuit against a `.rspec` specification.
    Verify(VerifyArgs),
    /// Shrink a circuit with the reduction passes.
    Optimize(OptimizeArgs),
    /// Embed an irreversible `.itable` into a reversible specification.
    Embed(EmbedArgs),
    /// Print metrics of a specification.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    /// Place the value sitting in the lowest misplaced slot first.
    #[value(alias = "bsssn")]
    Ascending,
    /// Place the lowest misplaced value first.
    #[value(alias = "var", alias = "var-bsssn")]
    LowestValue,
    /// Place a random misplaced value; best of `--trials` runs.
    Random,
}

impl From<StrategyArg> for revsynth::Strategy {
    fn from(arg: StrategyArg) -> Self {
        match arg {
            StrategyArg::Ascending => Self::Ascending,
            StrategyArg::LowestValue => Self::LowestValue,
            StrategyArg::Random => Self::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    Low,
    High,
}

impl From<TieBreakArg> for revsynth::TieBreak {
    fn from(arg: TieBreakArg) -> Self {
        match arg {
            TieBreakArg::Low => Self::Low,
            TieBreakArg::High => Self::High,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    /// Sort the specification; the circuit realizes it in reversed order.
    Output,
    /// Sort the inverse; the circuit realizes the specification in listed order.
    Input,
}

impl From<DirectionArg> for revsynth::Direction {
    fn from(arg: DirectionArg) -> Self {
        match arg {
            DirectionArg::Output => Self::OutputTranslation,
            DirectionArg::Input => Self::InputTranslation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Listed,
    Reversed,
}

impl From<OrderArg> for revsynth::Order {
    fn from(arg: OrderArg) -> Self {
        match arg {
            OrderArg::Listed => Self::Listed,
            OrderArg::Reversed => Self::Reversed,
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Specification file.
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value = "ascending")]
    pub strategy: StrategyArg,
    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent runs of the random strategy; the smallest circuit wins.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, value_enum, default_value = "low")]
    pub tie_break: TieBreakArg,
    #[arg(long, value_enum, default_value = "output")]
    pub direction: DirectionArg,
    /// Where to write the `.circ` file.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Circuit file.
    pub circuit: PathBuf,
    /// Specification file.
    pub spec: PathBuf,
    /// Application order; defaults to the file's `# order:` annotation, then `listed`.
    #[arg(long, value_enum)]
    pub order: Option<OrderArg>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Circuit file.
    pub circuit: PathBuf,
    /// Disable removal of gate pairs that cancel.
    #[arg(long)]
    pub no_pairs: bool,
    /// Disable the peephole templates.
    #[arg(long)]
    pub no_templates: bool,
    /// Disable merging of gates separated by commuting gates.
    #[arg(long)]
    pub no_commuting: bool,
    /// Also delete controls that the realized function does not need.
    #[arg(long, requires = "spec")]
    pub reduce_controls: bool,
    /// Specification realized by the circuit (needed by `--reduce-controls`).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Order under which the circuit realizes `--spec`; defaults to the
    /// file's annotation, then `reversed`.
    #[arg(long, value_enum)]
    pub order: Option<OrderArg>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Irreversible truth table file.
    pub table: PathBuf,
    /// Where to write the `.rspec` file.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Sidecar report path; defaults to `<output>.report` when `--output` is given.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Specification file.
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(args) => commands::synth(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Optimize(args) => commands::optimize(&args),
        Command::Embed(args) => commands::embed(&args),
        Command::Stats(args) => commands::stats(&args),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            match failure {
                Failure::Input(_) => ExitCode::from(2),
                Failure::Invariant(_) => ExitCode::from(3),
            }
        }
    }
}
