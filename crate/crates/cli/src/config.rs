use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

/// Environment variable naming the directory reports go to when no
/// `--output` is given.
pub const OUTPUT_DIR_ENV: &str = "CLONOT_OUTPUT_DIR";

pub const RELATION_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum UsageError {
    #[error("invalid range '{0}': expected N or LO:HI with LO <= HI")]
    BadRange(String),
    #[error("no (N, M) pair with 1 <= N < M in the given ranges")]
    NoScenario,
    #[error("{0}")]
    Invalid(String),
}

/// Inclusive integer range, written `7` or `2:9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: u32,
    pub hi: u32,
}

impl IndexRange {
    pub fn single(v: u32) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl FromStr for IndexRange {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || UsageError::BadRange(s.to_string());
        let (lo, hi) = match s.split_once(':') {
            Some((lo, hi)) => (
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let v = s.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}:{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Relation,
    Optimal,
    Equivalence,
    Sweep,
    Ledger,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Relation => "relation",
            Command::Optimal => "optimal",
            Command::Equivalence => "equivalence",
            Command::Sweep => "sweep",
            Command::Ledger => "ledger",
        }
    }
}

/// Fully resolved run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: IndexRange,
    pub m: IndexRange,
    pub copies: IndexRange,
    /// Reservoir pairs for `ledger`; `None` means `L = M`.
    pub reservoir: Option<u32>,
    pub samples: usize,
    pub haar_samples: usize,
    pub seed: u64,
    /// Overrides the per-check defaults when set.
    pub tolerance: Option<f64>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: IndexRange::single(1),
            m: IndexRange::single(2),
            copies: IndexRange::single(2),
            reservoir: None,
            samples: 100,
            haar_samples: 20,
            seed: 0,
            tolerance: None,
            format: Format::Csv,
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(UsageError::Invalid(format!(
                    "tolerance must be positive, got {t}"
                )));
            }
        }
        if matches!(
            self.command,
            Command::Relation | Command::Equivalence | Command::Ledger | Command::Sweep
        ) && self.samples == 0
        {
            return Err(UsageError::Invalid("samples must be at least 1".into()));
        }
        if self.command == Command::Sweep && self.haar_samples < 2 {
            return Err(UsageError::Invalid(
                "haar-samples must be at least 2".into(),
            ));
        }
        if self.command == Command::Equivalence && self.copies.lo == 0 {
            return Err(UsageError::Invalid("copies must be at least 1".into()));
        }
        if self.command != Command::Equivalence && self.scenarios().is_empty() {
            return Err(UsageError::NoScenario);
        }
        Ok(())
    }

    /// `(N, M)` pairs with `1 <= N < M`, ordered by `N` then `M`.
    pub fn scenarios(&self) -> Vec<(u32, u32)> {
        self.n
            .iter()
            .flat_map(|n| self.m.iter().map(move |m| (n, m)))
            .filter(|&(n, m)| n >= 1 && m > n)
            .collect()
    }

    pub fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "clonot",
    version,
    about = "Verify the cloning / universal-NOT fidelity relations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// (M-N)·F_NOT = M·F_clone - N over random outcome distributions.
    Relation(ScenarioArgs),
    /// Optimal fidelities from the symmetric-projection cloner (M <= 10).
    Optimal(ScenarioArgs),
    /// Overlap of the tensor-power and two-mode descriptions.
    Equivalence(EquivalenceArgs),
    /// Relation, ordering, optimal fidelities and universality per (N, M).
    Sweep(SweepArgs),
    /// Conservation bookkeeping and output-state audits.
    Ledger(LedgerArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Pass threshold for every row; defaults to 1e-12 for relation and
    /// overlap checks and 1e-9 for the quantum layer.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Report file; falls back to $CLONOT_OUTPUT_DIR/<command>.<format>,
    /// then stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Input count N, or a range LO:HI.
    #[arg(long, default_value = "1")]
    pub n: IndexRange,
    /// Output count M, or a range LO:HI.
    #[arg(long, default_value = "2")]
    pub m: IndexRange,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct EquivalenceArgs {
    /// Number of particles, or a range LO:HI.
    #[arg(long, default_value = "2")]
    pub copies: IndexRange,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Haar-random inputs per cell for the universality spread.
    #[arg(long, default_value_t = 20)]
    pub haar_samples: usize,
}

#[derive(Debug, Args)]
pub struct LedgerArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Initial reservoir pairs L (defaults to M).
    #[arg(long)]
    pub l: Option<u32>,
}

impl CliCommand {
    pub fn common(&self) -> &CommonArgs {
        match self {
            CliCommand::Relation(a) | CliCommand::Optimal(a) => &a.common,
            CliCommand::Equivalence(a) => &a.common,
            CliCommand::Sweep(a) => &a.scenario.common,
            CliCommand::Ledger(a) => &a.scenario.common,
        }
    }

    pub fn to_config(&self) -> RunConfig {
        let common = self.common();
        let (command, scenario) = match self {
            CliCommand::Relation(a) => (Command::Relation, Some(a)),
            CliCommand::Optimal(a) => (Command::Optimal, Some(a)),
            CliCommand::Equivalence(_) => (Command::Equivalence, None),
            CliCommand::Sweep(a) => (Command::Sweep, Some(&a.scenario)),
            CliCommand::Ledger(a) => (Command::Ledger, Some(&a.scenario)),
        };
        let mut config = RunConfig::new(command);
        if let Some(s) = scenario {
            config.n = s.n;
            config.m = s.m;
        }
        match self {
            CliCommand::Equivalence(a) => config.copies = a.copies,
            CliCommand::Sweep(a) => config.haar_samples = a.haar_samples,
            CliCommand::Ledger(a) => config.reservoir = a.l,
            _ => {}
        }
        config.samples = common.samples;
        config.seed = common.seed;
        config.tolerance = common.tolerance;
        config.format = common.format;
        config
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!("3".parse(), Ok(IndexRange::single(3)));
        assert_eq!("2:9".parse(), Ok(IndexRange { lo: 2, hi: 9 }));
        assert!("9:2".parse::<IndexRange>().is_err());
        assert!("x".parse::<IndexRange>().is_err());
        assert_eq!(IndexRange { lo: 2, hi: 9 }.to_string(), "2:9");
    }

    #[test]
    fn scenarios_skip_non_cloning_pairs() {
        let mut c = RunConfig::new(Command::Relation);
        c.n = "1:3".parse().unwrap();
        c.m = "2:3".parse().unwrap();
        assert_eq!(c.scenarios(), vec![(1, 2), (1, 3), (2, 3)]);
        c.n = "3:4".parse().unwrap();
        assert_eq!(c.validate(), Err(UsageError::NoScenario));
    }

    #[test]
    fn bad_tolerance_is_a_usage_error() {
        let mut c = RunConfig::new(Command::Optimal);
        c.tolerance = Some(0.0);
        assert!(c.validate().is_err());
        c.tolerance = Some(1e-6);
        assert!(c.validate().is_ok());
    }
}
