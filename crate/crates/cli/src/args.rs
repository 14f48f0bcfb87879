use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degree_trees::{DegreeRule, DegreeSet};
use serde::{Serialize, Serializer};

use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "degree-trees", version, about = "Exact counts, recurrences and degree statistics of labeled trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; `report` defaults to markdown, everything else to plain.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for the sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest n accepted by the exhaustive oracle commands.
    #[arg(long, global = true, default_value_t = 9)]
    pub max_oracle_n: usize,

    /// Largest sequence length (and vertex count) accepted by the counting commands.
    #[arg(long, global = true, default_value_t = 5000)]
    pub max_terms: usize,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "DEGREE_TREES_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
    Plain,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", content = "args", rename_all = "snake_case")]
pub enum Command {
    /// Counts for n = 2..=terms, one per line.
    Seq(SeqArgs),
    /// A single count.
    Count(CountArgs),
    /// Guess a polynomial-coefficient recurrence for the counting sequence.
    Rec(RecArgs),
    /// Growth constant c in a(n) ~ c^n n! from ratio extrapolation.
    Asym(AsymArgs),
    /// Limiting degree distribution of trees with allowed degrees.
    Dist(DistArgs),
    /// Exact moments of degree counts in uniform random trees.
    Moments(MomentsArgs),
    /// Standardized moments over several n, extrapolated to the limit.
    Normality(NormalityArgs),
    /// Brute force over Prüfer codes, and random sampling.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Survey of every degree set up to a bound.
    Report(ReportArgs),
}

impl Command {
    /// Format used when `--format` is absent.
    pub fn default_format(&self) -> Format {
        match self {
            Command::Report(_) => Format::Markdown,
            _ => Format::Plain,
        }
    }
}

/// Exactly one of `--allowed` and `--forbidden`; serialized as the rule itself.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct RuleArgs {
    /// Comma-separated allowed degrees, e.g. 1,3,4.
    #[arg(long, value_name = "LIST")]
    pub allowed: Option<DegreeSet>,
    /// Comma-separated forbidden degrees; "" forbids nothing.
    #[arg(long, value_name = "LIST")]
    pub forbidden: Option<DegreeSet>,
}

impl RuleArgs {
    pub fn rule(&self) -> Result<DegreeRule, Failure> {
        match (&self.allowed, &self.forbidden) {
            (Some(p), None) => Ok(DegreeRule::allowed(p.iter())?),
            (None, Some(f)) => Ok(DegreeRule::forbidden(f.iter())?),
            _ => Err(Failure::Usage("give exactly one of --allowed and --forbidden".into())),
        }
    }
}

impl Serialize for RuleArgs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match (&self.allowed, &self.forbidden) {
            (Some(p), _) => s.serialize_str(&format!("allowed{p}")),
            (_, Some(f)) => s.serialize_str(&format!("forbidden{f}")),
            _ => s.serialize_none(),
        }
    }
}

fn display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SeqArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Last vertex count; the output covers n = 2..=terms.
    #[arg(long)]
    pub terms: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RecArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long, default_value_t = 60)]
    pub terms: usize,
    #[arg(long, default_value_t = 3)]
    pub max_order: usize,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    /// Trailing terms held out of the fit and checked exactly.
    #[arg(long, default_value_t = 10)]
    pub verify: usize,
    /// Also extend the sequence to this n with the recurrence and compare with direct counts.
    #[arg(long)]
    pub extend: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AsymArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long, default_value_t = 200)]
    pub terms: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DistArgs {
    #[arg(long, value_name = "LIST")]
    #[serde(serialize_with = "display")]
    pub allowed: DegreeSet,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Also report exact finite-n degree fractions at this n.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentsArgs {
    #[arg(long, conflicts_with_all = ["d1", "d2"], required_unless_present_all = ["d1", "d2"])]
    pub d: Option<u32>,
    #[arg(long, requires = "d2")]
    pub d1: Option<u32>,
    #[arg(long, requires = "d1")]
    pub d2: Option<u32>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub upto: usize,
    #[arg(long, default_value_t = 2)]
    pub k1: usize,
    #[arg(long, default_value_t = 2)]
    pub k2: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NormalityArgs {
    #[arg(long, conflicts_with_all = ["d1", "d2"], required_unless_present_all = ["d1", "d2"])]
    pub d: Option<u32>,
    #[arg(long, requires = "d2")]
    pub d1: Option<u32>,
    #[arg(long, requires = "d1")]
    pub d2: Option<u32>,
    #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
    pub n_list: Vec<usize>,
    /// Mixed orders k1:k2 for the joint diagnostics.
    #[arg(long, value_delimiter = ',', default_value = "1:1,2:1,1:2,2:2")]
    pub orders: Vec<Order>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Order(pub usize, pub usize);

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected k1:k2, got {s:?}"))?;
        let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
        Ok(Order(parse(a)?, parse(b)?))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.0, self.1)
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        display(self, s)
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "mode", content = "args", rename_all = "snake_case")]
pub enum OracleCommand {
    /// Count trees by enumerating every Prüfer code.
    Count(CountArgs),
    /// Exact joint law of degree counts by enumeration.
    Stats(OracleStatsArgs),
    /// Uniform random trees from a seeded generator.
    Sample(OracleSampleArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleStatsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub degrees: Vec<u32>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleSampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    /// Summarize the number of vertices of this degree instead of listing trees.
    #[arg(long)]
    pub degree: Option<u32>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReportArgs {
    /// Survey every allowed set P ⊆ {1..M} with 1 ∈ P.
    #[arg(long, value_name = "M", conflicts_with = "forbidden_upto", required_unless_present = "forbidden_upto")]
    pub max_degree: Option<u32>,
    /// Survey every forbidden set F ⊆ {2..M}.
    #[arg(long, value_name = "M")]
    pub forbidden_upto: Option<u32>,
    /// Last vertex count listed for each set.
    #[arg(long, default_value_t = 40)]
    pub terms: usize,
    #[arg(long, default_value_t = 2)]
    pub rec_order: usize,
    #[arg(long, default_value_t = 3)]
    pub rec_degree: usize,
}
