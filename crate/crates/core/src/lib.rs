//! Exact enumeration of labeled trees whose vertex degrees are restricted to,
//! or excluded from, a finite set, together with recurrence guessing, growth
//! estimates, and exact degree statistics of uniform random labeled trees.
//!
//! Every count is an exact big integer and every moment an exact rational;
//! floating point appears only in final renditions and extrapolated limits.

pub mod asymptotics;
pub mod counting;
pub mod degrees;
pub mod error;
pub mod extrapolate;
pub mod numeric;
pub mod prufer;
pub mod recurrence;
pub mod series;
pub mod stats;

pub use asymptotics::{
    constrained_expected_degree_count, estimate_growth, limiting_degree_distribution, DegreeDistribution,
    GrowthEstimate,
};
pub use counting::{
    count, count_allowed, count_allowed_seq, count_degree_sequence, count_forbidden, count_forbidden_seq, count_seq,
};
pub use degrees::{DegreeRule, DegreeSet};
pub use error::{Error, Result};
pub use prufer::{
    oracle_count, oracle_degree_statistics, sample_degree_counts, sample_tree, sample_trees, JointLaw, LabeledTree,
    PruferSequence,
};
pub use recurrence::{extend_with_recurrence, guess_recurrence, GuessOptions, PRecurrence, Reindex};
pub use series::{EgfSeries, RationalSeries};
pub use stats::{JointNormalityReport, MomentReport, NormalityReport};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
