//! Experiment driver: seeded replications of AREA or MOEA/D on the
//! benchmark problems, persisted fronts and metrics, rank-sum statistics and
//! plot-ready exports.

pub mod bands;
pub mod error;
pub mod experiment;
pub mod export;
pub mod stats;

pub use error::{HarnessError, Result};
pub use experiment::{
    load_metrics, run_experiment, run_replication, run_replications, Algorithm, ExperimentSpec,
    MetricsDocument, RunOutcome, RunRecord,
};
pub use export::export_plot_data;
pub use stats::{rank_sum_test, sem, RankSum, StatsReport, Summary, Verdict};
