//! The full partitioning pipeline.

use thiserror::Error;

use crate::assign::{concentration_report, expected_coverage, run_trials, ConcentrationParams, TrialsOutcome};
use crate::highlow::{
    build_multigraph, check_partition_inequalities, local_search_partition, settle_isolated_high,
    split_high_low, HighLowSplit, HighPartition, SplitError,
};
use crate::hypergraph::Hypergraph;
use crate::lemma_solve::{compute_profile, normalize, solve_q, EdgeProfile, LemmaError, LemmaInstance, QTriple};

pub const DEFAULT_ALPHA: f64 = 2.0 / 7.0;
pub const DEFAULT_TRIALS: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionConfig {
    pub alpha: f64,
    pub trials: u64,
    /// Seeds the local search and, through `seed + t`, trial `t`.
    pub seed: u64,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("high partition violates its certificate (minimum slack {0})")]
    Certificate(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOutcome {
    pub config: PartitionConfig,
    pub split: HighLowSplit,
    pub high: HighPartition,
    pub profile: EdgeProfile,
    /// `None` when every edge lies inside the high set.
    pub instance: Option<LemmaInstance>,
    pub q: QTriple,
    pub expected: Option<[f64; 3]>,
    pub trials: TrialsOutcome,
    pub concentration: ConcentrationParams,
}

impl PartitionOutcome {
    pub fn coverage(&self) -> [u64; 3] {
        self.trials.best.coverage
    }

    pub fn min_coverage(&self) -> u64 {
        self.trials.best.min_coverage()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.trials.best.assignment
    }
}

/// Split, partition the high vertices, solve for the probabilities and
/// keep the best of `config.trials` random placements.
pub fn partition(h: &Hypergraph, config: &PartitionConfig) -> Result<PartitionOutcome, PipelineError> {
    if config.trials == 0 {
        return Err(PipelineError::NoTrials);
    }
    let split = split_high_low(h, config.alpha)?;
    let g = build_multigraph(h, &split);
    let mut high = local_search_partition(&g, config.seed);
    settle_isolated_high(h, &g, &mut high);
    let report = check_partition_inequalities(&high);
    if !report.all_hold() {
        return Err(PipelineError::Certificate(report.min_slack()));
    }

    let profile = compute_profile(h, &split, &high);
    let (instance, q) = match normalize(&profile) {
        Ok(inst) => {
            let q = solve_q(&inst)?;
            (Some(inst), q)
        }
        Err(LemmaError::Degenerate { .. }) => (None, QTriple::degenerate()),
        Err(e) => return Err(e.into()),
    };
    let expected = instance
        .as_ref()
        .map(|inst| [0, 1, 2].map(|i| expected_coverage(inst, &profile, &q, i)));
    let trials = run_trials(h, &split, &high, &q, config.trials, config.seed);
    let concentration = concentration_report(h, &split, config.alpha);
    Ok(PartitionOutcome {
        config: *config,
        split,
        high,
        profile,
        instance,
        q,
        expected,
        trials,
        concentration,
    })
}
