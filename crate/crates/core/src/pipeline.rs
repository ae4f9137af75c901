//! End-to-end run over one benchmark cell: weights, match, evaluate.

use serde::{Deserialize, Serialize};

use crate::benchgen::{generate, BenchSpec, Benchmark};
use crate::error::Result;
use crate::eval::{evaluate, EvalReport};
use crate::matching::{match_kbs, AlignmentSet, MatchConfig, SchemaAlignment};
use crate::weights::{compute_weights, WeightConfig, WeightTable};

/// How property weights are obtained for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    #[default]
    Computed,
    /// Every property weighs 1.0.
    Uniform,
}

/// Weight tables for a left/right KB pair.
pub fn weigh(
    bench: &Benchmark,
    weighting: Weighting,
    config: &WeightConfig,
) -> Result<(WeightTable, WeightTable)> {
    let right = &bench.transformed.kb;
    Ok(match weighting {
        Weighting::Computed => (
            compute_weights(&bench.base, config)?.with_provenance("base"),
            compute_weights(right, config)?.with_provenance("transformed"),
        ),
        Weighting::Uniform => (
            WeightTable::uniform(bench.base.properties(), *config),
            WeightTable::uniform(right.properties(), *config),
        ),
    })
}

/// Match the base against its transformed copy using the generated
/// schema alignment.
pub fn match_benchmark(
    bench: &Benchmark,
    weighting: Weighting,
    weight_config: &WeightConfig,
    match_config: &MatchConfig,
) -> Result<AlignmentSet> {
    let (lw, rw) = weigh(bench, weighting, weight_config)?;
    let t = &bench.transformed;
    let (align, warnings) = SchemaAlignment::classify(&t.schema_alignment, &bench.base, &t.kb, true);
    for w in warnings {
        log::warn!("{w}");
    }
    match_kbs(&bench.base, &t.kb, &align, &lw, &rw, match_config)
}

/// Generate, match and evaluate one (family, intensity, seed) cell.
pub fn run_cell(
    spec: &BenchSpec,
    weighting: Weighting,
    weight_config: &WeightConfig,
    match_config: &MatchConfig,
) -> Result<EvalReport> {
    let bench = generate(spec)?;
    let predicted = match_benchmark(&bench, weighting, weight_config, match_config)?;
    Ok(evaluate(&predicted, &bench.transformed.gold).with_cell(spec.family.to_string(), spec.intensity))
}
