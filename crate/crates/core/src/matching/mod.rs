//! Instance matching over Semantic Link Clouds.

mod affinity;
mod alignment;
mod block;
mod similarity;
mod slc;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kb::{Iri, KnowledgeBase};
use crate::weights::WeightTable;

pub use affinity::{affinity, affinity_detail, AffinityDetail, DEFAULT_WEIGHT};
pub use alignment::{AlignmentSet, SchemaAlignment};
pub use block::{block, type_block};
pub use similarity::value_similarity;
pub use slc::{generate_slc, Slc};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchConfig {
    /// Minimum affinity for a pair to be reported.
    pub delta2: f64,
    /// Fraction of one-sided property weight removed from the denominator.
    pub gamma_coeff: f64,
    /// SLC link depth.
    pub depth: usize,
    /// Value similarity below this counts as no evidence.
    pub sim_floor: f64,
    /// Keep only the best pair for each left instance.
    pub one_per_left: bool,
}

impl MatchConfig {
    pub const DEFAULT_DELTA2: f64 = 0.7;
    pub const DEFAULT_GAMMA_COEFF: f64 = 0.5;
    pub const DEFAULT_DEPTH: usize = 1;
    pub const DEFAULT_SIM_FLOOR: f64 = 0.6;

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("delta2", self.delta2),
            ("gamma_coeff", self.gamma_coeff),
            ("sim_floor", self.sim_floor),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        Ok(())
    }
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            delta2: Self::DEFAULT_DELTA2,
            gamma_coeff: Self::DEFAULT_GAMMA_COEFF,
            depth: Self::DEFAULT_DEPTH,
            sim_floor: Self::DEFAULT_SIM_FLOOR,
            one_per_left: true,
        }
    }
}

/// An instance prepared for matching: its SLC and related-concept block.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub slc: Slc,
    pub block: BTreeSet<Iri>,
}

pub fn prepare(kb: &KnowledgeBase, depth: usize) -> Vec<Candidate> {
    kb.instances()
        .map(|inst| Candidate {
            slc: generate_slc(kb, inst.id(), depth).expect("instance taken from the KB"),
            block: type_block(kb, inst.types()),
        })
        .collect()
}

/// Whether some aligned concept pair falls into the two blocks.
pub fn gate(left_block: &BTreeSet<Iri>, right_block: &BTreeSet<Iri>, align: &SchemaAlignment) -> bool {
    if align.same_schema && !left_block.is_disjoint(right_block) {
        return true;
    }
    align
        .concept_pairs
        .iter()
        .any(|(c1, c2)| left_block.contains(c1) && right_block.contains(c2))
}

/// Score every gate-passing pair and keep those at or above `delta2`.
///
/// The two weight tables are merged (mean on shared properties) and used for
/// both sides. Rows are scored in parallel on the current rayon pool; the
/// result is canonical regardless of scheduling.
pub fn match_kbs(
    left: &KnowledgeBase,
    right: &KnowledgeBase,
    align: &SchemaAlignment,
    left_weights: &WeightTable,
    right_weights: &WeightTable,
    cfg: &MatchConfig,
) -> Result<AlignmentSet> {
    cfg.validate()?;
    if left.is_empty() || right.is_empty() {
        log::warn!("matching against an empty knowledge base yields no pairs");
        return Ok(AlignmentSet::new());
    }
    let weights = left_weights.merged(right_weights);
    let lc = prepare(left, cfg.depth);
    let rc = prepare(right, cfg.depth);

    let rows: Vec<Vec<(Iri, Iri, f64)>> = lc
        .par_iter()
        .map(|a| {
            rc.iter()
                .filter(|b| gate(&a.block, &b.block, align))
                .filter_map(|b| {
                    let score = affinity(&a.slc, &b.slc, &weights, align, cfg);
                    (score >= cfg.delta2).then(|| (a.slc.owner.clone(), b.slc.owner.clone(), score))
                })
                .collect()
        })
        .collect();

    let all: AlignmentSet = rows.into_iter().flatten().collect();
    Ok(if cfg.one_per_left { all.best_per_left() } else { all })
}
