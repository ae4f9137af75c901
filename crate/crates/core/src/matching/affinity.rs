use std::collections::{BTreeMap, BTreeSet};

use crate::kb::Iri;
use crate::matching::alignment::SchemaAlignment;
use crate::matching::similarity::value_similarity;
use crate::matching::slc::Slc;
use crate::matching::MatchConfig;
use crate::weights::WeightTable;

/// Weight used for a property absent from the weight table.
pub const DEFAULT_WEIGHT: f64 = 0.5;

const DENOMINATOR_FLOOR: f64 = 1e-9;

/// Intermediate terms of one affinity evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinityDetail {
    pub score: f64,
    pub numerator: f64,
    pub denominator: f64,
    /// Missing-property correction subtracted from the denominator.
    pub gamma: f64,
    /// (left property, right property, evidence)
    pub pairs: Vec<(Iri, Iri, f64)>,
    pub clamped: bool,
}

impl AffinityDetail {
    fn zero() -> Self {
        AffinityDetail {
            score: 0.0,
            numerator: 0.0,
            denominator: 0.0,
            gamma: 0.0,
            pairs: Vec::new(),
            clamped: false,
        }
    }
}

fn grouped(slc: &Slc) -> BTreeMap<&Iri, Vec<&str>> {
    let mut out: BTreeMap<&Iri, Vec<&str>> = BTreeMap::new();
    for (p, text) in &slc.features {
        out.entry(p).or_default().push(text);
    }
    out
}

fn best_similarity(a: &[&str], b: &[&str]) -> f64 {
    let mut best = 0.0f64;
    for x in a {
        for y in b {
            best = best.max(value_similarity(x, y));
            if best == 1.0 {
                return best;
            }
        }
    }
    best
}

pub fn affinity(
    left: &Slc,
    right: &Slc,
    weights: &WeightTable,
    align: &SchemaAlignment,
    cfg: &MatchConfig,
) -> f64 {
    affinity_detail(left, right, weights, align, cfg).score
}

/// Weighted affinity of two SLCs.
///
/// Comparable property pairs are matched greedily by descending evidence
/// `E(p, q)`, each property used at most once. The score is
/// `Σ E(p,q)·(W_p + W_q) / (Σ W_p + Σ W_q − γ)` where `γ` is `gamma_coeff`
/// times the weight of properties left without a partner.
pub fn affinity_detail(
    left: &Slc,
    right: &Slc,
    weights: &WeightTable,
    align: &SchemaAlignment,
    cfg: &MatchConfig,
) -> AffinityDetail {
    if left.is_empty() && right.is_empty() {
        log::warn!("affinity of two empty SLCs ({} / {}) is 0", left.owner, right.owner);
        return AffinityDetail::zero();
    }
    let lg = grouped(left);
    let rg = grouped(right);

    let lookup = |p: &Iri| {
        weights.get(p).unwrap_or_else(|| {
            log::warn!("no weight for <{p}>, using {DEFAULT_WEIGHT}");
            DEFAULT_WEIGHT
        })
    };
    let mut lw: BTreeMap<&Iri, f64> = lg.keys().map(|p| (*p, lookup(p))).collect();
    let mut rw: BTreeMap<&Iri, f64> = rg.keys().map(|p| (*p, lookup(p))).collect();
    let total: f64 = lw.values().sum::<f64>() + rw.values().sum::<f64>();
    if total <= 0.0 {
        // no weight mass at all: fall back to counting properties
        lw.values_mut().for_each(|w| *w = 1.0);
        rw.values_mut().for_each(|w| *w = 1.0);
    }

    let mut candidates: Vec<(f64, &Iri, &Iri)> = Vec::new();
    for (p, pv) in &lg {
        for (q, qv) in &rg {
            if align.properties_comparable(p, q) {
                let e = best_similarity(pv, qv);
                let e = if e < cfg.sim_floor { 0.0 } else { e };
                candidates.push((e, p, q));
            }
        }
    }
    // Tie order must not depend on which side is "left".
    candidates.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then_with(|| a.1.min(a.2).cmp(b.1.min(b.2)))
            .then_with(|| a.1.max(a.2).cmp(b.1.max(b.2)))
            .then_with(|| a.1.cmp(b.1))
    });

    let mut used_left: BTreeSet<&Iri> = BTreeSet::new();
    let mut used_right: BTreeSet<&Iri> = BTreeSet::new();
    let mut numerator = 0.0;
    let mut pairs = Vec::new();
    for (e, p, q) in candidates {
        if used_left.contains(p) || used_right.contains(q) {
            continue;
        }
        used_left.insert(p);
        used_right.insert(q);
        numerator += e * (lw[p] + rw[q]);
        pairs.push((p.clone(), q.clone(), e));
    }

    let unpaired: f64 = lw
        .iter()
        .filter(|(p, _)| !used_left.contains(*p))
        .map(|(_, w)| w)
        .chain(rw.iter().filter(|(q, _)| !used_right.contains(*q)).map(|(_, w)| w))
        .sum();
    let gamma = cfg.gamma_coeff * unpaired;
    let sum: f64 = lw.values().sum::<f64>() + rw.values().sum::<f64>();
    let denominator = (sum - gamma).max(DENOMINATOR_FLOOR);
    let raw = numerator / denominator;
    let clamped = !(0.0..=1.0).contains(&raw);
    AffinityDetail {
        score: raw.clamp(0.0, 1.0),
        numerator,
        denominator,
        gamma,
        pairs,
        clamped,
    }
}
