//! Independent reference implementations shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use slcmatch_core::kb::{Iri, KnowledgeBase, Literal, Triple, Value, RDF_TYPE};
use slcmatch_core::matching::{affinity, generate_slc, AlignmentSet, MatchConfig, SchemaAlignment};
use slcmatch_core::weights::{WeightConfig, WeightMode, WeightTable};

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

const TEXTS: &[&str] = &["a", "a ", " a", "b", "c", "dd", "e e", "ff", "g", "h"];

/// Random triples over at most 50 subjects and 8 properties, with repeated,
/// whitespace-padded, tagged and multi-valued literals plus object links.
pub fn random_triples<R: Rng>(rng: &mut R) -> Vec<Triple> {
    let n = rng.random_range(1..=50);
    let n_props = rng.random_range(1..=8);
    let pool = rng.random_range(1..=TEXTS.len());
    let mut out = Vec::new();
    for i in 0..n {
        let s = iri(&format!("urn:i{i}"));
        out.push(Triple::new(s.clone(), iri(RDF_TYPE), Value::Ref(iri("urn:C"))));
        for p in 0..n_props {
            let coverage = (p as f64 + 1.0) / (n_props as f64 + 1.0);
            if !rng.random_bool(coverage) {
                continue;
            }
            let k = if rng.random_bool(0.2) { rng.random_range(2..=3) } else { 1 };
            for _ in 0..k {
                let object = if p % 4 == 3 {
                    Value::Ref(iri(&format!("urn:i{}", rng.random_range(0..n))))
                } else {
                    let text = TEXTS[rng.random_range(0..pool)].to_string();
                    let lang = rng.random_bool(0.1).then(|| "en".to_string());
                    Value::Literal(Literal { text, datatype: None, lang })
                };
                out.push(Triple::new(s.clone(), iri(&format!("urn:p{p}")), object));
            }
        }
    }
    out
}

/// Weight of every property recounted straight from the triples.
pub fn oracle_weights(triples: &[Triple], cfg: &WeightConfig) -> BTreeMap<String, f64> {
    let subjects: BTreeSet<&str> = triples.iter().map(|t| t.subject.as_str()).collect();
    // property -> subject -> normalized values
    let mut values: BTreeMap<&str, BTreeMap<&str, BTreeSet<String>>> = BTreeMap::new();
    for t in triples {
        if t.predicate.as_str() == RDF_TYPE && matches!(t.object, Value::Ref(_)) {
            continue;
        }
        let key = match &t.object {
            Value::Literal(l) => format!("L{}", l.text.trim()),
            Value::Ref(r) => format!("R{}", r.as_str()),
        };
        values
            .entry(t.predicate.as_str())
            .or_default()
            .entry(t.subject.as_str())
            .or_default()
            .insert(key);
    }
    let total = subjects.len() as f64;
    values
        .into_iter()
        .map(|(p, by_subject)| {
            let with = by_subject.len() as f64;
            let occurrences: usize = by_subject.values().map(BTreeSet::len).sum();
            let unique: BTreeSet<&String> = by_subject.values().flatten().collect();
            let dup = (occurrences - unique.len()) as f64;
            let distinct = (with - dup).max(0.0);
            let without = total - with;
            let x = with / total;
            let ratio = distinct / with;
            let lambda = if x >= cfg.delta {
                ratio
            } else {
                ratio / (1.0 + (-(x - cfg.mu) / cfg.s).exp())
            };
            let w = match cfg.mode {
                WeightMode::Linear => ratio * (lambda * without + distinct) / total,
                WeightMode::Log => {
                    let l = |v: f64| (v + 1.0).ln();
                    (l(distinct) / l(with)) * (l(distinct) + lambda * l(without)) / l(total)
                }
            };
            (p.to_string(), w.clamp(0.0, 1.0))
        })
        .collect()
}

fn closure(kb: &KnowledgeBase, concept: &Iri, up: bool) -> BTreeSet<Iri> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![concept.clone()];
    while let Some(c) = frontier.pop() {
        for (child, parent) in kb.subclass_axioms() {
            let (from, to) = if up { (child, parent) } else { (parent, child) };
            if *from == c && out.insert(to.clone()) {
                frontier.push(to.clone());
            }
        }
    }
    out
}

fn related(kb: &KnowledgeBase, types: &BTreeSet<Iri>) -> BTreeSet<Iri> {
    let mut out = BTreeSet::new();
    for t in types {
        out.insert(t.clone());
        out.extend(closure(kb, t, true));
        out.extend(closure(kb, t, false));
    }
    out
}

/// Brute-force scan: every instance pair passing the concept gate, scored
/// and thresholded, optionally reduced to the best pair per left instance.
pub fn oracle_match(
    left: &KnowledgeBase,
    right: &KnowledgeBase,
    align: &SchemaAlignment,
    left_weights: &WeightTable,
    right_weights: &WeightTable,
    cfg: &MatchConfig,
) -> AlignmentSet {
    let mut weights = left_weights.clone();
    for (p, w) in &right_weights.weights {
        let merged = match left_weights.weights.get(p) {
            Some(l) => (l + w) / 2.0,
            None => *w,
        };
        weights.weights.insert(p.clone(), merged);
    }
    let mut kept: Vec<(Iri, Iri, f64)> = Vec::new();
    for a in left.instances() {
        let ba = related(left, a.types());
        let sa = generate_slc(left, a.id(), cfg.depth).unwrap();
        for b in right.instances() {
            let bb = related(right, b.types());
            let overlap = align.same_schema && ba.iter().any(|c| bb.contains(c));
            let aligned = align
                .concept_pairs
                .iter()
                .any(|(c1, c2)| ba.contains(c1) && bb.contains(c2));
            if !(overlap || aligned) {
                continue;
            }
            let sb = generate_slc(right, b.id(), cfg.depth).unwrap();
            let score = affinity(&sa, &sb, &weights, align, cfg);
            if score >= cfg.delta2 {
                kept.push((a.id().clone(), b.id().clone(), score));
            }
        }
    }
    if cfg.one_per_left {
        let mut best: BTreeMap<Iri, (Iri, f64)> = BTreeMap::new();
        for (l, r, c) in kept {
            let better = match best.get(&l) {
                None => true,
                Some((br, bc)) => c > *bc || (c == *bc && r < *br),
            };
            if better {
                best.insert(l, (r, c));
            }
        }
        best.into_iter().map(|(l, (r, c))| (l, r, c)).collect()
    } else {
        kept.into_iter().collect()
    }
}
