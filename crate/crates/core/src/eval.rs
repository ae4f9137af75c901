//! Precision, recall and F-measure of a predicted alignment against gold.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::kb::Iri;
use crate::matching::AlignmentSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intensity: Option<f64>,
}

/// Harmonic mean of precision and recall; 0 when both are 0.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

/// Compare by exact (left, right) membership; confidences are ignored.
/// An empty prediction has precision 0.
pub fn evaluate(predicted: &AlignmentSet, gold: &AlignmentSet) -> EvalReport {
    let gold_keys: BTreeSet<&(Iri, Iri)> = gold.keys().collect();
    let tp = predicted.keys().filter(|k| gold_keys.contains(k)).count();
    let fp = predicted.len() - tp;
    let fn_ = gold.len() - tp;
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let precision = ratio(tp, predicted.len());
    let recall = ratio(tp, gold.len());
    EvalReport {
        precision,
        recall,
        f_measure: f_measure(precision, recall),
        tp,
        fp,
        fn_,
        family: None,
        intensity: None,
    }
}

impl EvalReport {
    pub fn with_cell(mut self, family: impl Into<String>, intensity: f64) -> Self {
        self.family = Some(family.into());
        self.intensity = Some(intensity);
        self
    }

    pub const CSV_HEADER: &'static str = "family,intensity,delta2,precision,recall,f_measure";

    pub fn csv_row(&self, delta2: f64) -> String {
        format!(
            "{},{},{},{:.6},{:.6},{:.6}",
            self.family.as_deref().unwrap_or(""),
            self.intensity.map(|i| i.to_string()).unwrap_or_default(),
            delta2,
            self.precision,
            self.recall,
            self.f_measure
        )
    }
}
