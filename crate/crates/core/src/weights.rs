//! Automatic property weights from value-distinctness statistics.
//!
//! A property is discriminative when few of its values repeat across the
//! instances that carry it. The raw joint score is
//! `(1 - dup/with) * (1 - dup/total)`, which rewrites to
//! `distinct/with * (without + distinct)/total`. The `without` term is then
//! damped by a factor `λ` that shrinks when only a small fraction of the
//! corpus carries the property: ten distinct birth dates among a million
//! people say little about the other 999,990.
//!
//! Two forms are provided: [`weight_linear`] on raw counts and [`weight_log`]
//! on `ln(count + 1)` counts. Both clamp to `[0, 1]`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kb::{Iri, KnowledgeBase, Value};

/// Per-property counters over one knowledge base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyStats {
    pub property: Iri,
    /// `|I|`, all instances in the KB.
    pub n_total: u64,
    /// Instances with at least one value for the property.
    pub n_with: u64,
    pub n_without: u64,
    /// (instance, value) pairs.
    pub n_occurrences: u64,
    /// Unique values across the KB.
    pub n_distinct_values: u64,
    /// Surplus occurrences over unique values.
    pub n_dup: u64,
    /// `max(0, n_with - n_dup)`; equals `n_distinct_values` for single-valued data.
    pub n_distinct: u64,
}

impl PropertyStats {
    pub fn from_counts(
        property: Iri,
        n_total: u64,
        n_with: u64,
        n_occurrences: u64,
        n_distinct_values: u64,
    ) -> Self {
        let n_dup = n_occurrences.saturating_sub(n_distinct_values);
        PropertyStats {
            property,
            n_total,
            n_with,
            n_without: n_total.saturating_sub(n_with),
            n_occurrences,
            n_distinct_values,
            n_dup,
            n_distinct: n_with.saturating_sub(n_dup),
        }
    }

    /// Stats of a single-valued property carried by `n_with` of `n_total`
    /// instances with `n_distinct` unique values among them.
    pub fn single_valued(n_total: u64, n_with: u64, n_distinct: u64) -> Self {
        let property = Iri::new("urn:synthetic:property").expect("static IRI");
        Self::from_counts(property, n_total, n_with, n_with, n_distinct)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Linear,
    #[default]
    Log,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::Linear => "linear",
            WeightMode::Log => "log",
        })
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(WeightMode::Linear),
            "log" => Ok(WeightMode::Log),
            other => Err(Error::Config(format!("unknown weight mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightConfig {
    /// Coverage ratio at or above which a property counts as dense.
    pub delta: f64,
    /// Sigmoid scale.
    pub s: f64,
    /// Sigmoid location.
    pub mu: f64,
    pub mode: WeightMode,
}

impl WeightConfig {
    pub const DEFAULT_DELTA: f64 = 0.7;
    pub const DEFAULT_S: f64 = 0.2;
    pub const DEFAULT_MU: f64 = 0.1;

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::Config(format!("delta must be in (0, 1], got {}", self.delta)));
        }
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::Config(format!("s must be positive, got {}", self.s)));
        }
        if !self.mu.is_finite() {
            return Err(Error::Config(format!("mu must be finite, got {}", self.mu)));
        }
        Ok(())
    }
}

impl Default for WeightConfig {
    fn default() -> Self {
        WeightConfig {
            delta: Self::DEFAULT_DELTA,
            s: Self::DEFAULT_S,
            mu: Self::DEFAULT_MU,
            mode: WeightMode::Log,
        }
    }
}

/// Value identity used for distinctness counting: trimmed literal text, or
/// the target IRI of a resource.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum ValueKey<'a> {
    Text(&'a str),
    Ref(&'a str),
}

impl<'a> ValueKey<'a> {
    fn of(value: &'a Value) -> Self {
        match value {
            Value::Literal(lit) => ValueKey::Text(lit.text.trim()),
            Value::Ref(iri) => ValueKey::Ref(iri.as_str()),
        }
    }
}

#[derive(Default)]
struct Counter<'a> {
    n_with: u64,
    n_occurrences: u64,
    distinct: HashSet<ValueKey<'a>>,
}

impl<'a> Counter<'a> {
    fn add(&mut self, values: impl IntoIterator<Item = &'a Value>) {
        let keys: BTreeSet<ValueKey<'a>> = values.into_iter().map(ValueKey::of).collect();
        if keys.is_empty() {
            return;
        }
        self.n_with += 1;
        self.n_occurrences += keys.len() as u64;
        self.distinct.extend(keys);
    }

    fn finish(self, property: Iri, n_total: u64) -> PropertyStats {
        PropertyStats::from_counts(
            property,
            n_total,
            self.n_with,
            self.n_occurrences,
            self.distinct.len() as u64,
        )
    }
}

pub fn collect_stats(kb: &KnowledgeBase, property: &Iri) -> Result<PropertyStats> {
    if kb.property_kind(property).is_none() {
        return Err(Error::UnknownProperty(property.to_string()));
    }
    let mut counter = Counter::default();
    for instance in kb.instances() {
        if let Some(values) = instance.values(property) {
            counter.add(values);
        }
    }
    Ok(counter.finish(property.clone(), kb.instance_count() as u64))
}

/// Stats for every property in one pass over the KB, sorted by property.
pub fn collect_all_stats(kb: &KnowledgeBase) -> Vec<PropertyStats> {
    let mut counters: HashMap<&Iri, Counter<'_>> = HashMap::new();
    for instance in kb.instances() {
        for (property, values) in instance.assertions() {
            counters.entry(property).or_default().add(values);
        }
    }
    let n_total = kb.instance_count() as u64;
    let mut out: Vec<PropertyStats> = counters
        .into_iter()
        .map(|(p, c)| c.finish(p.clone(), n_total))
        .collect();
    out.sort_by(|a, b| a.property.cmp(&b.property));
    out
}

/// Repetition ratio over carriers, `dup / with`, capped at 1.
pub fn np1(stats: &PropertyStats) -> Result<f64> {
    if stats.n_with == 0 {
        return Err(Error::UndefinedStatistic("no instance carries the property"));
    }
    Ok((stats.n_dup as f64 / stats.n_with as f64).min(1.0))
}

/// Repetition ratio over the corpus, `dup / total`, capped at 1.
pub fn np2(stats: &PropertyStats) -> Result<f64> {
    if stats.n_total == 0 {
        return Err(Error::UndefinedStatistic("knowledge base is empty"));
    }
    Ok((stats.n_dup as f64 / stats.n_total as f64).min(1.0))
}

/// Joint identification probability `(1 - np1)(1 - np2)`.
pub fn joint_weight(stats: &PropertyStats) -> Result<f64> {
    Ok((1.0 - np1(stats)?) * (1.0 - np2(stats)?))
}

/// Logistic curve with location `mu` and scale `s`.
pub fn sigmoid(x: f64, config: &WeightConfig) -> f64 {
    1.0 / (1.0 + (-(x - config.mu) / config.s).exp())
}

fn check_defined(stats: &PropertyStats) -> Result<()> {
    if stats.n_total == 0 {
        return Err(Error::UndefinedStatistic("knowledge base is empty"));
    }
    if stats.n_with == 0 {
        return Err(Error::UndefinedStatistic("no instance carries the property"));
    }
    Ok(())
}

/// Sparsity correction `λ`. Dense properties (coverage ≥ δ) get the plain
/// distinct ratio; sparse ones are additionally scaled by the sigmoid of
/// their coverage.
pub fn lambda_factor(stats: &PropertyStats, config: &WeightConfig) -> Result<f64> {
    check_defined(stats)?;
    let coverage = stats.n_with as f64 / stats.n_total as f64;
    let distinct_ratio = stats.n_distinct as f64 / stats.n_with as f64;
    if coverage >= config.delta {
        Ok(distinct_ratio)
    } else {
        Ok(sigmoid(coverage, config) * distinct_ratio)
    }
}

fn linear_unclamped(stats: &PropertyStats, config: &WeightConfig) -> Result<f64> {
    let lambda = lambda_factor(stats, config)?;
    let distinct = stats.n_distinct as f64;
    Ok((distinct / stats.n_with as f64) * (lambda * stats.n_without as f64 + distinct)
        / stats.n_total as f64)
}

fn log_unclamped(stats: &PropertyStats, config: &WeightConfig) -> Result<f64> {
    let lambda = lambda_factor(stats, config)?;
    let ln1 = |n: u64| (n as f64).ln_1p();
    let distinct = ln1(stats.n_distinct);
    Ok((distinct / ln1(stats.n_with)) * (distinct + lambda * ln1(stats.n_without))
        / ln1(stats.n_total))
}

fn unclamped(stats: &PropertyStats, config: &WeightConfig) -> Result<f64> {
    match config.mode {
        WeightMode::Linear => linear_unclamped(stats, config),
        WeightMode::Log => log_unclamped(stats, config),
    }
}

pub fn weight_linear(stats: &PropertyStats, config: &WeightConfig) -> Result<f64> {
    Ok(linear_unclamped(stats, config)?.clamp(0.0, 1.0))
}

/// Same shape as [`weight_linear`] over `ln(count + 1)`. `λ` is still taken
/// from the raw count ratios.
pub fn weight_log(stats: &PropertyStats, config: &WeightConfig) -> Result<f64> {
    Ok(log_unclamped(stats, config)?.clamp(0.0, 1.0))
}

pub fn weight(stats: &PropertyStats, config: &WeightConfig) -> Result<f64> {
    Ok(unclamped(stats, config)?.clamp(0.0, 1.0))
}

/// Property weights for one knowledge base.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub weights: BTreeMap<Iri, f64>,
    pub config: WeightConfig,
    pub provenance: String,
}

pub fn compute_weights(kb: &KnowledgeBase, config: &WeightConfig) -> Result<WeightTable> {
    config.validate()?;
    if kb.is_empty() {
        return Err(Error::EmptyKnowledgeBase);
    }
    let mut weights = BTreeMap::new();
    let mut clamped = 0;
    for stats in collect_all_stats(kb) {
        let raw = unclamped(&stats, config)?;
        if !(0.0..=1.0).contains(&raw) {
            log::debug!("weight {raw} of <{}> clamped to [0, 1]", stats.property);
            clamped += 1;
        }
        weights.insert(stats.property, raw.clamp(0.0, 1.0));
    }
    if clamped > 0 {
        log::warn!("{clamped} of {} property weights clamped to [0, 1]", weights.len());
    }
    Ok(WeightTable {
        weights,
        config: *config,
        provenance: String::new(),
    })
}

#[derive(Serialize, Deserialize)]
struct WeightTableFile {
    config: WeightConfig,
    weights: BTreeMap<Iri, f64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    source: String,
}

impl WeightTable {
    /// Weight 1.0 for every listed property.
    pub fn uniform<'a>(properties: impl IntoIterator<Item = &'a Iri>, config: WeightConfig) -> Self {
        WeightTable {
            weights: properties.into_iter().map(|p| (p.clone(), 1.0)).collect(),
            config,
            provenance: "uniform".into(),
        }
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn get(&self, property: &Iri) -> Option<f64> {
        self.weights.get(property).copied()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Union of two tables; properties present in both get the mean weight.
    pub fn merged(&self, other: &WeightTable) -> WeightTable {
        let mut weights = self.weights.clone();
        for (p, w) in &other.weights {
            weights
                .entry(p.clone())
                .and_modify(|mine| *mine = (*mine + w) / 2.0)
                .or_insert(*w);
        }
        let provenance = match (self.provenance.is_empty(), other.provenance.is_empty()) {
            (true, _) => other.provenance.clone(),
            (_, true) => self.provenance.clone(),
            _ => format!("{}+{}", self.provenance, other.provenance),
        };
        WeightTable {
            weights,
            config: self.config,
            provenance,
        }
    }

    /// Properties sorted by descending weight, ties by IRI.
    pub fn ranked(&self) -> Vec<(&Iri, f64)> {
        let mut out: Vec<_> = self.weights.iter().map(|(p, w)| (p, *w)).collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        out
    }

    pub fn to_json(&self) -> String {
        let file = WeightTableFile {
            config: self.config,
            weights: self.weights.clone(),
            source: self.provenance.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("weight table serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: WeightTableFile = serde_json::from_str(text)?;
        file.config.validate()?;
        if let Some((p, w)) = file.weights.iter().find(|(_, w)| !(0.0..=1.0).contains(*w)) {
            return Err(Error::Config(format!("weight of <{p}> out of range: {w}")));
        }
        Ok(WeightTable {
            weights: file.weights,
            config: file.config,
            provenance: file.source,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
