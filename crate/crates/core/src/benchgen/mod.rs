//! Synthetic instance-matching benchmarks.
//!
//! A seeded base ABox over a small person/organization schema, plus a
//! transformed copy whose instances are renamed and perturbed by one of four
//! families: literal edits (`value`), schema reshaping (`structural`),
//! retyping along the class hierarchy (`logical`) or all three (`combined`).
//! The gold alignment is the renaming map. The perturbation recipes are
//! synthetic; they follow the families, not any particular published case
//! numbering.

mod perturb;
pub mod schema;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kb::{
    build_kb, serialize_kb, Iri, KnowledgeBase, Triple, Value, RDFS_SUBCLASS_OF, RDF_TYPE,
};
use crate::matching::AlignmentSet;

pub use perturb::ValueEdit;
use schema::{PropertyDef, ValueKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformFamily {
    Value,
    Structural,
    Logical,
    Combined,
}

impl TransformFamily {
    pub const ALL: [TransformFamily; 4] = [
        TransformFamily::Value,
        TransformFamily::Structural,
        TransformFamily::Logical,
        TransformFamily::Combined,
    ];

    fn stream(self) -> u64 {
        match self {
            TransformFamily::Value => 1,
            TransformFamily::Structural => 2,
            TransformFamily::Logical => 3,
            TransformFamily::Combined => 4,
        }
    }

    fn edits_values(self) -> bool {
        matches!(self, TransformFamily::Value | TransformFamily::Combined)
    }

    fn edits_structure(self) -> bool {
        matches!(self, TransformFamily::Structural | TransformFamily::Combined)
    }

    fn edits_types(self) -> bool {
        matches!(self, TransformFamily::Logical | TransformFamily::Combined)
    }
}

impl fmt::Display for TransformFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformFamily::Value => "value",
            TransformFamily::Structural => "structural",
            TransformFamily::Logical => "logical",
            TransformFamily::Combined => "combined",
        })
    }
}

impl FromStr for TransformFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "value" => Ok(TransformFamily::Value),
            "structural" => Ok(TransformFamily::Structural),
            "logical" => Ok(TransformFamily::Logical),
            "combined" => Ok(TransformFamily::Combined),
            other => Err(Error::Config(format!("unknown transformation family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchSpec {
    pub n_instances: usize,
    pub family: TransformFamily,
    /// Fraction of eligible values, assertions, properties or types perturbed.
    pub intensity: f64,
    pub seed: u64,
}

impl BenchSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_instances == 0 {
            return Err(Error::Config("n_instances must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.intensity) {
            return Err(Error::Config(format!(
                "intensity must be in [0, 1], got {}",
                self.intensity
            )));
        }
        Ok(())
    }
}

fn onto(local: &str) -> Iri {
    Iri::new(format!("{}{local}", schema::ONTO)).expect("vocabulary IRI")
}

/// Seeded base ABox. Roughly three quarters persons, the rest organizations.
/// The first instance of each kind carries every property of its kind.
pub fn generate_base(spec: &BenchSpec) -> Result<KnowledgeBase> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n_orgs = spec.n_instances / 4;
    let n_persons = spec.n_instances - n_orgs;

    let mut triples = Vec::new();
    for (child, parent) in schema::HIERARCHY {
        triples.push(Triple::new(onto(child), subclass_of(), Value::Ref(onto(parent))));
    }

    let org_ids: Vec<Iri> = (0..n_orgs)
        .map(|i| Iri::new(format!("{}org{i:05}", schema::BASE_NS)).expect("IRI"))
        .collect();
    let mut used_ids = BTreeSet::new();

    for (i, id) in org_ids.iter().enumerate() {
        let ty = *schema::ORG_TYPES.choose(&mut rng).expect("types");
        triples.push(Triple::new(id.clone(), rdf_type(), Value::Ref(onto(ty))));
        for def in schema::ORG_PROPERTIES {
            if i == 0 || rng.random_bool(def.coverage) {
                if let Some(v) = draw_value(def, i, &mut rng, &org_ids, &mut used_ids) {
                    triples.push(Triple::new(id.clone(), onto(def.local), v));
                }
            }
        }
    }
    for i in 0..n_persons {
        let id = Iri::new(format!("{}person{i:05}", schema::BASE_NS)).expect("IRI");
        let ty = *schema::PERSON_TYPES.choose(&mut rng).expect("types");
        triples.push(Triple::new(id.clone(), rdf_type(), Value::Ref(onto(ty))));
        for def in schema::PERSON_PROPERTIES {
            if i == 0 || rng.random_bool(def.coverage) {
                if let Some(v) = draw_value(def, i, &mut rng, &org_ids, &mut used_ids) {
                    triples.push(Triple::new(id.clone(), onto(def.local), v));
                }
            }
        }
    }
    Ok(build_kb(triples))
}

fn subclass_of() -> Iri {
    Iri::new(RDFS_SUBCLASS_OF).expect("IRI")
}

fn rdf_type() -> Iri {
    Iri::new(RDF_TYPE).expect("IRI")
}

fn draw_value<R: Rng>(
    def: &PropertyDef,
    index: usize,
    rng: &mut R,
    orgs: &[Iri],
    used: &mut BTreeSet<String>,
) -> Option<Value> {
    let pick = |rng: &mut R, pool: &[&'static str]| *pool.choose(rng).expect("pool");
    let text = match def.kind {
        ValueKind::Identifier => loop {
            let id = format!("P-{:06}", rng.random_range(0..1_000_000));
            if used.insert(id.clone()) {
                break id;
            }
        },
        ValueKind::Email => {
            let first = pick(rng, schema::FIRST_NAMES).to_lowercase();
            let last = pick(rng, schema::LAST_NAMES).to_lowercase();
            let domain = pick(rng, schema::MAIL_DOMAINS);
            format!("{first}.{last}{index}@{domain}")
        }
        ValueKind::PersonName => {
            format!("{} {}", pick(rng, schema::FIRST_NAMES), pick(rng, schema::LAST_NAMES))
        }
        ValueKind::OrgName => format!(
            "{} {} {}",
            pick(rng, schema::ORG_WORDS),
            pick(rng, schema::ORG_NOUNS),
            pick(rng, schema::ORG_SUFFIXES)
        ),
        ValueKind::Date => format!(
            "{:04}-{:02}-{:02}",
            rng.random_range(1940..2001),
            rng.random_range(1..13),
            rng.random_range(1..29)
        ),
        ValueKind::Year => rng.random_range(1850..2021).to_string(),
        ValueKind::Url => {
            let word = pick(rng, schema::ORG_WORDS).to_lowercase();
            format!("http://www.{word}{index}.com")
        }
        ValueKind::Category(pool) => pick(rng, pool).to_owned(),
        ValueKind::OrgLink => {
            return orgs.choose(rng).map(|o| Value::Ref(o.clone()));
        }
    };
    Some(Value::literal(text))
}

/// A transformed copy with its gold standard.
#[derive(Debug, Clone, PartialEq)]
pub struct Transformed {
    pub kb: KnowledgeBase,
    /// base instance → renamed instance
    pub gold: AlignmentSet,
    /// base property → renamed property
    pub schema_alignment: AlignmentSet,
    pub log: TransformLog,
}

/// Counts of what a transformation actually did.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformLog {
    pub value_edits: BTreeMap<String, usize>,
    pub deleted: usize,
    pub split: usize,
    pub renamed_properties: usize,
    pub retyped: usize,
}

pub fn transform(base: &KnowledgeBase, spec: &BenchSpec) -> Result<Transformed> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(spec.family.stream());
    let p = spec.intensity;
    let mut log = TransformLog::default();

    // instance renaming through a seeded permutation
    let ids: Vec<&Iri> = base.instances().map(|i| i.id()).collect();
    let mut slots: Vec<usize> = (0..ids.len()).collect();
    slots.shuffle(&mut rng);
    let rename: BTreeMap<&Iri, Iri> = ids
        .iter()
        .zip(&slots)
        .map(|(id, slot)| {
            (*id, Iri::new(format!("{}x{slot:05}", schema::COPY_NS)).expect("IRI"))
        })
        .collect();
    let gold: AlignmentSet = rename
        .iter()
        .map(|(b, c)| ((*b).clone(), c.clone(), 1.0))
        .collect();

    // property renaming
    let mut prop_rename: BTreeMap<Iri, Iri> = BTreeMap::new();
    if spec.family.edits_structure() {
        for def in schema::all_properties() {
            if rng.random_bool(p) {
                prop_rename.insert(onto(def.local), onto(def.renamed));
            }
        }
    }
    log.renamed_properties = prop_rename.len();
    let schema_alignment: AlignmentSet = prop_rename
        .iter()
        .map(|(a, b)| (a.clone(), b.clone(), 1.0))
        .collect();

    let part = onto(schema::PART_PROPERTY);
    let mut out: Vec<Triple> = base
        .subclass_axioms()
        .iter()
        .map(|(c, parent)| {
            Triple::new(c.clone(), subclass_of(), Value::Ref(parent.clone()))
        })
        .collect();
    let mut next_part = 0usize;

    for instance in base.instances() {
        let new_id = rename[instance.id()].clone();

        for ty in instance.types() {
            let mut ty = ty.clone();
            if spec.family.edits_types() && rng.random_bool(p) {
                if let Some(moved) = retype(&ty, &mut rng) {
                    ty = moved;
                    log.retyped += 1;
                }
            }
            out.push(Triple::new(new_id.clone(), rdf_type(), Value::Ref(ty)));
        }

        for (prop, values) in instance.assertions() {
            let prop_out = prop_rename.get(prop).unwrap_or(prop).clone();
            for value in values {
                if spec.family.edits_structure() && rng.random_bool(p) {
                    let split_parts = value
                        .as_literal()
                        .map(|t| t.split_whitespace().collect::<Vec<_>>())
                        .filter(|parts| parts.len() >= 2);
                    match split_parts {
                        Some(parts) => {
                            let node = Iri::new(format!("{}part{next_part:05}", schema::COPY_NS))
                                .expect("IRI");
                            next_part += 1;
                            out.push(Triple::new(new_id.clone(), prop_out.clone(), Value::Ref(node.clone())));
                            for piece in parts {
                                let piece = edit_value(piece, spec, &mut rng, &mut log);
                                out.push(Triple::new(node.clone(), part.clone(), Value::literal(piece)));
                            }
                            log.split += 1;
                        }
                        None => log.deleted += 1,
                    }
                    continue;
                }
                let value = match value {
                    Value::Ref(target) => Value::Ref(rename.get(target).cloned().unwrap_or_else(|| target.clone())),
                    Value::Literal(lit) => {
                        let mut lit = lit.clone();
                        lit.text = edit_value(&lit.text, spec, &mut rng, &mut log);
                        Value::Literal(lit)
                    }
                };
                out.push(Triple::new(new_id.clone(), prop_out.clone(), value));
            }
        }
    }

    Ok(Transformed {
        kb: build_kb(out),
        gold,
        schema_alignment,
        log,
    })
}

fn edit_value<R: Rng>(text: &str, spec: &BenchSpec, rng: &mut R, log: &mut TransformLog) -> String {
    if !spec.family.edits_values() || !rng.random_bool(spec.intensity) {
        return text.to_owned();
    }
    match perturb::perturb(text, rng) {
        Some((out, edit)) => {
            *log.value_edits.entry(format!("{edit:?}")).or_default() += 1;
            out
        }
        None => text.to_owned(),
    }
}

/// Move a concept one step up or down the built-in hierarchy.
fn retype<R: Rng>(concept: &Iri, rng: &mut R) -> Option<Iri> {
    let local = concept.as_str().strip_prefix(schema::ONTO)?;
    let mut options: Vec<&str> = schema::children_of(local);
    if let Some(parent) = schema::parent_of(local) {
        options.push(parent);
    }
    options.choose(rng).map(|c| onto(c))
}

/// Everything a benchmark directory holds.
#[derive(Debug, Clone)]
pub struct Benchmark {
    pub spec: BenchSpec,
    pub base: KnowledgeBase,
    pub transformed: Transformed,
}

pub fn generate(spec: &BenchSpec) -> Result<Benchmark> {
    let base = generate_base(spec)?;
    let transformed = transform(&base, spec)?;
    Ok(Benchmark {
        spec: *spec,
        base,
        transformed,
    })
}

pub const BASE_FILE: &str = "base.nt";
pub const TRANSFORMED_FILE: &str = "transformed.nt";
pub const GOLD_FILE: &str = "gold.tsv";
pub const SCHEMA_ALIGNMENT_FILE: &str = "schema_alignment.tsv";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub generator: String,
    pub spec: BenchSpec,
    pub base_instances: usize,
    pub transformed_instances: usize,
    pub gold_pairs: usize,
    pub files: BTreeMap<String, String>,
    pub transformations: TransformLog,
}

impl Manifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

impl Benchmark {
    pub fn manifest(&self) -> Manifest {
        let mut files = BTreeMap::new();
        files.insert("base".into(), BASE_FILE.into());
        files.insert("transformed".into(), TRANSFORMED_FILE.into());
        files.insert("gold".into(), GOLD_FILE.into());
        if self.has_schema_alignment() {
            files.insert("schema_alignment".into(), SCHEMA_ALIGNMENT_FILE.into());
        }
        Manifest {
            generator: "slcmatch synthetic benchmark".into(),
            spec: self.spec,
            base_instances: self.base.instance_count(),
            transformed_instances: self.transformed.kb.instance_count(),
            gold_pairs: self.transformed.gold.len(),
            files,
            transformations: self.transformed.log.clone(),
        }
    }

    fn has_schema_alignment(&self) -> bool {
        self.spec.family.edits_structure()
    }

    /// File name → contents, in a fixed order.
    pub fn files(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            (BASE_FILE, serialize_kb(&self.base)),
            (TRANSFORMED_FILE, serialize_kb(&self.transformed.kb)),
            (GOLD_FILE, self.transformed.gold.to_tsv()),
        ];
        if self.has_schema_alignment() {
            out.push((SCHEMA_ALIGNMENT_FILE, self.transformed.schema_alignment.to_tsv()));
        }
        let mut manifest = serde_json::to_string_pretty(&self.manifest()).expect("manifest");
        manifest.push('\n');
        out.push((MANIFEST_FILE, manifest));
        out
    }

    /// Write all files into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut written = Vec::new();
        for (name, contents) in self.files() {
            let path = dir.join(name);
            std::fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}
