use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";

/// An absolute IRI or a `_:` blank node label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self> {
        let value = value.into();
        if is_valid_iri(&value) {
            Ok(Iri(value))
        } else {
            Err(Error::InvalidIri(value))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_blank(&self) -> bool {
        self.0.starts_with("_:")
    }
}

fn is_valid_iri(s: &str) -> bool {
    if s.is_empty()
        || s
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || matches!(c, '<' | '>' | '"'))
    {
        return false;
    }
    match s.strip_prefix("_:") {
        Some(label) => !label.is_empty(),
        None => s.find(':').is_some_and(|i| i > 0),
    }
}

impl TryFrom<String> for Iri {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> String {
        iri.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub text: String,
    pub datatype: Option<Iri>,
    pub lang: Option<String>,
}

impl Literal {
    pub fn plain(text: impl Into<String>) -> Self {
        Literal {
            text: text.into(),
            datatype: None,
            lang: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Literal(Literal),
    Ref(Iri),
}

impl Value {
    pub fn literal(text: impl Into<String>) -> Self {
        Value::Literal(Literal::plain(text))
    }

    pub fn as_literal(&self) -> Option<&str> {
        match self {
            Value::Literal(lit) => Some(&lit.text),
            Value::Ref(_) => None,
        }
    }

    pub fn as_ref_target(&self) -> Option<&Iri> {
        match self {
            Value::Ref(iri) => Some(iri),
            Value::Literal(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Value,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: Value) -> Self {
        Triple {
            subject,
            predicate,
            object,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyKind {
    Datatype,
    Object,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    id: Iri,
    types: BTreeSet<Iri>,
    assertions: BTreeMap<Iri, BTreeSet<Value>>,
}

impl Instance {
    fn new(id: Iri) -> Self {
        Instance {
            id,
            types: BTreeSet::new(),
            assertions: BTreeMap::new(),
        }
    }

    pub fn id(&self) -> &Iri {
        &self.id
    }

    pub fn types(&self) -> &BTreeSet<Iri> {
        &self.types
    }

    pub fn assertions(&self) -> &BTreeMap<Iri, BTreeSet<Value>> {
        &self.assertions
    }

    pub fn values(&self, property: &Iri) -> Option<&BTreeSet<Value>> {
        self.assertions.get(property)
    }

    pub fn properties(&self) -> impl Iterator<Item = &Iri> {
        self.assertions.keys()
    }
}

/// Problems found while building a knowledge base. None of them abort construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum KbWarning {
    DanglingRef {
        subject: Iri,
        property: Iri,
        target: Iri,
    },
    MixedPropertyKind {
        property: Iri,
    },
    LiteralType {
        subject: Iri,
    },
}

impl fmt::Display for KbWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KbWarning::DanglingRef {
                subject,
                property,
                target,
            } => write!(
                f,
                "<{subject}> <{property}> refers to <{target}>, which has no description"
            ),
            KbWarning::MixedPropertyKind { property } => write!(
                f,
                "<{property}> has both literal and resource values; classified as datatype"
            ),
            KbWarning::LiteralType { subject } => {
                write!(f, "<{subject}> has a literal rdf:type; kept as a plain assertion")
            }
        }
    }
}

/// Instances, their typed assertions and the subclass axioms of one knowledge base.
///
/// Built once by [`build_kb`] and never mutated afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KnowledgeBase {
    instances: BTreeMap<Iri, Instance>,
    subclass_axioms: BTreeSet<(Iri, Iri)>,
    property_kinds: BTreeMap<Iri, PropertyKind>,
    warnings: Vec<KbWarning>,
}

impl KnowledgeBase {
    pub fn instances(&self) -> impl ExactSizeIterator<Item = &Instance> {
        self.instances.values()
    }

    pub fn instance(&self, id: &Iri) -> Option<&Instance> {
        self.instances.get(id)
    }

    pub fn instance_count(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn subclass_axioms(&self) -> &BTreeSet<(Iri, Iri)> {
        &self.subclass_axioms
    }

    pub fn property_kinds(&self) -> &BTreeMap<Iri, PropertyKind> {
        &self.property_kinds
    }

    pub fn property_kind(&self, property: &Iri) -> Option<PropertyKind> {
        self.property_kinds.get(property).copied()
    }

    pub fn properties(&self) -> impl Iterator<Item = &Iri> {
        self.property_kinds.keys()
    }

    /// Every concept mentioned as an instance type or in a subclass axiom.
    pub fn concepts(&self) -> BTreeSet<&Iri> {
        let mut out: BTreeSet<&Iri> = self.instances.values().flat_map(|i| &i.types).collect();
        for (child, parent) in &self.subclass_axioms {
            out.insert(child);
            out.insert(parent);
        }
        out
    }

    pub fn warnings(&self) -> &[KbWarning] {
        &self.warnings
    }

    /// All statements in canonical order: subclass axioms first, then each
    /// instance's types followed by its assertions.
    pub fn triples(&self) -> Vec<Triple> {
        let rdf_type = Iri(RDF_TYPE.to_owned());
        let sub_class_of = Iri(RDFS_SUBCLASS_OF.to_owned());
        let mut out = Vec::new();
        for (child, parent) in &self.subclass_axioms {
            out.push(Triple::new(
                child.clone(),
                sub_class_of.clone(),
                Value::Ref(parent.clone()),
            ));
        }
        for instance in self.instances.values() {
            for ty in &instance.types {
                out.push(Triple::new(
                    instance.id.clone(),
                    rdf_type.clone(),
                    Value::Ref(ty.clone()),
                ));
            }
            for (property, values) in &instance.assertions {
                for value in values {
                    out.push(Triple::new(
                        instance.id.clone(),
                        property.clone(),
                        value.clone(),
                    ));
                }
            }
        }
        out
    }
}

/// Partition triples into subclass axioms, instance types and assertions.
///
/// The result depends only on the set of triples, not on their order or
/// multiplicity.
pub fn build_kb(triples: impl IntoIterator<Item = Triple>) -> KnowledgeBase {
    let mut instances: BTreeMap<Iri, Instance> = BTreeMap::new();
    let mut subclass_axioms = BTreeSet::new();
    let mut warnings = Vec::new();

    for Triple {
        subject,
        predicate,
        object,
    } in triples
    {
        match (predicate.as_str(), object) {
            (RDFS_SUBCLASS_OF, Value::Ref(parent)) => {
                subclass_axioms.insert((subject, parent));
            }
            (RDF_TYPE, Value::Ref(concept)) => {
                instances
                    .entry(subject.clone())
                    .or_insert_with(|| Instance::new(subject))
                    .types
                    .insert(concept);
            }
            (p, object) => {
                if p == RDF_TYPE {
                    warnings.push(KbWarning::LiteralType {
                        subject: subject.clone(),
                    });
                }
                instances
                    .entry(subject.clone())
                    .or_insert_with(|| Instance::new(subject))
                    .assertions
                    .entry(predicate)
                    .or_default()
                    .insert(object);
            }
        }
    }

    let mut seen: BTreeMap<&Iri, (bool, bool)> = BTreeMap::new();
    for instance in instances.values() {
        for (property, values) in &instance.assertions {
            let entry = seen.entry(property).or_default();
            for value in values {
                match value {
                    Value::Literal(_) => entry.0 = true,
                    Value::Ref(target) => {
                        entry.1 = true;
                        if !instances.contains_key(target) {
                            warnings.push(KbWarning::DanglingRef {
                                subject: instance.id.clone(),
                                property: property.clone(),
                                target: target.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    let mut property_kinds = BTreeMap::new();
    for (property, (has_literal, has_ref)) in seen {
        let kind = if has_ref && !has_literal {
            PropertyKind::Object
        } else {
            if has_ref {
                warnings.push(KbWarning::MixedPropertyKind {
                    property: property.clone(),
                });
            }
            PropertyKind::Datatype
        };
        property_kinds.insert(property.clone(), kind);
    }

    warnings.sort();
    warnings.dedup();
    for warning in &warnings {
        log::debug!("{warning}");
    }

    KnowledgeBase {
        instances,
        subclass_axioms,
        property_kinds,
        warnings,
    }
}
