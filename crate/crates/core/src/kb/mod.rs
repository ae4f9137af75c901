//! Knowledge-base data model and the triples file format.

mod model;
mod ntriples;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use model::{
    build_kb, Instance, Iri, KbWarning, KnowledgeBase, Literal, PropertyKind, Triple, Value,
    RDFS_SUBCLASS_OF, RDF_TYPE,
};
pub use ntriples::{
    format_triple, parse_line, parse_triples, parse_triples_lenient, read_triples, serialize_kb,
    write_triples,
};

/// Read and strictly parse a triples file into a knowledge base.
pub fn load_kb(path: impl AsRef<Path>) -> Result<KnowledgeBase> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let triples = parse_triples(&text)?;
    Ok(build_kb(triples))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOccurrence {
    pub kind: PropertyKind,
    /// Instances carrying at least one value.
    pub carriers: usize,
    /// (instance, value) pairs.
    pub occurrences: usize,
}

/// Summary counts written by the `stats` dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbStats {
    pub instance_count: usize,
    pub property_count: usize,
    pub properties: BTreeMap<String, PropertyOccurrence>,
}

impl KbStats {
    pub fn of(kb: &KnowledgeBase) -> Self {
        let mut properties: BTreeMap<String, PropertyOccurrence> = kb
            .property_kinds()
            .iter()
            .map(|(p, kind)| {
                (
                    p.to_string(),
                    PropertyOccurrence {
                        kind: *kind,
                        carriers: 0,
                        occurrences: 0,
                    },
                )
            })
            .collect();
        for instance in kb.instances() {
            for (p, values) in instance.assertions() {
                if let Some(entry) = properties.get_mut(p.as_str()) {
                    entry.carriers += 1;
                    entry.occurrences += values.len();
                }
            }
        }
        KbStats {
            instance_count: kb.instance_count(),
            property_count: properties.len(),
            properties,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_dump() {
        let kb = build_kb(
            parse_triples(
                "<urn:a> <urn:p> \"x\" .\n<urn:a> <urn:p> \"y\" .\n<urn:b> <urn:p> \"x\" .\n<urn:b> <urn:q> <urn:a> .\n",
            )
            .unwrap(),
        );
        let stats = KbStats::of(&kb);
        assert_eq!(stats.instance_count, 2);
        assert_eq!(stats.property_count, 2);
        assert_eq!(stats.properties["urn:p"].carriers, 2);
        assert_eq!(stats.properties["urn:p"].occurrences, 3);
        assert_eq!(stats.properties["urn:q"].kind, PropertyKind::Object);
        let json = serde_json::to_value(&stats).unwrap();
        assert_eq!(json["instance_count"], 2);
    }
}
