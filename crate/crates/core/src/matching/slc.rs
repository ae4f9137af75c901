use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kb::{Iri, KnowledgeBase, Value};

/// Semantic Link Cloud: the literal evidence describing one instance,
/// flattened from its own assertions and those of instances it links to.
///
/// Features reached through a link are recorded under the owner's property
/// that starts the link path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slc {
    pub owner: Iri,
    pub features: Vec<(Iri, String)>,
    pub types: BTreeSet<Iri>,
}

impl Slc {
    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    /// Distinct properties in feature order.
    pub fn properties(&self) -> Vec<&Iri> {
        let mut out: Vec<&Iri> = self.features.iter().map(|(p, _)| p).collect();
        out.dedup();
        out
    }
}

pub fn generate_slc(kb: &KnowledgeBase, instance: &Iri, depth: usize) -> Result<Slc> {
    let root = kb
        .instance(instance)
        .ok_or_else(|| Error::UnknownInstance(instance.to_string()))?;

    let mut features: BTreeSet<(Iri, String)> = BTreeSet::new();
    let mut visited: BTreeSet<&Iri> = BTreeSet::from([root.id()]);

    let push_literals = |features: &mut BTreeSet<(Iri, String)>, under: Option<&Iri>, id: &Iri| {
        let Some(inst) = kb.instance(id) else { return };
        for (p, values) in inst.assertions() {
            for text in values.iter().filter_map(Value::as_literal) {
                let text = text.trim();
                if !text.is_empty() {
                    features.insert((under.unwrap_or(p).clone(), text.to_owned()));
                }
            }
        }
    };
    push_literals(&mut features, None, root.id());

    // (property on the owner that started the path, instance reached)
    let mut frontier: Vec<(Option<&Iri>, &Iri)> = vec![(None, root.id())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (via, node) in frontier {
            let Some(inst) = kb.instance(node) else { continue };
            for (p, values) in inst.assertions() {
                for target in values.iter().filter_map(Value::as_ref_target) {
                    let Some(linked) = kb.instance(target) else { continue };
                    if !visited.insert(linked.id()) {
                        continue;
                    }
                    let under = via.unwrap_or(p);
                    push_literals(&mut features, Some(under), linked.id());
                    next.push((Some(under), linked.id()));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    Ok(Slc {
        owner: root.id().clone(),
        features: features.into_iter().collect(),
        types: root.types().clone(),
    })
}
