use std::collections::{BTreeMap, BTreeSet};

use crate::kb::{Iri, KnowledgeBase};

/// Related-concept block: the concept with all of its transitive super- and
/// subclasses.
pub fn block(kb: &KnowledgeBase, concept: &Iri) -> BTreeSet<Iri> {
    let mut parents: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
    let mut children: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
    for (child, parent) in kb.subclass_axioms() {
        parents.entry(child).or_default().push(parent);
        children.entry(parent).or_default().push(child);
    }
    let mut out = BTreeSet::new();
    out.insert(concept.clone());
    for edges in [&parents, &children] {
        let mut stack = vec![concept];
        let mut seen: BTreeSet<&Iri> = BTreeSet::from([concept]);
        while let Some(c) = stack.pop() {
            for next in edges.get(c).into_iter().flatten() {
                if seen.insert(next) {
                    out.insert((*next).clone());
                    stack.push(next);
                }
            }
        }
    }
    out
}

/// Union of the blocks of every type of an instance.
pub fn type_block(kb: &KnowledgeBase, types: &BTreeSet<Iri>) -> BTreeSet<Iri> {
    types.iter().flat_map(|t| block(kb, t)).collect()
}
