//! Alignment sets and their TSV form.
//!
//! One line per pair: `left<TAB>right<TAB>=<TAB>confidence`. Lines starting
//! with `#` are comments. The same file shape carries schema alignments,
//! predicted instance matches and gold standards.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::kb::{Iri, KnowledgeBase};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlignmentSet {
    pairs: BTreeMap<(Iri, Iri), f64>,
}

impl AlignmentSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert a pair; a repeated key keeps the higher confidence.
    pub fn insert(&mut self, left: Iri, right: Iri, confidence: f64) {
        let c = confidence.clamp(0.0, 1.0);
        self.pairs
            .entry((left, right))
            .and_modify(|old| *old = old.max(c))
            .or_insert(c);
    }

    pub fn contains(&self, left: &Iri, right: &Iri) -> bool {
        self.pairs.contains_key(&(left.clone(), right.clone()))
    }

    pub fn confidence(&self, left: &Iri, right: &Iri) -> Option<f64> {
        self.pairs.get(&(left.clone(), right.clone())).copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in canonical (left, right) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Iri, &Iri, f64)> {
        self.pairs.iter().map(|((l, r), c)| (l, r, *c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &(Iri, Iri)> {
        self.pairs.keys()
    }

    pub fn reversed(&self) -> AlignmentSet {
        AlignmentSet {
            pairs: self
                .pairs
                .iter()
                .map(|((l, r), c)| ((r.clone(), l.clone()), *c))
                .collect(),
        }
    }

    /// Keep one pair per left IRI: the most confident, ties to the smallest right IRI.
    pub fn best_per_left(&self) -> AlignmentSet {
        let mut best: BTreeMap<&Iri, (&Iri, f64)> = BTreeMap::new();
        for ((l, r), c) in &self.pairs {
            match best.get(l) {
                Some((_, bc)) if *bc >= *c => {}
                _ => {
                    best.insert(l, (r, *c));
                }
            }
        }
        AlignmentSet {
            pairs: best
                .into_iter()
                .map(|(l, (r, c))| ((l.clone(), r.clone()), c))
                .collect(),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# left\tright\trelation\tconfidence\n");
        for ((l, r), c) in &self.pairs {
            out.push_str(&format!("{l}\t{r}\t=\t{c}\n"));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut set = AlignmentSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let fail = |message: String| Error::Alignment {
                line: idx + 1,
                message,
            };
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if !(3..=4).contains(&cols.len()) {
                return Err(fail(format!("expected 4 tab-separated columns, got {}", cols.len())));
            }
            let parse_iri = |s: &str| {
                let s = s
                    .strip_prefix('<')
                    .and_then(|s| s.strip_suffix('>'))
                    .unwrap_or(s);
                Iri::new(s).map_err(|e| fail(e.to_string()))
            };
            let left = parse_iri(cols[0])?;
            let right = parse_iri(cols[1])?;
            if cols[2] != "=" {
                return Err(fail(format!("unsupported relation `{}`", cols[2])));
            }
            let confidence = match cols.get(3) {
                None => 1.0,
                Some(c) => c
                    .parse::<f64>()
                    .ok()
                    .filter(|c| (0.0..=1.0).contains(c))
                    .ok_or_else(|| fail(format!("confidence `{c}` is not a number in [0, 1]")))?,
            };
            set.insert(left, right, confidence);
        }
        Ok(set)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text)
    }
}

impl FromIterator<(Iri, Iri, f64)> for AlignmentSet {
    fn from_iter<T: IntoIterator<Item = (Iri, Iri, f64)>>(iter: T) -> Self {
        let mut set = AlignmentSet::new();
        for (l, r, c) in iter {
            set.insert(l, r, c);
        }
        set
    }
}

/// Concept and property correspondences from the first schema to the second.
///
/// With `same_schema` set, equal concept IRIs are implicitly aligned. Equal
/// property IRIs are always comparable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchemaAlignment {
    pub concept_pairs: BTreeSet<(Iri, Iri)>,
    pub property_pairs: BTreeSet<(Iri, Iri)>,
    pub same_schema: bool,
}

impl SchemaAlignment {
    pub fn identity() -> Self {
        SchemaAlignment {
            same_schema: true,
            ..Default::default()
        }
    }

    pub fn reversed(&self) -> Self {
        let flip = |s: &BTreeSet<(Iri, Iri)>| s.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        SchemaAlignment {
            concept_pairs: flip(&self.concept_pairs),
            property_pairs: flip(&self.property_pairs),
            same_schema: self.same_schema,
        }
    }

    pub fn properties_comparable(&self, p: &Iri, q: &Iri) -> bool {
        p == q || self.property_pairs.contains(&(p.clone(), q.clone()))
    }

    /// Sort alignment pairs into concept and property pairs using the
    /// vocabularies of both KBs. Pairs naming IRIs unknown to either side are
    /// dropped and reported.
    pub fn classify(
        pairs: &AlignmentSet,
        left: &KnowledgeBase,
        right: &KnowledgeBase,
        same_schema: bool,
    ) -> (Self, Vec<String>) {
        let left_concepts = left.concepts();
        let right_concepts = right.concepts();
        let mut out = SchemaAlignment {
            same_schema,
            ..Default::default()
        };
        let mut warnings = Vec::new();
        for (l, r, _) in pairs.iter() {
            let is_prop = left.property_kind(l).is_some() && right.property_kind(r).is_some();
            let is_concept = left_concepts.contains(l) && right_concepts.contains(r);
            if is_prop {
                out.property_pairs.insert((l.clone(), r.clone()));
            } else if is_concept {
                out.concept_pairs.insert((l.clone(), r.clone()));
            } else {
                warnings.push(format!("alignment pair <{l}> = <{r}> names unknown IRIs; ignored"));
            }
        }
        (out, warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{build_kb, parse_triples};

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn tsv_round_trip() {
        let set: AlignmentSet = [
            (iri("urn:b"), iri("urn:y"), 0.75),
            (iri("urn:a"), iri("urn:x"), 1.0),
        ]
        .into_iter()
        .collect();
        let tsv = set.to_tsv();
        assert!(tsv.find("urn:a").unwrap() < tsv.find("urn:b").unwrap());
        assert_eq!(AlignmentSet::from_tsv(&tsv).unwrap(), set);
    }

    #[test]
    fn tsv_accepts_brackets_and_missing_confidence() {
        let set = AlignmentSet::from_tsv("# c\n<urn:a>\t<urn:x>\t=\n").unwrap();
        assert_eq!(set.confidence(&iri("urn:a"), &iri("urn:x")), Some(1.0));
    }

    #[test]
    fn tsv_errors_carry_line_numbers() {
        for (text, line) in [
            ("urn:a\turn:x\t=\t1\nurn:a urn:x = 1\n", 2),
            ("# h\nurn:a\turn:x\t<\t1\n", 2),
            ("urn:a\turn:x\t=\tlots\n", 1),
            ("urn:a\turn:x\t=\t1.5\n", 1),
            ("urn:a\tnot an iri\t=\t1\n", 1),
        ] {
            match AlignmentSet::from_tsv(text) {
                Err(Error::Alignment { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn duplicates_keep_max_confidence() {
        let mut set = AlignmentSet::new();
        set.insert(iri("urn:a"), iri("urn:x"), 0.4);
        set.insert(iri("urn:a"), iri("urn:x"), 0.9);
        set.insert(iri("urn:a"), iri("urn:x"), 0.1);
        assert_eq!(set.len(), 1);
        assert_eq!(set.confidence(&iri("urn:a"), &iri("urn:x")), Some(0.9));
    }

    #[test]
    fn best_per_left_breaks_ties_by_iri() {
        let set: AlignmentSet = [
            (iri("urn:a"), iri("urn:z"), 0.8),
            (iri("urn:a"), iri("urn:y"), 0.8),
            (iri("urn:a"), iri("urn:x"), 0.7),
            (iri("urn:b"), iri("urn:x"), 0.9),
        ]
        .into_iter()
        .collect();
        let best = set.best_per_left();
        assert_eq!(best.len(), 2);
        assert!(best.contains(&iri("urn:a"), &iri("urn:y")));
        assert!(best.contains(&iri("urn:b"), &iri("urn:x")));
    }

    #[test]
    fn classify_splits_concepts_and_properties() {
        let k1 = build_kb(
            parse_triples(
                "<urn:a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:Person> .\n<urn:a> <urn:name> \"A\" .\n",
            )
            .unwrap(),
        );
        let k2 = build_kb(
            parse_triples(
                "<urn:b> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:Human> .\n<urn:b> <urn:label> \"A\" .\n",
            )
            .unwrap(),
        );
        let pairs: AlignmentSet = [
            (iri("urn:Person"), iri("urn:Human"), 1.0),
            (iri("urn:name"), iri("urn:label"), 1.0),
            (iri("urn:ghost"), iri("urn:label"), 1.0),
        ]
        .into_iter()
        .collect();
        let (align, warnings) = SchemaAlignment::classify(&pairs, &k1, &k2, false);
        assert_eq!(align.concept_pairs.len(), 1);
        assert_eq!(align.property_pairs.len(), 1);
        assert_eq!(warnings.len(), 1);
        assert!(align.properties_comparable(&iri("urn:name"), &iri("urn:label")));
        assert!(!align.properties_comparable(&iri("urn:label"), &iri("urn:name")));
        assert!(align
            .reversed()
            .properties_comparable(&iri("urn:label"), &iri("urn:name")));
    }
}
