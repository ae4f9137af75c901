//! Literal value perturbations.

use rand::seq::IndexedRandom;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueEdit {
    Typo,
    Case,
    Diacritic,
    TokenReorder,
    DateFormat,
    Abbreviation,
}

const ACCENTS: &[(char, char)] = &[
    ('a', 'á'),
    ('e', 'é'),
    ('i', 'í'),
    ('o', 'ö'),
    ('u', 'ü'),
    ('n', 'ñ'),
    ('c', 'ç'),
];

fn tokens(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

fn is_iso_date(text: &str) -> bool {
    let b = text.as_bytes();
    b.len() == 10
        && b[4] == b'-'
        && b[7] == b'-'
        && b.iter()
            .enumerate()
            .all(|(i, c)| i == 4 || i == 7 || c.is_ascii_digit())
}

/// Edits that would change `text`.
pub fn applicable(text: &str) -> Vec<ValueEdit> {
    let mut out = Vec::new();
    if text.chars().filter(|c| c.is_alphanumeric()).count() >= 2 {
        out.push(ValueEdit::Typo);
    }
    if text.to_uppercase() != text || text.to_lowercase() != text {
        out.push(ValueEdit::Case);
    }
    if text.chars().any(|c| ACCENTS.iter().any(|(from, _)| *from == c)) {
        out.push(ValueEdit::Diacritic);
    }
    let toks = tokens(text);
    if toks.len() >= 2 {
        out.push(ValueEdit::TokenReorder);
        if toks[0].chars().count() >= 2 && toks[0].chars().all(char::is_alphabetic) {
            out.push(ValueEdit::Abbreviation);
        }
    }
    if is_iso_date(text) {
        out.push(ValueEdit::DateFormat);
    }
    out
}

/// Apply one randomly chosen applicable edit; returns the new text and the
/// edit used, or `None` when nothing applies.
pub fn perturb<R: Rng>(text: &str, rng: &mut R) -> Option<(String, ValueEdit)> {
    let edits = applicable(text);
    let edit = *edits.choose(rng)?;
    let out = apply(text, edit, rng);
    Some((out, edit))
}

pub fn apply<R: Rng>(text: &str, edit: ValueEdit, rng: &mut R) -> String {
    match edit {
        ValueEdit::Typo => typo(text, rng),
        ValueEdit::Case => {
            if text.to_uppercase() != text && rng.random_bool(0.5) {
                text.to_uppercase()
            } else if text.to_lowercase() != text {
                text.to_lowercase()
            } else {
                text.to_uppercase()
            }
        }
        ValueEdit::Diacritic => {
            let spots: Vec<usize> = text
                .char_indices()
                .filter(|(_, c)| ACCENTS.iter().any(|(from, _)| from == c))
                .map(|(i, _)| i)
                .collect();
            let at = spots[rng.random_range(0..spots.len())];
            let mut out = String::with_capacity(text.len() + 1);
            for (i, c) in text.char_indices() {
                if i == at {
                    let (_, to) = ACCENTS.iter().find(|(from, _)| *from == c).expect("spot");
                    out.push(*to);
                } else {
                    out.push(c);
                }
            }
            out
        }
        ValueEdit::TokenReorder => {
            let mut toks = tokens(text);
            toks.rotate_left(1);
            toks.join(" ")
        }
        ValueEdit::DateFormat => {
            let (y, m, d) = (&text[0..4], &text[5..7], &text[8..10]);
            format!("{d}/{m}/{y}")
        }
        ValueEdit::Abbreviation => {
            let toks = tokens(text);
            let initial = toks[0].chars().next().expect("non-empty token");
            let mut out = format!("{initial}.");
            for t in &toks[1..] {
                out.push(' ');
                out.push_str(t);
            }
            out
        }
    }
}

fn random_letter<R: Rng>(rng: &mut R, not: char) -> char {
    loop {
        let c = (b'a' + rng.random_range(0..26u8)) as char;
        if c != not.to_ascii_lowercase() {
            return c;
        }
    }
}

/// One substitution, insertion, deletion or adjacent transposition at an
/// alphanumeric position. Never yields an empty string.
fn typo<R: Rng>(text: &str, rng: &mut R) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    let spots: Vec<usize> = (0..chars.len()).filter(|&i| chars[i].is_alphanumeric()).collect();
    let at = spots[rng.random_range(0..spots.len())];
    loop {
        match rng.random_range(0..4) {
            0 => {
                chars[at] = random_letter(rng, chars[at]);
            }
            1 => {
                let c = random_letter(rng, ' ');
                chars.insert(at, c);
            }
            2 if chars.len() > 1 => {
                chars.remove(at);
            }
            3 if at + 1 < chars.len() && chars[at] != chars[at + 1] => {
                chars.swap(at, at + 1);
            }
            _ => continue,
        }
        break;
    }
    chars.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn applicability() {
        assert!(applicable("1975-03-09").contains(&ValueEdit::DateFormat));
        assert!(applicable("Anna Rossi").contains(&ValueEdit::Abbreviation));
        assert!(!applicable("P-001234").contains(&ValueEdit::TokenReorder));
        assert!(applicable("x").is_empty() || applicable("x") == vec![ValueEdit::Case]);
    }

    #[test]
    fn deterministic_edits() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(apply("1975-03-09", ValueEdit::DateFormat, &mut rng), "09/03/1975");
        assert_eq!(apply("Anna Rossi", ValueEdit::TokenReorder, &mut rng), "Rossi Anna");
        assert_eq!(apply("Anna Rossi", ValueEdit::Abbreviation, &mut rng), "A. Rossi");
    }

    #[test]
    fn every_edit_changes_the_text() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for text in ["Anna Rossi", "1975-03-09", "male", "P-000042", "http://www.blue3.com", "Ab"] {
            for _ in 0..50 {
                let (out, edit) = perturb(text, &mut rng).unwrap();
                assert_ne!(out, text, "{edit:?}");
                assert!(!out.trim().is_empty());
            }
        }
    }
}
