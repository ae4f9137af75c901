//! Line-oriented N-Triples subset.
//!
//! Each statement is `subject predicate object .` on its own line. Subjects
//! are `<iri>` or `_:label`, predicates are `<iri>`, objects are either of
//! those or a literal `"text"` with an optional `@lang` or `^^<datatype>`.
//! Lines whose first non-blank character is `#` are comments.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, ParseError, Result};
use crate::kb::model::{Iri, KnowledgeBase, Literal, Triple, Value};

/// Parse a whole document, stopping at the first malformed line.
pub fn parse_triples(input: &str) -> Result<Vec<Triple>, ParseError> {
    let mut out = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        if let Some(triple) = parse_line(line, idx + 1)? {
            out.push(triple);
        }
    }
    Ok(out)
}

/// Parse a whole document, skipping malformed lines and returning them
/// alongside the triples that did parse.
pub fn parse_triples_lenient(input: &str) -> (Vec<Triple>, Vec<ParseError>) {
    let mut triples = Vec::new();
    let mut errors = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        match parse_line(line, idx + 1) {
            Ok(Some(t)) => triples.push(t),
            Ok(None) => {}
            Err(e) => errors.push(e),
        }
    }
    (triples, errors)
}

/// Streaming strict parse from a reader.
pub fn read_triples<R: BufRead>(reader: R) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<stream>", e))?;
        if let Some(triple) = parse_line(&line, idx + 1)? {
            out.push(triple);
        }
    }
    Ok(out)
}

/// Parse one line. Blank and comment lines yield `None`.
pub fn parse_line(line: &str, line_no: usize) -> Result<Option<Triple>, ParseError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let fail = |message: String| ParseError {
        line: line_no,
        text: line.to_owned(),
        message,
    };
    let mut cur = Cursor::new(trimmed);

    let subject = cur.subject().map_err(fail)?;
    cur.require_space().map_err(fail)?;
    let predicate = cur.iri_ref().map_err(fail)?;
    cur.require_space().map_err(fail)?;
    let object = cur.object().map_err(fail)?;
    cur.skip_space();
    if !cur.eat('.') {
        return Err(fail("expected `.` terminator".into()));
    }
    cur.skip_space();
    if !cur.rest().is_empty() && !cur.rest().starts_with('#') {
        return Err(fail(format!("trailing content `{}`", cur.rest())));
    }
    Ok(Some(Triple::new(subject, predicate, object)))
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

type Step<T> = std::result::Result<T, String>;

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn skip_space(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.pos += 1;
        }
    }

    fn require_space(&mut self) -> Step<()> {
        let start = self.pos;
        self.skip_space();
        // `<a><b>` is legal N-Triples; only demand separation after blank labels.
        if self.pos == start && !matches!(self.peek(), Some('<' | '"' | '_')) {
            return Err("expected whitespace between terms".into());
        }
        Ok(())
    }

    fn subject(&mut self) -> Step<Iri> {
        match self.peek() {
            Some('<') => self.iri_ref(),
            Some('_') => self.blank_node(),
            _ => Err("expected IRI or blank node as subject".into()),
        }
    }

    fn object(&mut self) -> Step<Value> {
        match self.peek() {
            Some('<') => self.iri_ref().map(Value::Ref),
            Some('_') => self.blank_node().map(Value::Ref),
            Some('"') => self.literal().map(Value::Literal),
            _ => Err("expected IRI, blank node or literal as object".into()),
        }
    }

    fn iri_ref(&mut self) -> Step<Iri> {
        if !self.eat('<') {
            return Err("expected `<`".into());
        }
        let mut value = String::new();
        loop {
            match self.bump() {
                None => return Err("unterminated IRI".into()),
                Some('>') => break,
                Some('\\') => match self.bump() {
                    Some('u') => value.push(self.hex_escape(4)?),
                    Some('U') => value.push(self.hex_escape(8)?),
                    _ => return Err("invalid escape in IRI".into()),
                },
                Some(c) => value.push(c),
            }
        }
        Iri::new(value).map_err(|e| e.to_string())
    }

    fn blank_node(&mut self) -> Step<Iri> {
        if !self.rest().starts_with("_:") {
            return Err("expected `_:`".into());
        }
        self.pos += 2;
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || matches!(c, '_' | '-' | '.')) {
            self.bump();
        }
        while self.pos > start && self.src[..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        let label = &self.src[start..self.pos];
        if label.is_empty() {
            return Err("empty blank node label".into());
        }
        Iri::new(format!("_:{label}")).map_err(|e| e.to_string())
    }

    fn literal(&mut self) -> Step<Literal> {
        self.eat('"');
        let mut text = String::new();
        loop {
            match self.bump() {
                None => return Err("unterminated literal".into()),
                Some('"') => break,
                Some('\\') => {
                    let decoded = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        Some(c) => return Err(format!("unknown escape `\\{c}`")),
                        None => return Err("dangling backslash".into()),
                    };
                    text.push(decoded);
                }
                Some(c) => text.push(c),
            }
        }
        let mut literal = Literal::plain(text);
        if self.eat('@') {
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                self.bump();
            }
            let tag = &self.src[start..self.pos];
            let valid = !tag.is_empty()
                && tag.split('-').all(|part| !part.is_empty())
                && tag.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
            if !valid {
                return Err("malformed language tag".into());
            }
            literal.lang = Some(tag.to_owned());
        } else if self.rest().starts_with("^^") {
            self.pos += 2;
            literal.datatype = Some(self.iri_ref()?);
        }
        Ok(literal)
    }

    fn hex_escape(&mut self, digits: usize) -> Step<char> {
        let rest = self.rest();
        let hex = rest.get(..digits).ok_or("truncated unicode escape")?;
        if !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(format!("invalid unicode escape `{hex}`"));
        }
        let code = u32::from_str_radix(hex, 16).map_err(|e| e.to_string())?;
        self.pos += digits;
        char::from_u32(code).ok_or_else(|| format!("invalid code point U+{code:X}"))
    }
}

fn write_iri(out: &mut String, iri: &Iri) {
    if iri.is_blank() {
        out.push_str(iri.as_str());
    } else {
        out.push('<');
        out.push_str(iri.as_str());
        out.push('>');
    }
}

fn write_literal(out: &mut String, lit: &Literal) {
    out.push('"');
    for c in lit.text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    if let Some(lang) = &lit.lang {
        out.push('@');
        out.push_str(lang);
    } else if let Some(dt) = &lit.datatype {
        out.push_str("^^");
        write_iri(out, dt);
    }
}

pub fn format_triple(triple: &Triple) -> String {
    let mut out = String::new();
    write_iri(&mut out, &triple.subject);
    out.push(' ');
    write_iri(&mut out, &triple.predicate);
    out.push(' ');
    match &triple.object {
        Value::Ref(iri) => write_iri(&mut out, iri),
        Value::Literal(lit) => write_literal(&mut out, lit),
    }
    out.push_str(" .");
    out
}

pub fn write_triples<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> String {
    let mut out = String::new();
    for t in triples {
        out.push_str(&format_triple(t));
        out.push('\n');
    }
    out
}

/// Canonical N-Triples serialization of a knowledge base.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    write_triples(&kb.triples())
}
