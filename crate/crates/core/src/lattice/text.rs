//! Line-oriented lattice files.
//!
//! ```text
//! # comment
//! elements: 0 a b 1
//! covers: 0<a, 0<b, a<1, b<1
//! ortho: 0~1, a~b
//! ```
//!
//! Each key may appear on several lines; entries accumulate. Omitting every
//! `ortho:` line produces a lattice without orthocomplement.

use std::fmt::Write;

use thiserror::Error;

use super::{FiniteLattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] LatticeError),
}

fn syntax(line: usize, message: impl Into<String>) -> LatticeFileError {
    LatticeFileError::Syntax {
        line,
        message: message.into(),
    }
}

fn is_label(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '<' | '~' | '#' | ':'))
}

fn split_pair(line: usize, entry: &str, sep: char) -> Result<(String, String), LatticeFileError> {
    let (a, b) = entry
        .split_once(sep)
        .ok_or_else(|| syntax(line, format!("expected `x{sep}y`, found `{entry}`")))?;
    let (a, b) = (a.trim(), b.trim());
    for l in [a, b] {
        if !is_label(l) {
            return Err(syntax(line, format!("invalid label `{l}` in `{entry}`")));
        }
    }
    Ok((a.to_owned(), b.to_owned()))
}

pub fn parse_lattice(input: &str) -> Result<FiniteLattice, LatticeFileError> {
    let mut elements: Vec<String> = Vec::new();
    let mut covers = Vec::new();
    let mut ortho: Option<Vec<(String, String)>> = None;

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("expected `key: ...`, found `{content}`")))?;
        let entries = rest.split(',').map(str::trim).filter(|e| !e.is_empty());
        match key.trim() {
            "elements" => {
                for tok in rest.split_whitespace() {
                    if !is_label(tok) {
                        return Err(syntax(line, format!("invalid label `{tok}`")));
                    }
                    elements.push(tok.to_owned());
                }
            }
            "covers" => {
                for e in entries {
                    covers.push(split_pair(line, e, '<')?);
                }
            }
            "ortho" => {
                let pairs = ortho.get_or_insert_with(Vec::new);
                for e in entries {
                    pairs.push(split_pair(line, e, '~')?);
                }
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    if elements.is_empty() {
        return Err(syntax(0, "missing `elements:` line"));
    }
    Ok(FiniteLattice::from_order_relation(
        &elements,
        &covers,
        ortho.as_deref(),
    )?)
}

/// Serializes a lattice with its Hasse edges and every complement pair.
pub fn to_lattice_text(l: &FiniteLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", l.labels().join(" "));
    let covers: Vec<String> = l
        .hasse_edges()
        .iter()
        .map(|&(a, b)| format!("{}<{}", l.label(a), l.label(b)))
        .collect();
    if !covers.is_empty() {
        let _ = writeln!(out, "covers: {}", covers.join(", "));
    }
    if let Some(pairs) = l.ortho_pairs() {
        let pairs: Vec<String> = pairs
            .iter()
            .map(|&(a, b)| format!("{}~{}", l.label(a), l.label(b)))
            .collect();
        let _ = writeln!(out, "ortho: {}", pairs.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAMOND: &str = "\
# the four-element Boolean algebra
elements: 0 a b 1
covers: 0<a, 0<b
covers: a<1, b<1   # split over two lines
ortho: a~b
";

    #[test]
    fn parses_and_completes_bounds() {
        let l = parse_lattice(DIAMOND).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.complement(l.bottom()).unwrap(), l.top());
        assert_eq!(l.complement(l.id("a")).unwrap(), l.id("b"));
    }

    #[test]
    fn emitted_text_round_trips() {
        let l = parse_lattice(DIAMOND).unwrap();
        let text = to_lattice_text(&l);
        assert_eq!(
            text,
            "elements: 0 a b 1\ncovers: 0<a, 0<b, a<1, b<1\northo: 0~1, a~b\n"
        );
        let again = parse_lattice(&text).unwrap();
        assert_eq!(again.labels(), l.labels());
    }

    #[test]
    fn malformed_cover_reports_line() {
        let err = parse_lattice("elements: 0 1\ncovers: 0-1\n").unwrap_err();
        assert!(
            matches!(err, LatticeFileError::Syntax { line: 2, .. }),
            "{err}"
        );
    }

    #[test]
    fn unknown_key_and_missing_elements() {
        assert!(matches!(
            parse_lattice("nodes: a b").unwrap_err(),
            LatticeFileError::Syntax { line: 1, .. }
        ));
        assert!(matches!(
            parse_lattice("# nothing\n").unwrap_err(),
            LatticeFileError::Syntax { line: 0, .. }
        ));
    }

    #[test]
    fn validation_errors_pass_through() {
        let err = parse_lattice("elements: 0 a b\ncovers: 0<a, 0<b\n").unwrap_err();
        assert!(matches!(
            err,
            LatticeFileError::Invalid(LatticeError::NotALattice { .. })
        ));
    }
}
