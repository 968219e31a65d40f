use thiserror::Error;

use super::{parse_term, LambdaTerm, ParseError};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub term: LambdaTerm,
}

#[derive(Clone, Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: bad entry name {name:?}")]
    BadName { line: usize, name: String },
    #[error("line {line}: duplicate entry name {name:?}")]
    Duplicate { line: usize, name: String },
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '\'' | '+' | '^'))
}

/// One term per line, optional `name: term` prefix, `#` starts a comment.
/// Unnamed entries are called `line<N>`.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut out: Vec<CorpusEntry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let (name, body) = match content.split_once(':') {
            Some((name, body)) => {
                let name = name.trim();
                if !valid_name(name) {
                    return Err(CorpusError::BadName {
                        line,
                        name: name.to_owned(),
                    });
                }
                (name.to_owned(), body)
            }
            None => (format!("line{line}"), content),
        };
        if out.iter().any(|e| e.name == name) {
            return Err(CorpusError::Duplicate { line, name });
        }
        let term = parse_term(body).map_err(|source| CorpusError::Parse { line, source })?;
        out.push(CorpusEntry { name, term });
    }
    Ok(out)
}

/// Normalizing terms shipped with the crate.
pub const BUNDLED: &str = include_str!("../../corpus/terms.lc");

/// Terms without a normal form, expected to exhaust fuel.
pub const DIVERGENT: &str = include_str!("../../corpus/divergent.lc");

pub fn bundled() -> Vec<CorpusEntry> {
    parse_corpus(BUNDLED).expect("bundled corpus parses")
}

pub fn divergent() -> Vec<CorpusEntry> {
    parse_corpus(DIVERGENT).expect("divergent corpus parses")
}
