//! `<t1, t2 | lhs = rhs, ...>` rendering and parsing.

use std::fmt;

use thiserror::Error;

use super::{Configuration, Equation, NetTerm, Symbol};

impl fmt::Display for NetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetTerm::Name(n) => f.write_str(n),
            NetTerm::Agent(s, ports) if ports.is_empty() => write!(f, "{s}"),
            NetTerm::Agent(s, ports) => {
                write!(f, "{s}(")?;
                for (i, p) in ports.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        join(f, &self.interface)?;
        f.write_str(" | ")?;
        join(f, &self.equations)?;
        f.write_str(">")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConfigParseError {
    #[error("parse error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol {name} at byte {offset}")]
    UnknownSymbol { offset: usize, name: String },
    #[error("symbol {symbol} expects {expected} ports, found {found} at byte {offset}")]
    ArityMismatch {
        offset: usize,
        symbol: String,
        expected: usize,
        found: usize,
    },
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ConfigParseError> {
        Err(ConfigParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ConfigParseError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.syntax(format!("expected {c:?}"))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ConfigParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            let ok = if i == 0 {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_' || c == '\''
            };
            if !ok {
                break;
            }
            len = i + c.len_utf8();
        }
        if len == 0 {
            return self.syntax("expected a name or symbol");
        }
        if rest[len..].starts_with('*') {
            len += 1;
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn term(&mut self) -> Result<NetTerm, ConfigParseError> {
        let (start, tok) = self.ident()?;
        let symbol = Symbol::from_token(tok);
        let has_args = self.peek() == Some('(');
        let symbol = match symbol {
            Some(s) => s,
            None if has_args || tok.ends_with('*') => {
                return Err(ConfigParseError::UnknownSymbol {
                    offset: start,
                    name: tok.to_owned(),
                })
            }
            None => return Ok(NetTerm::Name(tok.to_owned())),
        };
        let ports = if has_args {
            self.pos += 1;
            let ports = if self.peek() == Some(')') {
                Vec::new()
            } else {
                self.term_list()?
            };
            self.expect(')')?;
            ports
        } else {
            Vec::new()
        };
        if ports.len() != symbol.arity() {
            return Err(ConfigParseError::ArityMismatch {
                offset: start,
                symbol: tok.to_owned(),
                expected: symbol.arity(),
                found: ports.len(),
            });
        }
        Ok(NetTerm::Agent(symbol, ports))
    }

    fn term_list(&mut self) -> Result<Vec<NetTerm>, ConfigParseError> {
        let mut out = vec![self.term()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.term()?);
        }
        Ok(out)
    }
}

/// Parses `config := '<' termlist '|' eqlist '>'`. Either list may be empty.
pub fn parse_config(text: &str) -> Result<Configuration, ConfigParseError> {
    let mut c = Cursor { text, pos: 0 };
    c.expect('<')?;
    let interface = if c.peek() == Some('|') {
        Vec::new()
    } else {
        c.term_list()?
    };
    c.expect('|')?;
    let mut equations = Vec::new();
    if c.peek() != Some('>') {
        loop {
            let lhs = c.term()?;
            c.expect('=')?;
            let rhs = c.term()?;
            equations.push(Equation { lhs, rhs });
            if c.peek() == Some(',') {
                c.pos += 1;
            } else {
                break;
            }
        }
    }
    c.expect('>')?;
    if c.peek().is_some() {
        return c.syntax("trailing input after configuration");
    }
    Ok(Configuration {
        interface,
        equations,
    })
}
