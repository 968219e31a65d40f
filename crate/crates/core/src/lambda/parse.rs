use thiserror::Error;

use super::LambdaTerm;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lambda,
    Dot,
    Open,
    Close,
    Ident(String),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '\\' | 'λ' => {
                it.next();
                toks.push((pos, Tok::Lambda));
            }
            '.' => {
                it.next();
                toks.push((pos, Tok::Dot));
            }
            '(' => {
                it.next();
                toks.push((pos, Tok::Open));
            }
            ')' => {
                it.next();
                toks.push((pos, Tok::Close));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = pos;
                while let Some(&(p, c)) = it.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        end = p + c.len_utf8();
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push((pos, Tok::Ident(text[pos..end].to_owned())));
            }
            other => {
                return Err(ParseError {
                    offset: pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn term(&mut self) -> Result<LambdaTerm, ParseError> {
        if self.peek() == Some(&Tok::Lambda) {
            self.pos += 1;
            let mut binders = Vec::new();
            while let Some(Tok::Ident(x)) = self.peek() {
                binders.push(x.clone());
                self.pos += 1;
            }
            if binders.is_empty() {
                return self.err("empty binder list");
            }
            if self.peek() != Some(&Tok::Dot) {
                return self.err("expected '.' after binders");
            }
            self.pos += 1;
            let body = self.term()?;
            return Ok(binders
                .into_iter()
                .rev()
                .fold(body, |acc, x| LambdaTerm::Abs(x, Box::new(acc))));
        }
        let mut acc = self.atom()?;
        while matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Open)) {
            let arg = self.atom()?;
            acc = LambdaTerm::App(Box::new(acc), Box::new(arg));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<LambdaTerm, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(x)) => {
                self.pos += 1;
                Ok(LambdaTerm::Var(x))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.err("unbalanced parenthesis: expected ')'");
                }
                self.pos += 1;
                Ok(t)
            }
            Some(Tok::Close) => self.err("unexpected ')'"),
            Some(Tok::Dot) => self.err("unexpected '.'"),
            Some(Tok::Lambda) => self.err("abstraction in argument position needs parentheses"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `term := lam | app`, `lam := ('\' | 'λ') var+ '.' term`,
/// `app := atom+`, `atom := var | '(' term ')'`.
pub fn parse_term(text: &str) -> Result<LambdaTerm, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return p.err("stray token after term");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{abs, app, var};

    #[test]
    fn examples() {
        assert_eq!(parse_term("x").unwrap(), var("x"));
        assert_eq!(
            parse_term("\\x y. x y").unwrap(),
            abs("x", abs("y", app(var("x"), var("y"))))
        );
        let w = abs("x", app(var("x"), var("x")));
        assert_eq!(parse_term("(\\x. x x) (\\x. x x)").unwrap(), app(w.clone(), w));
        assert_eq!(parse_term("λx.x").unwrap(), abs("x", var("x")));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_term("(x y").unwrap_err().offset, 4);
        assert_eq!(parse_term("x y)").unwrap_err().offset, 3);
        assert_eq!(parse_term("\\. x").unwrap_err().offset, 1);
        assert_eq!(parse_term("").unwrap_err().offset, 0);
        assert_eq!(parse_term("x # y").unwrap_err().offset, 2);
        assert_eq!(parse_term("λ. x").unwrap_err().offset, 2);
    }
}
