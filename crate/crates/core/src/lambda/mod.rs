//! Named-variable lambda terms and the reference beta reducer.

mod corpus;
mod parse;
mod reduce;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use corpus::{bundled, divergent, parse_corpus, CorpusEntry, CorpusError};
pub use parse::{parse_term, ParseError};
pub use reduce::{normalize_ref, FuelExhausted};

use crate::supply::NameSupply;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LambdaTerm {
    Var(String),
    Abs(String, Box<LambdaTerm>),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
}

pub fn var(name: &str) -> LambdaTerm {
    LambdaTerm::Var(name.to_owned())
}

pub fn abs(binder: &str, body: LambdaTerm) -> LambdaTerm {
    LambdaTerm::Abs(binder.to_owned(), Box::new(body))
}

pub fn app(fun: LambdaTerm, arg: LambdaTerm) -> LambdaTerm {
    LambdaTerm::App(Box::new(fun), Box::new(arg))
}

/// Does `s` belong to the identifier class `[a-zA-Z_][a-zA-Z0-9_']*`?
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// `\f.\x. f (f ... (f x))` with `n` applications of `f`.
pub fn church(n: usize) -> LambdaTerm {
    let mut body = var("x");
    for _ in 0..n {
        body = app(var("f"), body);
    }
    abs("f", abs("x", body))
}

impl LambdaTerm {
    pub fn free_vars(&self) -> BTreeSet<String> {
        self.free_vars_ordered().into_iter().collect()
    }

    /// Free variables in order of first occurrence (left to right).
    pub fn free_vars_ordered(&self) -> Vec<String> {
        fn go(t: &LambdaTerm, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match t {
                LambdaTerm::Var(x) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                LambdaTerm::Abs(x, body) => {
                    bound.push(x.clone());
                    go(body, bound, out);
                    bound.pop();
                }
                LambdaTerm::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_free(&self, name: &str) -> bool {
        match self {
            LambdaTerm::Var(x) => x == name,
            LambdaTerm::Abs(x, body) => x != name && body.is_free(name),
            LambdaTerm::App(f, a) => f.is_free(name) || a.is_free(name),
        }
    }

    /// Every identifier occurring anywhere in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        fn go(t: &LambdaTerm, out: &mut BTreeSet<String>) {
            match t {
                LambdaTerm::Var(x) => {
                    out.insert(x.clone());
                }
                LambdaTerm::Abs(x, body) => {
                    out.insert(x.clone());
                    go(body, out);
                }
                LambdaTerm::App(f, a) => {
                    go(f, out);
                    go(a, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Capture-avoiding substitution `self[x := s]`. A binder is renamed
    /// only when it would capture a free variable of `s`.
    pub fn substitute(&self, x: &str, s: &LambdaTerm, fresh: &mut NameSupply) -> LambdaTerm {
        match self {
            LambdaTerm::Var(y) if y == x => s.clone(),
            LambdaTerm::Var(_) => self.clone(),
            LambdaTerm::App(f, a) => app(f.substitute(x, s, fresh), a.substitute(x, s, fresh)),
            LambdaTerm::Abs(y, _) if y == x => self.clone(),
            LambdaTerm::Abs(y, body) => {
                if !body.is_free(x) {
                    return self.clone();
                }
                if s.is_free(y) {
                    let renamed = loop {
                        let candidate = fresh.fresh();
                        if !s.is_free(&candidate) && !body.is_free(&candidate) {
                            break candidate;
                        }
                    };
                    let body = body.substitute(y, &LambdaTerm::Var(renamed.clone()), fresh);
                    LambdaTerm::Abs(renamed, Box::new(body.substitute(x, s, fresh)))
                } else {
                    LambdaTerm::Abs(y.clone(), Box::new(body.substitute(x, s, fresh)))
                }
            }
        }
    }

    /// Equality up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &LambdaTerm) -> bool {
        fn go<'a>(
            a: &'a LambdaTerm,
            b: &'a LambdaTerm,
            env_a: &mut HashMap<&'a str, Vec<usize>>,
            env_b: &mut HashMap<&'a str, Vec<usize>>,
            depth: usize,
        ) -> bool {
            match (a, b) {
                (LambdaTerm::Var(x), LambdaTerm::Var(y)) => {
                    let bx = env_a.get(x.as_str()).and_then(|v| v.last());
                    let by = env_b.get(y.as_str()).and_then(|v| v.last());
                    match (bx, by) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (LambdaTerm::Abs(x, ba), LambdaTerm::Abs(y, bb)) => {
                    env_a.entry(x).or_default().push(depth);
                    env_b.entry(y).or_default().push(depth);
                    let eq = go(ba, bb, env_a, env_b, depth + 1);
                    env_a.get_mut(x.as_str()).map(Vec::pop);
                    env_b.get_mut(y.as_str()).map(Vec::pop);
                    eq
                }
                (LambdaTerm::App(fa, aa), LambdaTerm::App(fb, ab)) => {
                    go(fa, fb, env_a, env_b, depth) && go(aa, ab, env_a, env_b, depth)
                }
                _ => false,
            }
        }
        go(self, other, &mut HashMap::new(), &mut HashMap::new(), 0)
    }

    /// Is the term free of beta redexes?
    pub fn is_normal(&self) -> bool {
        match self {
            LambdaTerm::Var(_) => true,
            LambdaTerm::Abs(_, body) => body.is_normal(),
            LambdaTerm::App(f, a) => {
                !matches!(**f, LambdaTerm::Abs(..)) && f.is_normal() && a.is_normal()
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LambdaTerm::Var(_) => 1,
            LambdaTerm::Abs(_, body) => 1 + body.size(),
            LambdaTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaTerm::Var(x) => f.write_str(x),
            LambdaTerm::Abs(x, body) => write!(f, "\\{x}. {body}"),
            LambdaTerm::App(fun, arg) => {
                match **fun {
                    LambdaTerm::Abs(..) => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                match **arg {
                    LambdaTerm::Var(_) => write!(f, " {arg}"),
                    _ => write!(f, " ({arg})"),
                }
            }
        }
    }
}

/// Minimal-parentheses rendering; never uses multi-binder sugar.
pub fn print_term(t: &LambdaTerm) -> String {
    t.to_string()
}
