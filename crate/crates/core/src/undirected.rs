//! The four-symbol system `{lam, psi, del, eps}`. A single `lam` agent
//! serves for both abstraction and application; `psi` shares a variable
//! used on both sides of an application; `del` is produced when a `psi`
//! meets an abstraction; `eps` erases.

use std::fmt;
use std::str::FromStr;

use crate::encode::{encode_with, EncodingRoles};
use crate::lambda::LambdaTerm;
use crate::net::{Configuration, InteractionRule, NetTerm, RuleTable, Symbol};
use crate::readback::{readback_with, ReadbackError, ReadbackRoles};
use crate::supply::NameSupply;

/// The `{psi, del}` pair is reachable from the commutation schema two ways.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PsiDeltaVariant {
    /// `psi[del(x1, y1), del(x2, y2)] >< del[psi(x1, x2), psi(y1, y2)]`
    #[default]
    Standard,
    /// `del[del(x1, y1), del(x2, y2)] >< psi[del(x1, x2), del(y1, y2)]`
    SchemaAlt,
}

impl FromStr for PsiDeltaVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(PsiDeltaVariant::Standard),
            "schema-alt" => Ok(PsiDeltaVariant::SchemaAlt),
            _ => Err(format!("unknown psi-delta variant {s:?} (standard, schema-alt)")),
        }
    }
}

impl fmt::Display for PsiDeltaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PsiDeltaVariant::Standard => "standard",
            PsiDeltaVariant::SchemaAlt => "schema-alt",
        })
    }
}

pub const SYMBOLS: [Symbol; 4] = [Symbol::LAM, Symbol::PSI, Symbol::DEL, Symbol::EPS];

pub const ROLES: EncodingRoles = EncodingRoles {
    abstraction: Symbol::LAM,
    application: Symbol::LAM,
    sharing: Symbol::PSI,
    eraser: Some(Symbol::EPS),
};

#[derive(Clone, Debug)]
pub struct UndirectedSystem {
    pub variant: PsiDeltaVariant,
    pub table: RuleTable,
}

fn vars(prefix: &str, n: usize) -> Vec<NetTerm> {
    (1..=n).map(|i| NetTerm::name(format!("{prefix}{i}"))).collect()
}

/// `a[x1, ..., xn] >< a[x1, ..., xn]`
fn annihilation(a: Symbol) -> InteractionRule {
    let xs = vars("x", a.arity());
    InteractionRule::new(a, xs.clone(), a, xs).expect("well-formed schema")
}

/// `a[del(x1, y1), ..., del(xn, yn)] >< b[a(x1, ..., xn), a(y1, ..., yn)]`
fn commutation(a: Symbol, b: Symbol) -> InteractionRule {
    let (xs, ys) = (vars("x", a.arity()), vars("y", a.arity()));
    let dels = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| NetTerm::agent(Symbol::DEL, vec![x.clone(), y.clone()]))
        .collect();
    let copies = vec![NetTerm::agent(a, xs), NetTerm::agent(a, ys)];
    InteractionRule::new(a, dels, b, copies).expect("well-formed schema")
}

/// `a[eps, ..., eps] >< eps`
fn erasure(a: Symbol) -> InteractionRule {
    let eps = vec![NetTerm::agent(Symbol::EPS, vec![]); a.arity()];
    InteractionRule::new(a, eps, Symbol::EPS, vec![]).expect("well-formed schema")
}

pub fn build_system(variant: PsiDeltaVariant) -> UndirectedSystem {
    let psi_del = match variant {
        PsiDeltaVariant::Standard => commutation(Symbol::PSI, Symbol::DEL),
        PsiDeltaVariant::SchemaAlt => commutation(Symbol::DEL, Symbol::PSI),
    };
    let rules = [
        annihilation(Symbol::LAM),
        annihilation(Symbol::PSI),
        annihilation(Symbol::DEL),
        annihilation(Symbol::EPS),
        commutation(Symbol::LAM, Symbol::PSI),
        commutation(Symbol::LAM, Symbol::DEL),
        psi_del,
        erasure(Symbol::LAM),
        erasure(Symbol::PSI),
        erasure(Symbol::DEL),
    ];
    let mut table = RuleTable::new(false);
    for r in rules {
        table.insert(r).expect("one rule per unordered pair");
    }
    UndirectedSystem { variant, table }
}

pub fn encode(m: &LambdaTerm, fresh: &mut NameSupply) -> Configuration {
    encode_with(ROLES, m, fresh)
}

pub fn readback_roles() -> ReadbackRoles {
    ReadbackRoles {
        abstraction: Symbol::LAM,
        application: Symbol::LAM,
        fans: vec![(Symbol::PSI, 0), (Symbol::DEL, 1)],
        eraser: Some(Symbol::EPS),
    }
}

pub fn readback(c: &Configuration) -> Result<LambdaTerm, ReadbackError> {
    readback_with(&readback_roles(), c)
}
