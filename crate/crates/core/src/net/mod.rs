//! Interaction-calculus configurations and the machinery that reduces them.
//!
//! A configuration `<t1, ..., tk | u1 = v1, ...>` is an interface of terms
//! plus a multiset of equations over names. Every name occurs at most twice;
//! the two occurrences of a name form one wire. An agent term `a(t1, t2)`
//! attaches at its principal port, its arguments hang off the auxiliary ports.

mod dot;
mod engine;
mod graph;
mod rule;
mod text;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use dot::to_dot;
pub use engine::{
    reduce, reduce_with_hook, GcMode, ReduceError, ReduceOptions, Reduced, ReductionStats,
    Session, StepOutcome, Strategy,
};
pub use graph::{Endpoint, PortGraph};
pub use rule::{apply_rule, InteractionRule, RuleError, RuleTable, SymbolMismatch};
pub use text::{parse_config, ConfigParseError};

/// An agent label together with its arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: &'static str,
    arity: usize,
}

impl Symbol {
    pub const LAM: Symbol = Symbol::new("lam", 2);
    pub const PSI: Symbol = Symbol::new("psi", 2);
    pub const DEL: Symbol = Symbol::new("del", 2);
    pub const EPS: Symbol = Symbol::new("eps", 0);
    pub const LAM_STAR: Symbol = Symbol::new("lam*", 2);
    pub const PSI_STAR: Symbol = Symbol::new("psi*", 2);
    pub const DEL_STAR: Symbol = Symbol::new("del*", 2);

    /// Every symbol the text format understands.
    pub const KNOWN: [Symbol; 7] = [
        Symbol::LAM,
        Symbol::PSI,
        Symbol::DEL,
        Symbol::EPS,
        Symbol::LAM_STAR,
        Symbol::PSI_STAR,
        Symbol::DEL_STAR,
    ];

    pub const fn new(name: &'static str, arity: usize) -> Self {
        Symbol { name, arity }
    }

    pub fn name(self) -> &'static str {
        self.name
    }

    pub fn arity(self) -> usize {
        self.arity
    }

    pub fn from_token(token: &str) -> Option<Symbol> {
        Symbol::KNOWN.into_iter().find(|s| s.name == token)
    }

    /// `lam <-> lam*`, `psi <-> psi*`, `del <-> del*`; `None` for `eps`.
    pub fn star_swapped(self) -> Option<Symbol> {
        let swapped = match self.name {
            "lam" => Symbol::LAM_STAR,
            "lam*" => Symbol::LAM,
            "psi" => Symbol::PSI_STAR,
            "psi*" => Symbol::PSI,
            "del" => Symbol::DEL_STAR,
            "del*" => Symbol::DEL,
            _ => return None,
        };
        Some(swapped)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NetTerm {
    Name(String),
    Agent(Symbol, Vec<NetTerm>),
}

impl NetTerm {
    pub fn name(n: impl Into<String>) -> Self {
        NetTerm::Name(n.into())
    }

    pub fn agent(symbol: Symbol, ports: Vec<NetTerm>) -> Self {
        debug_assert_eq!(symbol.arity(), ports.len());
        NetTerm::Agent(symbol, ports)
    }

    pub fn as_name(&self) -> Option<&str> {
        match self {
            NetTerm::Name(n) => Some(n),
            NetTerm::Agent(..) => None,
        }
    }

    pub fn symbol(&self) -> Option<Symbol> {
        match self {
            NetTerm::Agent(s, _) => Some(*s),
            NetTerm::Name(_) => None,
        }
    }

    pub fn for_each_name<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            NetTerm::Name(n) => f(n),
            NetTerm::Agent(_, ports) => ports.iter().for_each(|p| p.for_each_name(f)),
        }
    }

    pub fn for_each_agent(&self, f: &mut impl FnMut(Symbol)) {
        if let NetTerm::Agent(s, ports) = self {
            f(*s);
            ports.iter().for_each(|p| p.for_each_agent(f));
        }
    }

    pub fn contains_name(&self, name: &str) -> bool {
        match self {
            NetTerm::Name(n) => n == name,
            NetTerm::Agent(_, ports) => ports.iter().any(|p| p.contains_name(name)),
        }
    }

    /// Replace the first occurrence of `name` by `with`. Returns the
    /// replacement back if `name` does not occur.
    pub fn replace_name(&mut self, name: &str, with: NetTerm) -> Result<(), NetTerm> {
        match self {
            NetTerm::Name(n) if n == name => {
                *self = with;
                Ok(())
            }
            NetTerm::Name(_) => Err(with),
            NetTerm::Agent(_, ports) => {
                let mut with = with;
                for p in ports {
                    match p.replace_name(name, with) {
                        Ok(()) => return Ok(()),
                        Err(w) => with = w,
                    }
                }
                Err(with)
            }
        }
    }

    pub fn map_symbols<E>(&self, f: &impl Fn(Symbol) -> Result<Symbol, E>) -> Result<NetTerm, E> {
        Ok(match self {
            NetTerm::Name(n) => NetTerm::Name(n.clone()),
            NetTerm::Agent(s, ports) => NetTerm::Agent(
                f(*s)?,
                ports
                    .iter()
                    .map(|p| p.map_symbols(f))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: NetTerm,
    pub rhs: NetTerm,
}

impl Equation {
    pub fn new(lhs: NetTerm, rhs: NetTerm) -> Self {
        Equation { lhs, rhs }
    }

    pub fn for_each_name<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        self.lhs.for_each_name(f);
        self.rhs.for_each_name(f);
    }

    pub fn is_active_pair(&self) -> bool {
        matches!(
            (&self.lhs, &self.rhs),
            (NetTerm::Agent(..), NetTerm::Agent(..))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("linearity violation: name {name} occurs {count} times")]
pub struct LinearityViolation {
    pub name: String,
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Configuration {
    pub interface: Vec<NetTerm>,
    pub equations: Vec<Equation>,
}

impl Configuration {
    pub fn new(interface: Vec<NetTerm>, equations: Vec<Equation>) -> Self {
        Configuration {
            interface,
            equations,
        }
    }

    pub fn name_counts(&self) -> BTreeMap<&str, usize> {
        let mut counts = BTreeMap::new();
        let mut bump = |n| *counts.entry(n).or_insert(0) += 1;
        self.interface.iter().for_each(|t| t.for_each_name(&mut bump));
        self.equations.iter().for_each(|e| e.for_each_name(&mut bump));
        counts
    }

    pub fn all_names(&self) -> BTreeSet<String> {
        self.name_counts().keys().map(|n| n.to_string()).collect()
    }

    /// Every name must occur at most twice. Reports the lexicographically
    /// first offender.
    pub fn validate(&self) -> Result<(), LinearityViolation> {
        match self.name_counts().into_iter().find(|&(_, c)| c > 2) {
            Some((name, count)) => Err(LinearityViolation {
                name: name.to_owned(),
                count,
            }),
            None => Ok(()),
        }
    }

    /// Number of agents per symbol, over interface and equations.
    pub fn agent_census(&self) -> BTreeMap<Symbol, usize> {
        let mut census = BTreeMap::new();
        let mut bump = |s| *census.entry(s).or_insert(0) += 1;
        self.interface.iter().for_each(|t| t.for_each_agent(&mut bump));
        for e in &self.equations {
            e.lhs.for_each_agent(&mut bump);
            e.rhs.for_each_agent(&mut bump);
        }
        census
    }

    /// Splits the equations into those connected to the interface through
    /// shared names and those that are not.
    pub fn partition_reachable(&self) -> (Vec<Equation>, Vec<Equation>) {
        let mut by_name: HashMap<&str, Vec<usize>> = HashMap::new();
        for (i, e) in self.equations.iter().enumerate() {
            e.for_each_name(&mut |n| by_name.entry(n).or_default().push(i));
        }
        let mut live = vec![false; self.equations.len()];
        let mut queue = VecDeque::new();
        let mut seen: HashSet<&str> = HashSet::new();
        for t in &self.interface {
            t.for_each_name(&mut |n| {
                if seen.insert(n) {
                    queue.extend(by_name.get(n).into_iter().flatten().copied());
                }
            });
        }
        while let Some(i) = queue.pop_front() {
            if live[i] {
                continue;
            }
            live[i] = true;
            self.equations[i].for_each_name(&mut |n| {
                if seen.insert(n) {
                    queue.extend(by_name.get(n).into_iter().flatten().copied());
                }
            });
        }
        let (mut l, mut g) = (Vec::new(), Vec::new());
        for (e, is_live) in self.equations.iter().zip(live) {
            if is_live {
                l.push(e.clone());
            } else {
                g.push(e.clone());
            }
        }
        (l, g)
    }

    /// Structural equality up to a bijective renaming of names. Equation
    /// order and orientation must match.
    pub fn equivalent(&self, other: &Configuration) -> bool {
        fn term(
            a: &NetTerm,
            b: &NetTerm,
            fwd: &mut HashMap<String, String>,
            bwd: &mut HashMap<String, String>,
        ) -> bool {
            match (a, b) {
                (NetTerm::Name(x), NetTerm::Name(y)) => {
                    match (fwd.get(x), bwd.get(y)) {
                        (None, None) => {
                            fwd.insert(x.clone(), y.clone());
                            bwd.insert(y.clone(), x.clone());
                            true
                        }
                        (Some(y2), Some(x2)) => y2 == y && x2 == x,
                        _ => false,
                    }
                }
                (NetTerm::Agent(s, ps), NetTerm::Agent(t, qs)) => {
                    s == t && ps.iter().zip(qs).all(|(p, q)| term(p, q, fwd, bwd))
                }
                _ => false,
            }
        }
        if self.interface.len() != other.interface.len()
            || self.equations.len() != other.equations.len()
        {
            return false;
        }
        let (mut fwd, mut bwd) = (HashMap::new(), HashMap::new());
        self.interface
            .iter()
            .zip(&other.interface)
            .all(|(a, b)| term(a, b, &mut fwd, &mut bwd))
            && self.equations.iter().zip(&other.equations).all(|(a, b)| {
                term(&a.lhs, &b.lhs, &mut fwd, &mut bwd) && term(&a.rhs, &b.rhs, &mut fwd, &mut bwd)
            })
    }
}
