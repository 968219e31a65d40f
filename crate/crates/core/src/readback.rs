//! Decoding normal-form nets back into lambda terms.
//!
//! The walk starts at the single interface port. Reaching an abstraction
//! agent at its principal port yields an abstraction, reaching an
//! application agent at its result port yields an application, and reaching
//! an abstraction's binder port yields that abstraction's variable. Fan
//! agents (sharing and duplication) are crossed: entering at an auxiliary
//! port records the port on a per-family stack and continues from the
//! principal port; entering at the principal port pops the stack to pick the
//! auxiliary port to leave by.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::lambda::LambdaTerm;
use crate::net::{Configuration, Endpoint, PortGraph, Symbol};
use crate::supply::NameSupply;

const MAX_DEPTH: usize = 2_000;
const MAX_NODES: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadbackRoles {
    pub abstraction: Symbol,
    pub application: Symbol,
    /// Fan symbols with the family each belongs to. Entries pushed by one
    /// member of a family are popped by any member of the same family.
    pub fans: Vec<(Symbol, usize)>,
    pub eraser: Option<Symbol>,
}

impl ReadbackRoles {
    fn family(&self, s: Symbol) -> Option<usize> {
        self.fans.iter().find(|(f, _)| *f == s).map(|(_, fam)| *fam)
    }

    fn families(&self) -> usize {
        self.fans.iter().map(|(_, f)| f + 1).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReadbackError {
    #[error("residual sharing: {port}")]
    ResidualSharing { port: String },
    #[error("not in normal form: active pair {pair}")]
    NotNormal { pair: String },
    #[error("binder port of agent {agent} reached outside its abstraction")]
    UnboundOccurrence { agent: usize },
    #[error("unexpected wire into {at}")]
    Malformed { at: String },
    #[error("expected exactly one interface port, found {0}")]
    Interface(usize),
    #[error("read-back term exceeds size or depth limit")]
    TooLarge,
}

struct Reader<'g> {
    g: &'g PortGraph,
    roles: &'g ReadbackRoles,
    scope: HashMap<usize, Vec<String>>,
    in_scope: HashMap<String, usize>,
    free: HashSet<&'g str>,
    fresh: NameSupply,
    nodes: usize,
}

fn looks_generated(n: &str) -> bool {
    n.len() > 1 && n.starts_with('n') && n[1..].bytes().all(|b| b.is_ascii_digit())
}

impl Reader<'_> {
    fn describe(&self, agent: usize, port: usize) -> String {
        format!("{} agent #{agent} port {port}", self.g.symbol(agent))
    }

    fn binder_name(&mut self, agent: usize) -> String {
        let partner = self.g.partner(&Endpoint::port(agent, 1));
        let vacuous = match partner {
            Endpoint::Free(_) => true,
            Endpoint::Port { agent: a, .. } => Some(self.g.symbol(a)) == self.roles.eraser,
            Endpoint::Interface(_) => false,
        };
        if !vacuous {
            if let Some(n) = self.g.port_name(agent, 1) {
                if !looks_generated(n) && !self.free.contains(n) && !self.in_scope.contains_key(n)
                {
                    return n.to_owned();
                }
            }
        }
        self.fresh.fresh()
    }

    fn read(
        &mut self,
        from: Endpoint,
        stacks: &mut Vec<Vec<usize>>,
        depth: usize,
    ) -> Result<LambdaTerm, ReadbackError> {
        self.nodes += 1;
        if depth > MAX_DEPTH || self.nodes > MAX_NODES {
            return Err(ReadbackError::TooLarge);
        }
        let to = self.g.partner(&from);
        let (agent, port) = match to {
            Endpoint::Free(n) => return Ok(LambdaTerm::Var(n)),
            Endpoint::Interface(i) => {
                return Err(ReadbackError::Malformed {
                    at: format!("interface port {i}"),
                })
            }
            Endpoint::Port { agent, port } => (agent, port),
        };
        let sym = self.g.symbol(agent);
        if let Endpoint::Port { agent: a, port: 0 } = from {
            if port == 0 {
                return Err(ReadbackError::NotNormal {
                    pair: format!("{} >< {}", self.g.symbol(a), sym),
                });
            }
        }
        if Some(sym) == self.roles.eraser {
            return Err(ReadbackError::ResidualSharing {
                port: self.describe(agent, port),
            });
        }
        if let Some(fam) = self.roles.family(sym) {
            return if port == 0 {
                let Some(exit) = stacks[fam].pop() else {
                    return Err(ReadbackError::ResidualSharing {
                        port: self.describe(agent, port),
                    });
                };
                let r = self.read(Endpoint::port(agent, exit), stacks, depth + 1);
                stacks[fam].push(exit);
                r
            } else {
                stacks[fam].push(port);
                let r = self.read(Endpoint::port(agent, 0), stacks, depth + 1);
                stacks[fam].pop();
                r
            };
        }
        if sym == self.roles.abstraction && port == 0 {
            let x = self.binder_name(agent);
            self.scope.entry(agent).or_default().push(x.clone());
            *self.in_scope.entry(x.clone()).or_insert(0) += 1;
            let body = self.read(Endpoint::port(agent, 2), stacks, depth + 1);
            self.scope.get_mut(&agent).map(Vec::pop);
            if let Some(c) = self.in_scope.get_mut(&x) {
                *c -= 1;
                if *c == 0 {
                    self.in_scope.remove(&x);
                }
            }
            return Ok(LambdaTerm::Abs(x, Box::new(body?)));
        }
        if sym == self.roles.abstraction && port == 1 {
            return match self.scope.get(&agent).and_then(|v| v.last()) {
                Some(x) => Ok(LambdaTerm::Var(x.clone())),
                None => Err(ReadbackError::UnboundOccurrence { agent }),
            };
        }
        if sym == self.roles.application && port == 2 {
            let fun = self.read(Endpoint::port(agent, 0), stacks, depth + 1)?;
            let arg = self.read(Endpoint::port(agent, 1), stacks, depth + 1)?;
            return Ok(LambdaTerm::App(Box::new(fun), Box::new(arg)));
        }
        Err(ReadbackError::Malformed {
            at: self.describe(agent, port),
        })
    }
}

/// Reads the term hanging off the single interface port of `c`.
pub fn readback_with(roles: &ReadbackRoles, c: &Configuration) -> Result<LambdaTerm, ReadbackError> {
    if c.interface.len() != 1 {
        return Err(ReadbackError::Interface(c.interface.len()));
    }
    let g = PortGraph::build(c);
    let mut reader = Reader {
        g: &g,
        roles,
        scope: HashMap::new(),
        in_scope: HashMap::new(),
        free: g.free_names().iter().map(String::as_str).collect(),
        fresh: NameSupply::with_prefix("v").avoiding(c.all_names()),
        nodes: 0,
    };
    let mut stacks = vec![Vec::new(); roles.families()];
    reader.read(Endpoint::Interface(0), &mut stacks, 0)
}
