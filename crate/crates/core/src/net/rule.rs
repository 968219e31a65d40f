use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use super::{Equation, NetTerm, Symbol};
use crate::supply::NameSupply;

/// `alpha[alpha_templates] >< beta[beta_templates]`: an active pair of
/// `alpha` and `beta` is replaced by the templates, the i-th template of a
/// side being attached to what hung off that agent's i-th auxiliary port.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionRule {
    pub alpha: Symbol,
    pub beta: Symbol,
    pub alpha_templates: Vec<NetTerm>,
    pub beta_templates: Vec<NetTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("{symbol} has arity {arity} but the rule gives {given} templates")]
    Arity {
        symbol: Symbol,
        arity: usize,
        given: usize,
    },
    #[error("template variable {name} occurs {count} times (must be exactly 2)")]
    Linearity { name: String, count: usize },
    #[error("a rule for {0} >< {1} already exists")]
    Duplicate(Symbol, Symbol),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("equation {equation} does not match rule {alpha} >< {beta}")]
pub struct SymbolMismatch {
    pub equation: String,
    pub alpha: Symbol,
    pub beta: Symbol,
}

impl InteractionRule {
    pub fn new(
        alpha: Symbol,
        alpha_templates: Vec<NetTerm>,
        beta: Symbol,
        beta_templates: Vec<NetTerm>,
    ) -> Result<Self, RuleError> {
        for (symbol, given) in [(alpha, alpha_templates.len()), (beta, beta_templates.len())] {
            if symbol.arity() != given {
                return Err(RuleError::Arity {
                    symbol,
                    arity: symbol.arity(),
                    given,
                });
            }
        }
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for t in alpha_templates.iter().chain(&beta_templates) {
            t.for_each_name(&mut |n| *counts.entry(n).or_insert(0) += 1);
        }
        if let Some((name, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(RuleError::Linearity {
                name: name.to_string(),
                count,
            });
        }
        Ok(InteractionRule {
            alpha,
            beta,
            alpha_templates,
            beta_templates,
        })
    }

    pub fn key(&self) -> (Symbol, Symbol) {
        (self.alpha, self.beta)
    }

    /// Template variables in order of first occurrence.
    fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for t in self.alpha_templates.iter().chain(&self.beta_templates) {
            t.for_each_name(&mut |n| {
                if !out.contains(&n) {
                    out.push(n)
                }
            });
        }
        out
    }
}

fn instantiate(t: &NetTerm, names: &HashMap<&str, String>) -> NetTerm {
    match t {
        NetTerm::Name(n) => NetTerm::Name(names[n.as_str()].clone()),
        NetTerm::Agent(s, ports) => {
            NetTerm::Agent(*s, ports.iter().map(|p| instantiate(p, names)).collect())
        }
    }
}

/// Rewrites the active pair `active` with `rule`, renaming every template
/// variable apart. Accepts either orientation of the equation.
pub fn apply_rule(
    rule: &InteractionRule,
    active: &Equation,
    fresh: &mut NameSupply,
) -> Result<Vec<Equation>, SymbolMismatch> {
    let mismatch = || SymbolMismatch {
        equation: active.to_string(),
        alpha: rule.alpha,
        beta: rule.beta,
    };
    let (NetTerm::Agent(l, lports), NetTerm::Agent(r, rports)) = (&active.lhs, &active.rhs) else {
        return Err(mismatch());
    };
    let (alpha_ports, beta_ports) = if (*l, *r) == rule.key() {
        (lports, rports)
    } else if (*r, *l) == rule.key() {
        (rports, lports)
    } else {
        return Err(mismatch());
    };
    let names: HashMap<&str, String> = rule
        .variables()
        .into_iter()
        .map(|v| (v, fresh.fresh()))
        .collect();
    let alpha_side = alpha_ports.iter().zip(&rule.alpha_templates);
    let beta_side = beta_ports.iter().zip(&rule.beta_templates);
    Ok(alpha_side
        .chain(beta_side)
        .map(|(port, template)| Equation::new(port.clone(), instantiate(template, &names)))
        .collect())
}

fn write_side(f: &mut fmt::Formatter<'_>, s: Symbol, templates: &[NetTerm]) -> fmt::Result {
    write!(f, "{s}")?;
    if !templates.is_empty() {
        f.write_str("[")?;
        for (i, t) in templates.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")?;
    }
    Ok(())
}

impl fmt::Display for InteractionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, self.alpha, &self.alpha_templates)?;
        f.write_str(" >< ")?;
        write_side(f, self.beta, &self.beta_templates)
    }
}

/// A set of rules, at most one per symbol pair. Unordered tables treat
/// `(a, b)` and `(b, a)` as the same key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTable {
    ordered: bool,
    rules: Vec<InteractionRule>,
}

impl RuleTable {
    pub fn new(ordered: bool) -> Self {
        RuleTable {
            ordered,
            rules: Vec::new(),
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    fn canonical(&self, a: Symbol, b: Symbol) -> (Symbol, Symbol) {
        if !self.ordered && b.name() < a.name() {
            (b, a)
        } else {
            (a, b)
        }
    }

    pub fn insert(&mut self, rule: InteractionRule) -> Result<(), RuleError> {
        let key = self.canonical(rule.alpha, rule.beta);
        if self
            .rules
            .iter()
            .any(|r| self.canonical(r.alpha, r.beta) == key)
        {
            return Err(RuleError::Duplicate(rule.alpha, rule.beta));
        }
        self.rules.push(rule);
        Ok(())
    }

    /// Finds the rule for an active pair, in either orientation. The flag is
    /// true when `(a, b)` matched the rule as `(beta, alpha)`.
    pub fn lookup(&self, a: Symbol, b: Symbol) -> Option<(&InteractionRule, bool)> {
        if let Some(r) = self.rules.iter().find(|r| r.key() == (a, b)) {
            return Some((r, false));
        }
        self.rules
            .iter()
            .find(|r| r.key() == (b, a))
            .map(|r| (r, true))
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> &[InteractionRule] {
        &self.rules
    }

    /// One rule per line, in insertion order.
    pub fn dump(&self) -> String {
        self.rules.iter().map(|r| format!("{r}\n")).collect()
    }
}
