//! The directed system over `{lam, lam*, del, del*, psi, psi*}`. Every rule
//! pairs an unstarred agent with a starred one, so active pairs are ordered.
//! There is no eraser: a vacuous binder is left as a dangling name and a
//! discarded argument becomes a disconnected component.

use thiserror::Error;

use crate::encode::{encode_with, EncodingRoles};
use crate::lambda::LambdaTerm;
use crate::net::{
    Configuration, Endpoint, Equation, InteractionRule, NetTerm, PortGraph, RuleTable, Symbol,
};
use crate::readback::{readback_with, ReadbackError, ReadbackRoles};
use crate::supply::NameSupply;

/// Slot order used by polarity assignments and their dumps.
pub const SYMBOLS: [Symbol; 6] = [
    Symbol::LAM,
    Symbol::LAM_STAR,
    Symbol::DEL,
    Symbol::DEL_STAR,
    Symbol::PSI,
    Symbol::PSI_STAR,
];

pub const UNSTARRED: [Symbol; 3] = [Symbol::LAM, Symbol::DEL, Symbol::PSI];
pub const STARRED: [Symbol; 3] = [Symbol::LAM_STAR, Symbol::DEL_STAR, Symbol::PSI_STAR];

/// The two dual translations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Abstraction `lam`, application `lam*`, sharing `psi*`.
    Gamma,
    /// Abstraction `lam*`, application `lam`, sharing `psi`.
    GammaStar,
}

impl Flavor {
    pub fn roles(self) -> EncodingRoles {
        match self {
            Flavor::Gamma => EncodingRoles {
                abstraction: Symbol::LAM,
                application: Symbol::LAM_STAR,
                sharing: Symbol::PSI_STAR,
                eraser: None,
            },
            Flavor::GammaStar => EncodingRoles {
                abstraction: Symbol::LAM_STAR,
                application: Symbol::LAM,
                sharing: Symbol::PSI,
                eraser: None,
            },
        }
    }

    pub fn readback_roles(self) -> ReadbackRoles {
        let roles = self.roles();
        ReadbackRoles {
            abstraction: roles.abstraction,
            application: roles.application,
            fans: vec![
                (Symbol::PSI, 0),
                (Symbol::PSI_STAR, 0),
                (Symbol::DEL, 1),
                (Symbol::DEL_STAR, 1),
            ],
            eraser: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DirectedSystem {
    pub table: RuleTable,
}

impl DirectedSystem {
    pub fn is_starred(s: Symbol) -> bool {
        STARRED.contains(&s)
    }
}

fn n(s: &str) -> NetTerm {
    NetTerm::name(s)
}

fn ag(s: Symbol, a: &str, b: &str) -> NetTerm {
    NetTerm::agent(s, vec![n(a), n(b)])
}

fn rule(alpha: Symbol, a: [NetTerm; 2], beta: Symbol, b: [NetTerm; 2]) -> InteractionRule {
    InteractionRule::new(alpha, a.to_vec(), beta, b.to_vec()).expect("well-formed rule")
}

pub fn build_directed_system() -> DirectedSystem {
    use Symbol as S;
    let annihilate = |a: Symbol, b: Symbol| rule(a, [n("a"), n("b")], b, [n("a"), n("b")]);
    let rules = [
        annihilate(S::LAM, S::LAM_STAR),
        annihilate(S::DEL, S::DEL_STAR),
        annihilate(S::PSI, S::PSI_STAR),
        rule(
            S::LAM,
            [ag(S::DEL, "a", "b"), ag(S::DEL_STAR, "c", "d")],
            S::DEL_STAR,
            [ag(S::LAM, "a", "c"), ag(S::LAM, "b", "d")],
        ),
        rule(
            S::LAM,
            [ag(S::DEL, "a", "b"), ag(S::DEL_STAR, "c", "d")],
            S::PSI_STAR,
            [ag(S::LAM, "a", "c"), ag(S::LAM, "b", "d")],
        ),
        rule(
            S::DEL,
            [ag(S::LAM_STAR, "a", "b"), ag(S::LAM_STAR, "c", "d")],
            S::LAM_STAR,
            [ag(S::DEL_STAR, "a", "c"), ag(S::DEL, "b", "d")],
        ),
        rule(
            S::PSI,
            [ag(S::LAM_STAR, "a", "b"), ag(S::LAM_STAR, "c", "d")],
            S::LAM_STAR,
            [ag(S::DEL_STAR, "a", "c"), ag(S::DEL, "b", "d")],
        ),
        rule(
            S::PSI,
            [ag(S::DEL_STAR, "a", "b"), ag(S::DEL_STAR, "c", "d")],
            S::DEL_STAR,
            [ag(S::PSI, "a", "c"), ag(S::PSI, "b", "d")],
        ),
        rule(
            S::DEL,
            [ag(S::PSI_STAR, "a", "b"), ag(S::PSI_STAR, "c", "d")],
            S::PSI_STAR,
            [ag(S::DEL, "a", "c"), ag(S::DEL, "b", "d")],
        ),
    ];
    let mut table = RuleTable::new(true);
    for r in rules {
        table.insert(r).expect("distinct keys");
    }
    DirectedSystem { table }
}

pub fn encode_gamma(m: &LambdaTerm, fresh: &mut NameSupply) -> Configuration {
    encode_with(Flavor::Gamma.roles(), m, fresh)
}

pub fn encode_gamma_star(m: &LambdaTerm, fresh: &mut NameSupply) -> Configuration {
    encode_with(Flavor::GammaStar.roles(), m, fresh)
}

pub fn readback_directed(c: &Configuration, flavor: Flavor) -> Result<LambdaTerm, ReadbackError> {
    readback_with(&flavor.readback_roles(), c)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolarityError {
    #[error("symbol {0} is not part of the directed system")]
    ForeignSymbol(Symbol),
    #[error("no polarity assignment satisfies the rules and witnesses")]
    NoAssignment,
    #[error("wire {wire} joins two ports of the same sign")]
    WireViolation { wire: String },
}

/// Swap every agent for its starred (or unstarred) counterpart.
pub fn dual(c: &Configuration) -> Result<Configuration, PolarityError> {
    let swap = |s: Symbol| s.star_swapped().ok_or(PolarityError::ForeignSymbol(s));
    Ok(Configuration {
        interface: c
            .interface
            .iter()
            .map(|t| t.map_symbols(&swap))
            .collect::<Result<_, _>>()?,
        equations: c
            .equations
            .iter()
            .map(|e| Ok(Equation::new(e.lhs.map_symbols(&swap)?, e.rhs.map_symbols(&swap)?)))
            .collect::<Result<_, PolarityError>>()?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A sign for each of the 18 (symbol, port) slots; port 0 is principal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolarityAssignment {
    mask: u32,
}

fn slot(s: Symbol, port: usize) -> Result<usize, PolarityError> {
    SYMBOLS
        .iter()
        .position(|&x| x == s)
        .map(|i| i * 3 + port)
        .ok_or(PolarityError::ForeignSymbol(s))
}

impl PolarityAssignment {
    /// Set bits are `-`.
    pub fn from_mask(mask: u32) -> Self {
        PolarityAssignment { mask }
    }

    pub fn sign(&self, s: Symbol, port: usize) -> Option<Sign> {
        let i = slot(s, port).ok()?;
        Some(if self.mask >> i & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        })
    }

    /// `sign(a*, p) == -sign(a, p)` for every pair and port.
    pub fn is_star_antisymmetric(&self) -> bool {
        UNSTARRED.iter().zip(STARRED).all(|(&a, b)| {
            (0..3).all(|p| self.sign(a, p).map(Sign::flip) == self.sign(b, p))
        })
    }

    /// One `symbol port sign` line per slot.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in SYMBOLS {
            for p in 0..3 {
                let sign = match self.sign(s, p) {
                    Some(Sign::Plus) => '+',
                    _ => '-',
                };
                out.push_str(&format!("{s} {p} {sign}\n"));
            }
        }
        out
    }
}

/// `slot(a) == slot(b)` when `equal`, else opposite.
#[derive(Clone, Copy, Debug)]
struct Constraint {
    a: usize,
    b: usize,
    equal: bool,
}

/// Constraints every rule imposes: active principals are opposite; a
/// template agent presents the sign of the port it replaces; the two ends of
/// each template variable are opposite.
fn rule_constraints(r: &InteractionRule, out: &mut Vec<Constraint>) -> Result<(), PolarityError> {
    out.push(Constraint {
        a: slot(r.alpha, 0)?,
        b: slot(r.beta, 0)?,
        equal: false,
    });
    // (slot, negated): the sign seen at the variable's end of the wire.
    let mut occurrences: Vec<(&str, usize, bool)> = Vec::new();
    fn nested<'a>(
        t: &'a NetTerm,
        parent: usize,
        out: &mut Vec<Constraint>,
        occ: &mut Vec<(&'a str, usize, bool)>,
    ) -> Result<(), PolarityError> {
        match t {
            NetTerm::Name(v) => occ.push((v, parent, false)),
            NetTerm::Agent(s, ports) => {
                out.push(Constraint {
                    a: slot(*s, 0)?,
                    b: parent,
                    equal: false,
                });
                for (k, p) in ports.iter().enumerate() {
                    nested(p, slot(*s, k + 1)?, out, occ)?;
                }
            }
        }
        Ok(())
    }
    for (side, templates) in [(r.alpha, &r.alpha_templates), (r.beta, &r.beta_templates)] {
        for (i, t) in templates.iter().enumerate() {
            let at = slot(side, i + 1)?;
            match t {
                NetTerm::Name(v) => occurrences.push((v, at, true)),
                NetTerm::Agent(s, ports) => {
                    out.push(Constraint {
                        a: slot(*s, 0)?,
                        b: at,
                        equal: true,
                    });
                    for (k, p) in ports.iter().enumerate() {
                        nested(p, slot(*s, k + 1)?, out, &mut occurrences)?;
                    }
                }
            }
        }
    }
    for (i, &(v, s1, n1)) in occurrences.iter().enumerate() {
        for &(w, s2, n2) in &occurrences[i + 1..] {
            if v == w {
                out.push(Constraint {
                    a: s1,
                    b: s2,
                    equal: n1 != n2,
                });
            }
        }
    }
    Ok(())
}

fn agent_wires(c: &Configuration) -> Result<Vec<(usize, usize, String)>, PolarityError> {
    let g = PortGraph::build(c);
    let mut out = Vec::new();
    for (a, b) in g.wires() {
        if let (Endpoint::Port { agent: x, port: p }, Endpoint::Port { agent: y, port: q }) = (&a, &b) {
            let label = g
                .wire_label(*x, *p)
                .map(str::to_owned)
                .unwrap_or_else(|| format!("{}#{x}.{p}--{}#{y}.{q}", g.symbol(*x), g.symbol(*y)));
            out.push((slot(g.symbol(*x), *p)?, slot(g.symbol(*y), *q)?, label));
        }
    }
    Ok(out)
}

/// Exhaustive search over all 2^18 sign assignments for one under which
/// every rule preserves polarity and every wire of every witness joins
/// opposite signs. Returns the first in ascending mask order.
pub fn derive_polarity(
    sys: &DirectedSystem,
    witnesses: &[Configuration],
) -> Result<PolarityAssignment, PolarityError> {
    let mut constraints = Vec::new();
    for r in sys.table.rules() {
        rule_constraints(r, &mut constraints)?;
    }
    for w in witnesses {
        for (a, b, _) in agent_wires(w)? {
            constraints.push(Constraint { a, b, equal: false });
        }
    }
    (0u32..1 << 18)
        .find(|&mask| {
            constraints
                .iter()
                .all(|c| ((mask >> c.a ^ mask >> c.b) & 1 == 0) == c.equal)
        })
        .map(PolarityAssignment::from_mask)
        .ok_or(PolarityError::NoAssignment)
}

/// Every wire joining two agent ports must join opposite signs.
pub fn check_polarity(c: &Configuration, p: &PolarityAssignment) -> Result<(), PolarityError> {
    for (a, b, label) in agent_wires(c)? {
        if (p.mask >> a ^ p.mask >> b) & 1 == 0 {
            return Err(PolarityError::WireViolation { wire: label });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{church, parse_term};
    use crate::net::{apply_rule, parse_config};

    fn term(s: &str) -> LambdaTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn nine_rules_cover_unstarred_by_starred() {
        let sys = build_directed_system();
        assert_eq!(sys.table.len(), 9);
        for a in UNSTARRED {
            for b in STARRED {
                let (r, flipped) = sys.table.lookup(a, b).expect("rule");
                assert!(!flipped);
                assert_eq!(r.key(), (a, b));
                assert!(sys.table.lookup(b, a).unwrap().1);
            }
        }
        assert!(sys.table.lookup(Symbol::LAM, Symbol::LAM).is_none());
        assert!(sys.table.lookup(Symbol::LAM_STAR, Symbol::PSI_STAR).is_none());
    }

    #[test]
    fn rule_applications() {
        let sys = build_directed_system();
        let eq = |s: &str| parse_config(&format!("<|{s}>")).unwrap().equations.remove(0);
        let show = |v: Vec<Equation>| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();

        let e = eq("lam(a, b) = lam*(c, d)");
        let (r, _) = sys.table.lookup(Symbol::LAM, Symbol::LAM_STAR).unwrap();
        let out = apply_rule(r, &e, &mut NameSupply::new()).unwrap();
        assert_eq!(show(out), ["a = n0", "b = n1", "c = n0", "d = n1"]);

        let e = eq("psi(a, b) = del*(c, d)");
        let (r, _) = sys.table.lookup(Symbol::PSI, Symbol::DEL_STAR).unwrap();
        let out = apply_rule(r, &e, &mut NameSupply::new()).unwrap();
        assert_eq!(
            show(out),
            [
                "a = del*(n0, n1)",
                "b = del*(n2, n3)",
                "c = psi(n0, n2)",
                "d = psi(n1, n3)"
            ]
        );
    }

    #[test]
    fn gamma_encodings() {
        let c = encode_gamma(&term("y"), &mut NameSupply::new());
        assert!(c.equivalent(&parse_config("<x | x = y>").unwrap()));

        let c = encode_gamma(&term("(\\y.y)(\\z.z)"), &mut NameSupply::new());
        let expected =
            parse_config("<x | f = lam*(a, x), f = lam(y, w), w = y, a = lam(z, v), v = z>")
                .unwrap();
        assert!(c.equivalent(&expected), "{c}");

        let c = encode_gamma_star(&term("\\x. x x"), &mut NameSupply::new());
        let census = c.agent_census();
        assert_eq!(census.get(&Symbol::LAM_STAR), Some(&1));
        assert_eq!(census.get(&Symbol::LAM), Some(&1));
        assert_eq!(census.get(&Symbol::PSI), Some(&1));
        assert_eq!(census.len(), 3);
    }

    #[test]
    fn vacuous_binder_dangles() {
        let c = encode_gamma(&term("\\a.\\y.y"), &mut NameSupply::new());
        let once = c.name_counts().into_iter().filter(|&(_, k)| k == 1).count();
        assert_eq!(once, 1);
    }

    #[test]
    fn duality() {
        let c = parse_config("<x | x = lam(y, z), z = y>").unwrap();
        assert_eq!(dual(&c).unwrap(), parse_config("<x | x = lam*(y, z), z = y>").unwrap());
        for s in ["\\x. x x", "(\\x.\\y. x) a b", "\\f.\\x. f (f x)"] {
            let m = term(s);
            let g = encode_gamma(&m, &mut NameSupply::new());
            assert_eq!(dual(&dual(&g).unwrap()).unwrap(), g);
            assert_eq!(dual(&g).unwrap(), encode_gamma_star(&m, &mut NameSupply::new()));
        }
        let c = parse_config("<x | x = eps>").unwrap();
        assert_eq!(dual(&c), Err(PolarityError::ForeignSymbol(Symbol::EPS)));
    }

    #[test]
    fn polarity_exists_and_is_antisymmetric() {
        let sys = build_directed_system();
        let w = encode_gamma(&term("\\y.y"), &mut NameSupply::new());
        let p = derive_polarity(&sys, &[w]).unwrap();
        assert!(p.is_star_antisymmetric());
        let c = encode_gamma(&church(2), &mut NameSupply::new());
        assert_eq!(check_polarity(&c, &p), Ok(()));
        let bad = parse_config("<x | lam(a, b) = lam(c, d)>").unwrap();
        assert!(matches!(
            check_polarity(&bad, &p),
            Err(PolarityError::WireViolation { .. })
        ));
    }

    #[test]
    fn corrupted_table_has_no_assignment() {
        let mut sys = build_directed_system();
        let mut rules = sys.table.rules().to_vec();
        rules[0].beta_templates.swap(0, 1);
        let mut table = RuleTable::new(true);
        for r in rules {
            table.insert(r).unwrap();
        }
        sys.table = table;
        let w = encode_gamma(&term("\\y.y"), &mut NameSupply::new());
        assert_eq!(derive_polarity(&sys, &[w]), Err(PolarityError::NoAssignment));
    }

    #[test]
    fn directed_readback() {
        let c = parse_config("<x | x = lam(y, z), z = y>").unwrap();
        assert_eq!(readback_directed(&c, Flavor::Gamma).unwrap(), term("\\y. y"));
        assert_eq!(
            readback_directed(&dual(&c).unwrap(), Flavor::GammaStar).unwrap(),
            term("\\y. y")
        );
        let c = parse_config("<x | x = lam*(a, b)>").unwrap();
        assert!(matches!(
            readback_directed(&c, Flavor::Gamma),
            Err(ReadbackError::Malformed { .. })
        ));
    }
}
