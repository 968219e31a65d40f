//! Translation of lambda terms into configurations, shared by the
//! undirected system and both directed encodings.

use std::collections::{HashMap, HashSet};

use crate::lambda::LambdaTerm;
use crate::net::{Configuration, Equation, NetTerm, Symbol};
use crate::supply::NameSupply;

/// Which agent plays which part in a translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodingRoles {
    pub abstraction: Symbol,
    pub application: Symbol,
    pub sharing: Symbol,
    /// Attached to the binder port of a vacuous abstraction. Without one the
    /// binder is left as a dangling name.
    pub eraser: Option<Symbol>,
}

struct Encoder<'a> {
    roles: EncodingRoles,
    fresh: &'a mut NameSupply,
    used: HashSet<String>,
    equations: Vec<Equation>,
}

fn name(n: &str) -> NetTerm {
    NetTerm::Name(n.to_owned())
}

impl Encoder<'_> {
    fn emit(&mut self, lhs: NetTerm, rhs: NetTerm) {
        self.equations.push(Equation::new(lhs, rhs));
    }

    fn agent(&self, s: Symbol, a: NetTerm, b: NetTerm) -> NetTerm {
        NetTerm::agent(s, vec![a, b])
    }

    /// Binder names keep the source identifier the first time it is seen.
    fn binder_name(&mut self, source: &str) -> String {
        if self.used.insert(source.to_owned()) {
            source.to_owned()
        } else {
            self.fresh.fresh()
        }
    }

    fn go(&mut self, m: &LambdaTerm, x: String, env: &HashMap<String, String>) {
        match m {
            LambdaTerm::Var(y) => {
                let target = env.get(y).cloned().unwrap_or_else(|| y.clone());
                self.emit(NetTerm::Name(x), NetTerm::Name(target));
            }
            LambdaTerm::Abs(y, body) => {
                let z = self.fresh.fresh();
                let mut env = env.clone();
                let binder = match self.roles.eraser {
                    Some(eps) if !body.is_free(y) => NetTerm::agent(eps, vec![]),
                    _ => {
                        let b = self.binder_name(y);
                        env.insert(y.clone(), b.clone());
                        name(&b)
                    }
                };
                let t = self.agent(self.roles.abstraction, binder, name(&z));
                self.emit(NetTerm::Name(x), t);
                self.go(body, z, &env);
            }
            LambdaTerm::App(fun, arg) => {
                let y = self.fresh.fresh();
                let z = self.fresh.fresh();
                let t = self.agent(self.roles.application, name(&z), name(&x));
                self.emit(NetTerm::Name(y.clone()), t);
                let (mut env_fun, mut env_arg) = (env.clone(), env.clone());
                for t in shared_variables(fun, arg) {
                    let wire = env.get(&t).cloned().unwrap_or_else(|| t.clone());
                    let (t1, t2) = (self.fresh.fresh(), self.fresh.fresh());
                    let share = self.agent(self.roles.sharing, name(&t1), name(&t2));
                    self.emit(NetTerm::Name(wire), share);
                    env_fun.insert(t.clone(), t1);
                    env_arg.insert(t, t2);
                }
                self.go(fun, y, &env_fun);
                self.go(arg, z, &env_arg);
            }
        }
    }
}

/// `FV(fun) ∩ FV(arg)` in order of first occurrence in `fun`.
pub fn shared_variables(fun: &LambdaTerm, arg: &LambdaTerm) -> Vec<String> {
    let in_arg = arg.free_vars();
    fun.free_vars_ordered()
        .into_iter()
        .filter(|v| in_arg.contains(v))
        .collect()
}

/// `<x | Γ(m, x)>` for the given agent roles. Free variables keep their
/// names; every generated name comes from `fresh`, which must avoid the
/// identifiers of `m`.
pub fn encode_with(roles: EncodingRoles, m: &LambdaTerm, fresh: &mut NameSupply) -> Configuration {
    for n in m.all_names() {
        fresh.reserve(&n);
    }
    let root = fresh.fresh();
    let mut enc = Encoder {
        roles,
        fresh,
        used: m.free_vars().into_iter().collect(),
        equations: Vec::new(),
    };
    enc.go(m, root.clone(), &HashMap::new());
    Configuration::new(vec![NetTerm::Name(root)], enc.equations)
}

/// Structural counts of a term that fix the size of its encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub abstractions: usize,
    pub applications: usize,
    /// Total of `|FV(M) ∩ FV(N)|` over all applications `M N`.
    pub shared_splits: usize,
    pub vacuous_binders: usize,
}

impl Census {
    pub fn of(t: &LambdaTerm) -> Census {
        let mut c = Census::default();
        fn go(t: &LambdaTerm, c: &mut Census) {
            match t {
                LambdaTerm::Var(_) => {}
                LambdaTerm::Abs(x, body) => {
                    c.abstractions += 1;
                    if !body.is_free(x) {
                        c.vacuous_binders += 1;
                    }
                    go(body, c);
                }
                LambdaTerm::App(f, a) => {
                    c.applications += 1;
                    c.shared_splits += f.free_vars().intersection(&a.free_vars()).count();
                    go(f, c);
                    go(a, c);
                }
            }
        }
        go(t, &mut c);
        c
    }
}
