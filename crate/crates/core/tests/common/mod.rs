//! Reference implementations for tests, written independently of the
//! library: de Bruijn terms with shifting substitution, plus a structural
//! census of lambda terms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lamnet::LambdaTerm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Db {
    /// Bound variable by de Bruijn index.
    Bound(usize),
    Free(String),
    Lam(Box<Db>),
    App(Box<Db>, Box<Db>),
}

pub fn to_db(t: &LambdaTerm) -> Db {
    fn go(t: &LambdaTerm, env: &mut Vec<String>) -> Db {
        match t {
            LambdaTerm::Var(x) => match env.iter().rev().position(|b| b == x) {
                Some(i) => Db::Bound(i),
                None => Db::Free(x.clone()),
            },
            LambdaTerm::Abs(x, body) => {
                env.push(x.clone());
                let b = go(body, env);
                env.pop();
                Db::Lam(Box::new(b))
            }
            LambdaTerm::App(f, a) => Db::App(Box::new(go(f, env)), Box::new(go(a, env))),
        }
    }
    go(t, &mut Vec::new())
}

pub fn alpha_equivalent(a: &LambdaTerm, b: &LambdaTerm) -> bool {
    to_db(a) == to_db(b)
}

fn shift(t: &Db, by: isize, cutoff: usize) -> Db {
    match t {
        Db::Bound(i) if *i >= cutoff => Db::Bound((*i as isize + by) as usize),
        Db::Bound(_) | Db::Free(_) => t.clone(),
        Db::Lam(b) => Db::Lam(Box::new(shift(b, by, cutoff + 1))),
        Db::App(f, a) => Db::App(Box::new(shift(f, by, cutoff)), Box::new(shift(a, by, cutoff))),
    }
}

fn subst(t: &Db, j: usize, s: &Db) -> Db {
    match t {
        Db::Bound(i) if *i == j => s.clone(),
        Db::Bound(_) | Db::Free(_) => t.clone(),
        Db::Lam(b) => Db::Lam(Box::new(subst(b, j + 1, &shift(s, 1, 0)))),
        Db::App(f, a) => Db::App(Box::new(subst(f, j, s)), Box::new(subst(a, j, s))),
    }
}

fn beta(body: &Db, arg: &Db) -> Db {
    shift(&subst(body, 0, &shift(arg, 1, 0)), -1, 0)
}

fn step(t: &Db) -> Option<Db> {
    match t {
        Db::Bound(_) | Db::Free(_) => None,
        Db::Lam(b) => step(b).map(|b| Db::Lam(Box::new(b))),
        Db::App(f, a) => {
            if let Db::Lam(body) = &**f {
                return Some(beta(body, a));
            }
            if let Some(f) = step(f) {
                return Some(Db::App(Box::new(f), a.clone()));
            }
            step(a).map(|a| Db::App(f.clone(), Box::new(a)))
        }
    }
}

/// Leftmost-outermost normalization with a step budget.
pub fn normalize_db(t: &Db, fuel: usize) -> Option<Db> {
    let mut cur = t.clone();
    for _ in 0..=fuel {
        match step(&cur) {
            Some(next) => cur = next,
            None => return Some(cur),
        }
    }
    None
}

pub fn is_beta_normal(t: &LambdaTerm) -> bool {
    match t {
        LambdaTerm::Var(_) => true,
        LambdaTerm::Abs(_, b) => is_beta_normal(b),
        LambdaTerm::App(f, a) => {
            !matches!(**f, LambdaTerm::Abs(..)) && is_beta_normal(f) && is_beta_normal(a)
        }
    }
}

/// `\f. \x. f (... (f x))` as de Bruijn, `n` applications.
pub fn church_db(n: usize) -> Db {
    let mut body = Db::Bound(0);
    for _ in 0..n {
        body = Db::App(Box::new(Db::Bound(1)), Box::new(body));
    }
    Db::Lam(Box::new(Db::Lam(Box::new(body))))
}

/// `\t. \f. t` or `\t. \f. f`.
pub fn bool_db(b: bool) -> Db {
    Db::Lam(Box::new(Db::Lam(Box::new(Db::Bound(if b { 1 } else { 0 })))))
}

fn free_vars(t: &LambdaTerm) -> BTreeSet<String> {
    match t {
        LambdaTerm::Var(x) => [x.clone()].into(),
        LambdaTerm::Abs(x, b) => {
            let mut s = free_vars(b);
            s.remove(x);
            s
        }
        LambdaTerm::App(f, a) => {
            let mut s = free_vars(f);
            s.extend(free_vars(a));
            s
        }
    }
}

pub fn is_closed(t: &LambdaTerm) -> bool {
    free_vars(t).is_empty()
}

/// How many agents of each role a compact encoding of `t` should contain.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub abstractions: usize,
    pub applications: usize,
    /// One per variable free on both sides of an application.
    pub splits: usize,
    pub vacuous: usize,
}

pub fn counts(t: &LambdaTerm) -> Counts {
    fn go(t: &LambdaTerm, c: &mut Counts) {
        match t {
            LambdaTerm::Var(_) => {}
            LambdaTerm::Abs(x, b) => {
                c.abstractions += 1;
                if !free_vars(b).contains(x) {
                    c.vacuous += 1;
                }
                go(b, c);
            }
            LambdaTerm::App(f, a) => {
                c.applications += 1;
                c.splits += free_vars(f).intersection(&free_vars(a)).count();
                go(f, c);
                go(a, c);
            }
        }
    }
    let mut c = Counts::default();
    go(t, &mut c);
    c
}
