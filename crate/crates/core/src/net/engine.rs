//! The reduction loop: interactions on active pairs and eager substitution
//! of name equations, driven by a selectable scheduling strategy.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::{apply_rule, Configuration, Equation, LinearityViolation, NetTerm, RuleTable};
use crate::supply::NameSupply;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Fifo,
    Lifo,
    Random(u64),
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fifo" => Ok(Strategy::Fifo),
            "lifo" => Ok(Strategy::Lifo),
            _ => s
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(Strategy::Random)
                .ok_or_else(|| format!("unknown strategy {s:?} (fifo, lifo, random:<seed>)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Fifo => f.write_str("fifo"),
            Strategy::Lifo => f.write_str("lifo"),
            Strategy::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GcMode {
    None,
    /// Drop every equation disconnected from the interface after each
    /// interaction.
    #[default]
    Prune,
}

impl FromStr for GcMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(GcMode::None),
            "prune" => Ok(GcMode::Prune),
            _ => Err(format!("unknown gc mode {s:?} (none, prune)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceOptions {
    pub strategy: Strategy,
    /// Maximum number of interactions. Substitutions are free.
    pub fuel: u64,
    pub gc: GcMode,
    /// Re-check linearity after every step.
    pub validate_each_step: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            strategy: Strategy::Fifo,
            fuel: 100_000,
            gc: GcMode::Prune,
            validate_each_step: cfg!(debug_assertions),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionStats {
    /// Interaction count per rule, keyed `alpha><beta`.
    pub interactions: BTreeMap<String, u64>,
    pub substitutions: u64,
    pub peak_equations: u64,
    #[serde(rename = "garbage_pruned")]
    pub garbage_equations_pruned: u64,
    pub fuel_used: u64,
}

impl ReductionStats {
    pub fn total_interactions(&self) -> u64 {
        self.interactions.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Interaction,
    Substitution,
    Normal,
    Stuck(Equation),
    CyclicWire(String),
    OutOfFuel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Loc {
    Interface(usize),
    Eq(usize),
}

enum Scheduler {
    Fifo(VecDeque<usize>),
    Lifo(Vec<usize>),
    Random(Vec<usize>, ChaCha8Rng),
}

impl Scheduler {
    fn new(strategy: Strategy) -> Self {
        match strategy {
            Strategy::Fifo => Scheduler::Fifo(VecDeque::new()),
            Strategy::Lifo => Scheduler::Lifo(Vec::new()),
            Strategy::Random(seed) => Scheduler::Random(Vec::new(), ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    fn push(&mut self, slot: usize) {
        match self {
            Scheduler::Fifo(q) => q.push_back(slot),
            Scheduler::Lifo(s) => s.push(slot),
            Scheduler::Random(v, _) => v.push(slot),
        }
    }

    fn push_front(&mut self, slot: usize) {
        match self {
            Scheduler::Fifo(q) => q.push_front(slot),
            Scheduler::Lifo(s) => s.push(slot),
            Scheduler::Random(v, _) => v.push(slot),
        }
    }

    fn pop(&mut self) -> Option<usize> {
        match self {
            Scheduler::Fifo(q) => q.pop_front(),
            Scheduler::Lifo(s) => s.pop(),
            Scheduler::Random(v, rng) => {
                if v.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..v.len());
                    Some(v.swap_remove(i))
                }
            }
        }
    }
}

/// A configuration under reduction, indexed by name for substitution.
pub struct Session<'t> {
    table: &'t RuleTable,
    interface: Vec<NetTerm>,
    /// Live equations keyed by insertion order.
    slots: BTreeMap<usize, Equation>,
    next_slot: usize,
    index: HashMap<String, Vec<Loc>>,
    queued: HashSet<usize>,
    scheduler: Scheduler,
    fuel: Option<u64>,
}

impl<'t> Session<'t> {
    pub fn new(config: &Configuration, table: &'t RuleTable, strategy: Strategy) -> Self {
        let mut s = Session {
            table,
            interface: config.interface.clone(),
            slots: BTreeMap::new(),
            next_slot: 0,
            index: HashMap::new(),
            queued: HashSet::new(),
            scheduler: Scheduler::new(strategy),
            fuel: None,
        };
        for (i, t) in config.interface.iter().enumerate() {
            t.for_each_name(&mut |n| s.index.entry(n.to_owned()).or_default().push(Loc::Interface(i)));
        }
        for e in &config.equations {
            s.insert(e.clone());
        }
        s
    }

    /// Caps the number of further interactions `step` will perform.
    pub fn set_fuel(&mut self, fuel: Option<u64>) {
        self.fuel = fuel;
    }

    pub fn equation_count(&self) -> usize {
        self.slots.len()
    }

    pub fn to_configuration(&self) -> Configuration {
        Configuration {
            interface: self.interface.clone(),
            equations: self.slots.values().cloned().collect(),
        }
    }

    fn insert(&mut self, e: Equation) -> usize {
        let slot = self.next_slot;
        self.next_slot += 1;
        e.for_each_name(&mut |n| self.index.entry(n.to_owned()).or_default().push(Loc::Eq(slot)));
        self.slots.insert(slot, e);
        self.enqueue(slot);
        slot
    }

    fn enqueue(&mut self, slot: usize) {
        if self.queued.insert(slot) {
            self.scheduler.push(slot);
        }
    }

    fn remove(&mut self, slot: usize) -> Equation {
        let e = self.slots.remove(&slot).expect("live slot");
        e.for_each_name(&mut |n| unindex(&mut self.index, n, Loc::Eq(slot)));
        e
    }

    /// Where else does `name` occur, besides one occurrence in `slot`?
    fn other_occurrence(&self, name: &str, slot: usize) -> Option<Loc> {
        let locs = self.index.get(name)?;
        let mut skipped = false;
        for &l in locs {
            if l == Loc::Eq(slot) && !skipped {
                skipped = true;
            } else {
                return Some(l);
            }
        }
        None
    }

    /// Resolves `x = t` by moving `t` into the other occurrence of `x`.
    fn substitute(&mut self, slot: usize, x: &str, target: Loc, lhs_is_x: bool) {
        let e = self.remove(slot);
        let t = if lhs_is_x { e.rhs } else { e.lhs };
        let mut names = Vec::new();
        t.for_each_name(&mut |n| names.push(n.to_owned()));
        unindex(&mut self.index, x, target);
        match target {
            Loc::Interface(i) => {
                self.interface[i].replace_name(x, t).expect("indexed name in interface");
            }
            Loc::Eq(j) => {
                let eq = self.slots.get_mut(&j).expect("indexed name in live equation");
                if let Err(t) = eq.lhs.replace_name(x, t) {
                    eq.rhs.replace_name(x, t).expect("indexed name in equation");
                }
                self.enqueue(j);
            }
        }
        for n in names {
            self.index.entry(n).or_default().push(target);
        }
    }

    /// Performs one interaction or substitution chosen by the strategy.
    pub fn step(&mut self, fresh: &mut NameSupply, stats: &mut ReductionStats) -> StepOutcome {
        while let Some(slot) = self.scheduler.pop() {
            self.queued.remove(&slot);
            let Some(eq) = self.slots.get(&slot) else {
                continue;
            };
            match (&eq.lhs, &eq.rhs) {
                (NetTerm::Agent(a, _), NetTerm::Agent(b, _)) => {
                    let table = self.table;
                    let Some((rule, _)) = table.lookup(*a, *b) else {
                        return StepOutcome::Stuck(eq.clone());
                    };
                    if self.fuel.is_some_and(|f| stats.fuel_used >= f) {
                        self.queued.insert(slot);
                        self.scheduler.push_front(slot);
                        return StepOutcome::OutOfFuel;
                    }
                    let key = format!("{}><{}", rule.alpha, rule.beta);
                    let eq = self.remove(slot);
                    let produced = apply_rule(rule, &eq, fresh).expect("looked-up rule matches");
                    for e in produced {
                        self.insert(e);
                    }
                    *stats.interactions.entry(key).or_insert(0) += 1;
                    stats.fuel_used += 1;
                    stats.peak_equations = stats.peak_equations.max(self.slots.len() as u64);
                    return StepOutcome::Interaction;
                }
                (lhs, rhs) => {
                    let candidates = [
                        (lhs.as_name().map(str::to_owned), true),
                        (rhs.as_name().map(str::to_owned), false),
                    ];
                    for (name, lhs_is_x) in candidates {
                        let Some(x) = name else { continue };
                        match self.other_occurrence(&x, slot) {
                            None => continue,
                            Some(Loc::Eq(j)) if j == slot => {
                                return StepOutcome::CyclicWire(x);
                            }
                            Some(target) => {
                                self.substitute(slot, &x, target, lhs_is_x);
                                stats.substitutions += 1;
                                return StepOutcome::Substitution;
                            }
                        }
                    }
                    // Free-port binding: both names occur only here.
                }
            }
        }
        StepOutcome::Normal
    }

    /// Removes every equation not connected to the interface. Returns how
    /// many were dropped.
    pub fn prune(&mut self) -> usize {
        let mut live = HashSet::new();
        let mut stack: Vec<usize> = Vec::new();
        let visit = |n: &str, stack: &mut Vec<usize>| {
            for l in self.index.get(n).into_iter().flatten() {
                if let Loc::Eq(j) = l {
                    stack.push(*j);
                }
            }
        };
        for t in &self.interface {
            t.for_each_name(&mut |n| visit(n, &mut stack));
        }
        while let Some(j) = stack.pop() {
            if !live.insert(j) {
                continue;
            }
            if let Some(e) = self.slots.get(&j) {
                e.for_each_name(&mut |n| visit(n, &mut stack));
            }
        }
        let dead: Vec<usize> = self.slots.keys().copied().filter(|j| !live.contains(j)).collect();
        for &j in &dead {
            self.remove(j);
        }
        dead.len()
    }
}

fn unindex(index: &mut HashMap<String, Vec<Loc>>, name: &str, loc: Loc) {
    if let Some(locs) = index.get_mut(name) {
        if let Some(p) = locs.iter().position(|&l| l == loc) {
            locs.swap_remove(p);
        }
        if locs.is_empty() {
            index.remove(name);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reduced {
    pub config: Configuration,
    pub stats: ReductionStats,
}

#[derive(Clone, Debug, Error)]
pub enum ReduceError {
    #[error("fuel exhausted after {} interactions", .stats.fuel_used)]
    FuelExhausted {
        partial: Configuration,
        stats: ReductionStats,
    },
    #[error("no rule for active pair {equation}")]
    Stuck {
        equation: Equation,
        partial: Configuration,
        stats: ReductionStats,
    },
    #[error("cyclic wire through name {name}")]
    CyclicWire { name: String },
    #[error("after step {step}: {violation}")]
    Linearity {
        step: u64,
        violation: LinearityViolation,
    },
}

pub fn reduce(
    config: &Configuration,
    table: &RuleTable,
    opts: &ReduceOptions,
    fresh: &mut NameSupply,
) -> Result<Reduced, ReduceError> {
    reduce_with_hook(config, table, opts, fresh, |_| {})
}

/// Like [`reduce`], calling `hook` after every interaction or substitution.
pub fn reduce_with_hook(
    config: &Configuration,
    table: &RuleTable,
    opts: &ReduceOptions,
    fresh: &mut NameSupply,
    mut hook: impl FnMut(&Session<'_>),
) -> Result<Reduced, ReduceError> {
    let mut session = Session::new(config, table, opts.strategy);
    session.set_fuel(Some(opts.fuel));
    let mut stats = ReductionStats {
        peak_equations: session.equation_count() as u64,
        ..Default::default()
    };
    if opts.gc == GcMode::Prune {
        stats.garbage_equations_pruned += session.prune() as u64;
    }
    let mut steps = 0u64;
    loop {
        let outcome = session.step(fresh, &mut stats);
        match outcome {
            StepOutcome::Interaction | StepOutcome::Substitution => {
                if outcome == StepOutcome::Interaction && opts.gc == GcMode::Prune {
                    stats.garbage_equations_pruned += session.prune() as u64;
                }
                steps += 1;
                if opts.validate_each_step {
                    session
                        .to_configuration()
                        .validate()
                        .map_err(|violation| ReduceError::Linearity { step: steps, violation })?;
                }
                hook(&session);
            }
            StepOutcome::Normal => {
                return Ok(Reduced {
                    config: session.to_configuration(),
                    stats,
                })
            }
            StepOutcome::Stuck(equation) => {
                return Err(ReduceError::Stuck {
                    equation,
                    partial: session.to_configuration(),
                    stats,
                })
            }
            StepOutcome::CyclicWire(name) => return Err(ReduceError::CyclicWire { name }),
            StepOutcome::OutOfFuel => {
                return Err(ReduceError::FuelExhausted {
                    partial: session.to_configuration(),
                    stats,
                })
            }
        }
    }
}
