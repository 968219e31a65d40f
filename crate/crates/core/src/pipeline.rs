//! Encode, reduce, read back and compare against the reference reducer.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::directed::{self, Flavor};
use crate::lambda::{normalize_ref, LambdaTerm};
use crate::net::{
    reduce_with_hook, Configuration, ReduceError, ReduceOptions, Reduced, ReductionStats,
    RuleTable, Session,
};
use crate::readback::ReadbackError;
use crate::supply::NameSupply;
use crate::undirected::{self, PsiDeltaVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SystemKind {
    #[serde(rename = "undirected")]
    Undirected,
    #[serde(rename = "directed-gamma")]
    DirectedGamma,
    #[serde(rename = "directed-gammastar")]
    DirectedGammaStar,
}

impl SystemKind {
    pub const ALL: [SystemKind; 3] = [
        SystemKind::Undirected,
        SystemKind::DirectedGamma,
        SystemKind::DirectedGammaStar,
    ];

    pub fn is_directed(self) -> bool {
        self != SystemKind::Undirected
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SystemKind::Undirected => "undirected",
            SystemKind::DirectedGamma => "directed-gamma",
            SystemKind::DirectedGammaStar => "directed-gammastar",
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Accepts the report names as well as the command-line spellings
/// `directed` and `directed-dual`.
impl FromStr for SystemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "undirected" => Ok(SystemKind::Undirected),
            "directed" | "directed-gamma" => Ok(SystemKind::DirectedGamma),
            "directed-dual" | "directed-gammastar" => Ok(SystemKind::DirectedGammaStar),
            _ => Err(format!(
                "unknown system {s:?} (undirected, directed, directed-dual)"
            )),
        }
    }
}

/// One system's encoder, rule table and decoder.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub kind: SystemKind,
    table: RuleTable,
}

impl Evaluator {
    pub fn new(kind: SystemKind, variant: PsiDeltaVariant) -> Self {
        let table = match kind {
            SystemKind::Undirected => undirected::build_system(variant).table,
            _ => directed::build_directed_system().table,
        };
        Evaluator { kind, table }
    }

    pub fn table(&self) -> &RuleTable {
        &self.table
    }

    pub fn encode(&self, m: &LambdaTerm, fresh: &mut NameSupply) -> Configuration {
        match self.kind {
            SystemKind::Undirected => undirected::encode(m, fresh),
            SystemKind::DirectedGamma => directed::encode_gamma(m, fresh),
            SystemKind::DirectedGammaStar => directed::encode_gamma_star(m, fresh),
        }
    }

    pub fn readback(&self, c: &Configuration) -> Result<LambdaTerm, ReadbackError> {
        match self.kind {
            SystemKind::Undirected => undirected::readback(c),
            SystemKind::DirectedGamma => directed::readback_directed(c, Flavor::Gamma),
            SystemKind::DirectedGammaStar => directed::readback_directed(c, Flavor::GammaStar),
        }
    }

    pub fn reduce(
        &self,
        c: &Configuration,
        opts: &ReduceOptions,
        fresh: &mut NameSupply,
        hook: impl FnMut(&Session<'_>),
    ) -> Result<Reduced, ReduceError> {
        let mut fresh = std::mem::take(fresh);
        for n in c.all_names() {
            fresh.reserve(&n);
        }
        reduce_with_hook(c, &self.table, opts, &mut fresh, hook)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    Mismatch,
    Stuck,
    Fuel,
    Residual,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Mismatch => "mismatch",
            RunStatus::Stuck => "stuck",
            RunStatus::Fuel => "fuel",
            RunStatus::Residual => "residual",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Ok => 0,
            RunStatus::Fuel => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub term_name: String,
    pub system: SystemKind,
    pub status: RunStatus,
    pub interactions: u64,
    pub substitutions: u64,
    pub garbage_pruned: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub readback: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

/// Everything a single net evaluation produced, before any comparison.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub encoded: Configuration,
    pub stats: ReductionStats,
    /// The final (or partial) configuration.
    pub net: Configuration,
    pub outcome: Result<LambdaTerm, EvalFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalFailure {
    Fuel,
    Stuck(String),
    Readback(ReadbackError),
}

impl EvalFailure {
    pub fn status(&self) -> RunStatus {
        match self {
            EvalFailure::Fuel => RunStatus::Fuel,
            EvalFailure::Stuck(_) => RunStatus::Stuck,
            EvalFailure::Readback(_) => RunStatus::Residual,
        }
    }
}

impl fmt::Display for EvalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalFailure::Fuel => f.write_str("fuel exhausted"),
            EvalFailure::Stuck(msg) => f.write_str(msg),
            EvalFailure::Readback(e) => write!(f, "{e}"),
        }
    }
}

/// Encode `m`, reduce it and read the normal form back.
pub fn evaluate(
    ev: &Evaluator,
    m: &LambdaTerm,
    opts: &ReduceOptions,
    hook: impl FnMut(&Session<'_>),
) -> Evaluation {
    let mut fresh = NameSupply::new();
    let encoded = ev.encode(m, &mut fresh);
    let (net, stats, outcome) = match ev.reduce(&encoded, opts, &mut fresh, hook) {
        Ok(Reduced { config, stats }) => {
            let outcome = ev.readback(&config).map_err(EvalFailure::Readback);
            (config, stats, outcome)
        }
        Err(ReduceError::FuelExhausted { partial, stats }) => (partial, stats, Err(EvalFailure::Fuel)),
        Err(ReduceError::Stuck {
            equation,
            partial,
            stats,
        }) => (
            partial,
            stats,
            Err(EvalFailure::Stuck(format!("no rule for active pair {equation}"))),
        ),
        Err(e) => (
            encoded.clone(),
            ReductionStats::default(),
            Err(EvalFailure::Stuck(e.to_string())),
        ),
    };
    Evaluation {
        encoded,
        stats,
        net,
        outcome,
    }
}

/// Evaluate `m` in one system and compare with the normal-order reference
/// reducer, which gets the same fuel budget in beta steps.
pub fn run_term(name: &str, m: &LambdaTerm, ev: &Evaluator, opts: &ReduceOptions) -> RunReport {
    let eval = evaluate(ev, m, opts, |_| {});
    report(name, m, ev.kind, &eval, opts.fuel)
}

pub fn report(name: &str, m: &LambdaTerm, system: SystemKind, eval: &Evaluation, fuel: u64) -> RunReport {
    let readback = eval.outcome.as_ref().ok();
    let oracle = normalize_ref(m, fuel).ok();
    let status = match (&eval.outcome, &oracle) {
        (Err(f), _) => f.status(),
        (Ok(_), None) => RunStatus::Fuel,
        (Ok(r), Some(o)) if r.alpha_eq(o) => RunStatus::Ok,
        (Ok(_), Some(_)) => RunStatus::Mismatch,
    };
    RunReport {
        term_name: name.to_owned(),
        system,
        status,
        interactions: eval.stats.total_interactions(),
        substitutions: eval.stats.substitutions,
        garbage_pruned: eval.stats.garbage_equations_pruned,
        readback: readback.map(ToString::to_string),
        oracle: oracle.map(|o| o.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::parse_term;

    #[test]
    fn identity_applied_to_identity() {
        let m = parse_term("(\\y.y)(\\z.z)").unwrap();
        for kind in SystemKind::ALL {
            let ev = Evaluator::new(kind, PsiDeltaVariant::Standard);
            let r = run_term("id", &m, &ev, &ReduceOptions::default());
            assert_eq!(r.status, RunStatus::Ok, "{kind}");
            assert_eq!(r.readback.as_deref(), Some("\\z. z"), "{kind}");
            assert_eq!(r.interactions, 1);
        }
    }

    #[test]
    fn omega_runs_out_of_fuel() {
        let m = parse_term("(\\x.x x)(\\x.x x)").unwrap();
        for kind in SystemKind::ALL {
            let ev = Evaluator::new(kind, PsiDeltaVariant::Standard);
            let opts = ReduceOptions {
                fuel: 50,
                ..Default::default()
            };
            assert_eq!(run_term("omega", &m, &ev, &opts).status, RunStatus::Fuel);
        }
    }

    #[test]
    fn report_json_shape() {
        let m = parse_term("(\\x.\\y.x) a b").unwrap();
        let ev = Evaluator::new(SystemKind::DirectedGamma, PsiDeltaVariant::Standard);
        let r = run_term("k", &m, &ev, &ReduceOptions::default());
        assert_eq!(r.readback.as_deref(), Some("a"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["termName"], "k");
        assert_eq!(json["system"], "directed-gamma");
        assert_eq!(json["status"], "ok");
        assert_eq!(json["garbagePruned"], r.garbage_pruned);
    }
}
