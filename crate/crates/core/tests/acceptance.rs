//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{alpha_equivalent, bool_db, church_db, counts, is_beta_normal, is_closed, normalize_db, to_db};
use lamnet::directed::{
    self, check_polarity, derive_polarity, dual, encode_gamma, encode_gamma_star, PolarityAssignment,
    STARRED, UNSTARRED,
};
use lamnet::lambda::{bundled, divergent, parse_term, CorpusEntry};
use lamnet::net::{GcMode, ReduceError, ReduceOptions, Strategy};
use lamnet::pipeline::{evaluate, run_term, Evaluator, RunStatus, SystemKind};
use lamnet::undirected::{self, PsiDeltaVariant};
use lamnet::{LambdaTerm, NameSupply, Symbol};

const TIME_LIMIT: Duration = Duration::from_secs(1);
const INTERACTION_LIMIT: u64 = 100_000;
const SEEDS: u64 = 20;
const DIVERGENT_FUEL: u64 = 10_000;
const DISCARD_LIMIT: u64 = 10_000;

/// Corpus entries that throw away a divergent argument. They only
/// terminate when garbage is pruned.
fn discards_divergent(e: &CorpusEntry) -> bool {
    e.name.starts_with("discard_")
}

fn evaluators() -> Vec<Evaluator> {
    SystemKind::ALL
        .iter()
        .map(|&k| Evaluator::new(k, PsiDeltaVariant::Standard))
        .collect()
}

fn checked() -> ReduceOptions {
    ReduceOptions {
        validate_each_step: true,
        ..Default::default()
    }
}

type Outcome = Result<String, Vec<String>>;

fn verdict(problems: Vec<String>, summary: String) -> Outcome {
    if problems.is_empty() {
        Ok(summary)
    } else {
        Err(problems)
    }
}

/// Expected normal forms computed without the library: arithmetic on
/// numerals, boolean operators on booleans.
fn expected_values() -> BTreeMap<&'static str, common::Db> {
    let mut m = BTreeMap::new();
    m.insert("plus_2_2", church_db(2 + 2));
    m.insert("mult_2_3", church_db(2 * 3));
    m.insert("exp_2_2", church_db(2usize.pow(2)));
    m.insert("exp_2_3", church_db(2usize.pow(3)));
    m.insert("succ_3", church_db(3 + 1));
    m.insert("pred_3", church_db(3 - 1));
    m.insert("plus_0_1", church_db(1));
    for (a, an) in [(true, 't'), (false, 'f')] {
        for (b, bn) in [(true, 't'), (false, 'f')] {
            m.insert(leak(format!("and_{an}{bn}")), bool_db(a && b));
            m.insert(leak(format!("or_{an}{bn}")), bool_db(a || b));
        }
        m.insert(leak(format!("not_{an}")), bool_db(!a));
    }
    m.insert("fst_pair", church_db(1));
    m.insert("snd_pair", church_db(2));
    m.insert("skk_id", to_db(&parse_term("\\u. u").unwrap()));
    m.insert("skk_var", to_db(&parse_term("a").unwrap()));
    m
}

fn leak(s: String) -> &'static str {
    Box::leak(s.into_boxed_str())
}

fn criterion_1(corpus: &[CorpusEntry]) -> Outcome {
    let mut problems = Vec::new();
    let closed: Vec<_> = corpus.iter().filter(|e| is_closed(&e.term)).collect();
    if closed.len() < 25 {
        problems.push(format!("only {} closed terms", closed.len()));
    }
    let expected = expected_values();
    for name in expected.keys() {
        if !corpus.iter().any(|e| e.name == *name) {
            problems.push(format!("{name} missing from corpus"));
        }
    }
    let mut slowest = Duration::ZERO;
    let mut most = 0;
    for e in corpus {
        let reference = normalize_db(&to_db(&e.term), 10_000);
        if let (Some(want), Some(got)) = (expected.get(e.name.as_str()), &reference) {
            if want != got {
                problems.push(format!("{}: reference normal form is not the expected value", e.name));
            }
        }
        for ev in evaluators() {
            let start = Instant::now();
            let r = run_term(&e.name, &e.term, &ev, &ReduceOptions::default());
            let took = start.elapsed();
            slowest = slowest.max(took);
            most = most.max(r.interactions);
            let agrees = match (&r.readback, &reference) {
                (Some(rb), Some(want)) => to_db(&parse_term(rb).unwrap()) == *want,
                _ => false,
            };
            if r.status != RunStatus::Ok || !agrees {
                problems.push(format!("{} {}: {} {:?}", e.name, ev.kind, r.status, r.readback));
            }
            if took >= TIME_LIMIT || r.interactions > INTERACTION_LIMIT {
                problems.push(format!("{} {}: {:?}, {} interactions", e.name, ev.kind, took, r.interactions));
            }
        }
    }
    verdict(
        problems,
        format!(
            "{} terms ({} closed) x 3 systems agree with the reference; slowest {:?}, most {} interactions",
            corpus.len(),
            closed.len(),
            slowest,
            most
        ),
    )
}

fn criterion_2(corpus: &[CorpusEntry]) -> Outcome {
    let mut problems = Vec::new();
    let mut compared = 0;
    for e in corpus {
        for ev in evaluators() {
            let base = evaluate(&ev, &e.term, &ReduceOptions::default(), |_| {});
            let Ok(base_rb) = base.outcome else {
                problems.push(format!("{} {}: fifo run failed", e.name, ev.kind));
                continue;
            };
            let mut totals = Vec::new();
            for seed in 0..SEEDS {
                let opts = ReduceOptions {
                    strategy: Strategy::Random(seed),
                    ..Default::default()
                };
                match evaluate(&ev, &e.term, &opts, |_| {}).outcome {
                    Ok(rb) if alpha_equivalent(&rb, &base_rb) => {}
                    other => problems.push(format!("{} {} seed {seed}: {other:?}", e.name, ev.kind)),
                }
                if !discards_divergent(e) {
                    let opts = ReduceOptions {
                        gc: GcMode::None,
                        ..opts
                    };
                    let run = evaluate(&ev, &e.term, &opts, |_| {});
                    if run.outcome.is_err() {
                        problems.push(format!("{} {} seed {seed}: gc=none run failed", e.name, ev.kind));
                    }
                    totals.push(run.stats.total_interactions());
                }
            }
            if totals.windows(2).any(|w| w[0] != w[1]) {
                problems.push(format!("{} {}: interaction totals differ {totals:?}", e.name, ev.kind));
            }
            compared += 1;
        }
    }
    verdict(
        problems,
        format!("{compared} (term, system) pairs stable over {SEEDS} seeds"),
    )
}

fn criterion_3(corpus: &[CorpusEntry]) -> Outcome {
    let mut problems = Vec::new();
    let mut steps = 0u64;
    for e in corpus {
        for ev in evaluators() {
            for strategy in [Strategy::Fifo, Strategy::Lifo, Strategy::Random(7)] {
                // LIFO is unfair: it can keep reducing a discarded divergent
                // argument forever. Running out of fuel is not a violation.
                let opts = ReduceOptions {
                    strategy,
                    fuel: if discards_divergent(e) { 2_000 } else { INTERACTION_LIMIT },
                    ..checked()
                };
                let mut fresh = NameSupply::new();
                let c = ev.encode(&e.term, &mut fresh);
                if let Err(v) = c.validate() {
                    problems.push(format!("{} {}: encoding {v}", e.name, ev.kind));
                }
                match ev.reduce(&c, &opts, &mut fresh, |_| steps += 1) {
                    Err(ReduceError::Linearity { step, violation }) => {
                        problems.push(format!("{} {} step {step}: {violation}", e.name, ev.kind))
                    }
                    Err(ReduceError::FuelExhausted { .. }) if discards_divergent(e) => {}
                    Err(other) => problems.push(format!("{} {}: {other}", e.name, ev.kind)),
                    Ok(_) => {}
                }
            }
        }
    }
    verdict(problems, format!("{steps} validated steps, no violations"))
}

fn criterion_4() -> Outcome {
    let mut problems = Vec::new();
    let u = undirected::build_system(PsiDeltaVariant::Standard);
    if u.table.len() != 10 {
        problems.push(format!("undirected table has {} rules", u.table.len()));
    }
    for (i, &a) in undirected::SYMBOLS.iter().enumerate() {
        for &b in &undirected::SYMBOLS[i..] {
            if u.table.lookup(a, b).is_none() {
                problems.push(format!("no undirected rule for {a} {b}"));
            }
        }
    }
    let d = directed::build_directed_system();
    if d.table.len() != 9 {
        problems.push(format!("directed table has {} rules", d.table.len()));
    }
    for a in UNSTARRED {
        for b in STARRED {
            match d.table.lookup(a, b) {
                Some((r, false)) if r.key() == (a, b) => {}
                _ => problems.push(format!("no directed rule keyed {a} {b}")),
            }
        }
    }
    let alt = undirected::build_system(PsiDeltaVariant::SchemaAlt);
    let goldens = [
        (u.table.dump(), include_str!("golden/undirected_rules.txt"), "undirected"),
        (alt.table.dump(), include_str!("golden/undirected_schema_alt_rules.txt"), "schema-alt"),
        (d.table.dump(), include_str!("golden/directed_rules.txt"), "directed"),
    ];
    for (got, want, what) in goldens {
        if got != want {
            problems.push(format!("{what} dump differs from golden file"));
        }
    }
    verdict(problems, "10 undirected and 9 directed rules, dumps match golden files".into())
}

fn antisymmetric(p: &PolarityAssignment) -> Vec<String> {
    let mut out = Vec::new();
    for (a, b) in UNSTARRED.iter().zip(STARRED) {
        for port in 0..3 {
            let (x, y) = (p.sign(*a, port).unwrap(), p.sign(b, port).unwrap());
            if x == y {
                out.push(format!("{a}/{b} port {port} share a sign"));
            }
        }
    }
    out
}

fn criterion_5(corpus: &[CorpusEntry]) -> Outcome {
    let mut problems = Vec::new();
    let sys = directed::build_directed_system();
    let witnesses: Vec<_> = corpus
        .iter()
        .flat_map(|e| {
            [
                encode_gamma(&e.term, &mut NameSupply::new()),
                encode_gamma_star(&e.term, &mut NameSupply::new()),
            ]
        })
        .collect();
    let p = match derive_polarity(&sys, &witnesses) {
        Ok(p) => p,
        Err(e) => return Err(vec![e.to_string()]),
    };
    if p.dump() != include_str!("golden/polarity.txt") {
        problems.push("assignment differs from golden dump".into());
    }
    problems.extend(antisymmetric(&p));
    let mut configs = 0u64;
    for e in corpus {
        for kind in [SystemKind::DirectedGamma, SystemKind::DirectedGammaStar] {
            let ev = Evaluator::new(kind, PsiDeltaVariant::Standard);
            let mut fresh = NameSupply::new();
            let c = ev.encode(&e.term, &mut fresh);
            if let Err(v) = check_polarity(&c, &p) {
                problems.push(format!("{} {kind} encoding: {v}", e.name));
            }
            let mut bad = Vec::new();
            let result = ev.reduce(&c, &ReduceOptions::default(), &mut fresh, |s| {
                configs += 1;
                if let Err(v) = check_polarity(&s.to_configuration(), &p) {
                    bad.push(v.to_string());
                }
            });
            if let Some(v) = bad.first() {
                problems.push(format!("{} {kind}: {} violations, first {v}", e.name, bad.len()));
            }
            if let Err(ReduceError::Stuck { equation, .. }) = result {
                problems.push(format!("{} {kind}: stuck on {equation}", e.name));
            }
        }
    }
    for e in divergent() {
        for kind in [SystemKind::DirectedGamma, SystemKind::DirectedGammaStar] {
            let ev = Evaluator::new(kind, PsiDeltaVariant::Standard);
            let opts = ReduceOptions {
                fuel: DIVERGENT_FUEL,
                ..Default::default()
            };
            if run_term(&e.name, &e.term, &ev, &opts).status == RunStatus::Stuck {
                problems.push(format!("{} {kind}: stuck", e.name));
            }
        }
    }
    verdict(
        problems,
        format!("assignment found, antisymmetric on 9 slots, {configs} intermediate configurations checked"),
    )
}

fn criterion_6(corpus: &[CorpusEntry]) -> Outcome {
    let mut problems = Vec::new();
    for e in corpus {
        let g = encode_gamma(&e.term, &mut NameSupply::new());
        let gs = encode_gamma_star(&e.term, &mut NameSupply::new());
        match dual(&g) {
            Ok(d) if d == gs => {}
            _ => problems.push(format!("{}: dual of the gamma encoding differs", e.name)),
        }
        let read = |kind| {
            evaluate(
                &Evaluator::new(kind, PsiDeltaVariant::Standard),
                &e.term,
                &ReduceOptions::default(),
                |_| {},
            )
            .outcome
        };
        match (read(SystemKind::DirectedGamma), read(SystemKind::DirectedGammaStar)) {
            (Ok(a), Ok(b)) if alpha_equivalent(&a, &b) => {}
            (a, b) => problems.push(format!("{}: {a:?} vs {b:?}", e.name)),
        }
    }
    verdict(problems, format!("{} terms dual and read back alike", corpus.len()))
}

fn criterion_7(corpus: &[CorpusEntry]) -> Outcome {
    let mut problems = Vec::new();
    for e in corpus {
        let c = counts(&e.term);
        let expect = |pairs: &[(Symbol, usize)]| -> BTreeMap<Symbol, usize> {
            pairs.iter().copied().filter(|&(_, n)| n > 0).collect()
        };
        let cases = [
            (
                SystemKind::Undirected,
                expect(&[
                    (Symbol::LAM, c.abstractions + c.applications),
                    (Symbol::PSI, c.splits),
                    (Symbol::EPS, c.vacuous),
                ]),
            ),
            (
                SystemKind::DirectedGamma,
                expect(&[
                    (Symbol::LAM, c.abstractions),
                    (Symbol::LAM_STAR, c.applications),
                    (Symbol::PSI_STAR, c.splits),
                ]),
            ),
            (
                SystemKind::DirectedGammaStar,
                expect(&[
                    (Symbol::LAM_STAR, c.abstractions),
                    (Symbol::LAM, c.applications),
                    (Symbol::PSI, c.splits),
                ]),
            ),
        ];
        for (kind, want) in cases {
            let ev = Evaluator::new(kind, PsiDeltaVariant::Standard);
            let got = ev.encode(&e.term, &mut NameSupply::new()).agent_census();
            if got != want {
                problems.push(format!("{} {kind}: {got:?} != {want:?}", e.name));
            }
        }
    }
    verdict(problems, format!("{} terms x 3 encodings have exact agent counts", corpus.len()))
}

fn criterion_8() -> Outcome {
    let mut problems = Vec::new();
    let opts = ReduceOptions {
        fuel: DIVERGENT_FUEL,
        ..Default::default()
    };
    let entries = divergent();
    if !entries.iter().any(|e| e.name == "omega") {
        problems.push("omega missing from divergent corpus".into());
    }
    for e in &entries {
        for ev in evaluators() {
            let r = run_term(&e.name, &e.term, &ev, &opts);
            if r.status != RunStatus::Fuel {
                problems.push(format!("{} {}: {}", e.name, ev.kind, r.status));
            }
        }
    }
    let m = parse_term("(\\a. \\y. y) ((\\x. x x) (\\x. x x))").unwrap();
    let ev = Evaluator::new(SystemKind::Undirected, PsiDeltaVariant::Standard);
    let run = evaluate(&ev, &m, &ReduceOptions::default(), |_| {});
    let want = parse_term("\\y. y").unwrap();
    let n = run.stats.total_interactions();
    match &run.outcome {
        Ok(t) if alpha_equivalent(t, &want) && n <= DISCARD_LIMIT => {}
        other => problems.push(format!("discarded omega: {other:?} after {n} interactions")),
    }
    verdict(
        problems,
        format!(
            "{} divergent terms x 3 systems exhaust fuel; (\\a.\\y.y) omega normalizes with {n} interaction(s)",
            entries.len()
        ),
    )
}

fn criterion_9(corpus: &[CorpusEntry]) -> Outcome {
    let mut problems = Vec::new();
    let normal: Vec<&LambdaTerm> = corpus
        .iter()
        .map(|e| &e.term)
        .filter(|t| is_beta_normal(t))
        .collect();
    for t in &normal {
        for ev in evaluators() {
            let mut fresh = NameSupply::new();
            let c = ev.encode(t, &mut fresh);
            match ev.readback(&c) {
                Ok(r) if alpha_equivalent(&r, t) => {}
                other => problems.push(format!("{t} {}: direct readback {other:?}", ev.kind)),
            }
            match ev.reduce(&c, &ReduceOptions::default(), &mut fresh, |_| {}) {
                Ok(r) if r.stats.total_interactions() == 0 => {}
                Ok(r) => problems.push(format!("{t} {}: {} interactions", ev.kind, r.stats.total_interactions())),
                Err(e) => problems.push(format!("{t} {}: {e}", ev.kind)),
            }
        }
    }
    if normal.is_empty() {
        problems.push("no normal forms in corpus".into());
    }
    verdict(problems, format!("{} normal forms round-trip with zero interactions", normal.len()))
}

fn main() -> ExitCode {
    let corpus = bundled();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("oracle equivalence", Box::new(|| criterion_1(&corpus))),
        ("confluence and determinacy", Box::new(|| criterion_2(&corpus))),
        ("linearity", Box::new(|| criterion_3(&corpus))),
        ("rule-table shape", Box::new(criterion_4)),
        ("polarity", Box::new(|| criterion_5(&corpus))),
        ("duality", Box::new(|| criterion_6(&corpus))),
        ("encoding economy", Box::new(|| criterion_7(&corpus))),
        ("divergence handling", Box::new(criterion_8)),
        ("round trip on normal forms", Box::new(|| criterion_9(&corpus))),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(summary) => println!("criterion {}: PASS {title}: {summary}", i + 1),
            Err(problems) => {
                failed += 1;
                println!("criterion {}: FAIL {title}: {} problem(s)", i + 1, problems.len());
                for p in problems.iter().take(10) {
                    println!("    {p}");
                }
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
