use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use lamnet::directed::{self, derive_polarity, encode_gamma, encode_gamma_star};
use lamnet::lambda::{parse_corpus, parse_term, CorpusEntry, LambdaTerm};
use lamnet::net::{
    parse_config, to_dot, Configuration, GcMode, ReduceError, ReduceOptions, ReductionStats, Strategy,
};
use lamnet::pipeline::{
    evaluate, report, run_term, EvalFailure, Evaluator, RunReport, RunStatus, SystemKind,
};
use lamnet::undirected::PsiDeltaVariant;
use lamnet::NameSupply;

const EXIT_FAIL: u8 = 1;
const EXIT_FUEL: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "lamnet", version, about = "Evaluate lambda terms with interaction nets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode, reduce and read back a term, checking it against the reference reducer.
    Run {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Term text, `@file`, or `-` for stdin.
        term: Option<String>,
    },
    /// Print the configuration a term encodes to.
    Encode {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        out: OutputArgs,
        term: Option<String>,
    },
    /// Reduce a configuration and print its normal form.
    Reduce {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Configuration text, `@file`, or `-` for stdin.
        config: Option<String>,
    },
    /// Decode a normal-form configuration into a term.
    Readback {
        #[command(flatten)]
        system: SystemArg,
        config: Option<String>,
    },
    /// Run every corpus term under all three systems against the reference reducer.
    Check {
        #[command(flatten)]
        eval: EvalArgs,
        #[arg(long)]
        json: bool,
        corpus: PathBuf,
    },
    /// Tabulate interaction and substitution counts for a corpus.
    Bench {
        #[command(flatten)]
        eval: EvalArgs,
        corpus: PathBuf,
    },
    /// Derive and print a polarity assignment for the directed system.
    Polarity,
    /// Dump a rule table.
    Rules {
        #[command(flatten)]
        system: SystemArg,
    },
}

#[derive(Args)]
struct SystemArg {
    /// undirected, directed or directed-dual
    #[arg(long, default_value = "undirected")]
    system: SystemKind,
    /// standard or schema-alt
    #[arg(long, default_value = "standard")]
    psi_delta: PsiDeltaVariant,
}

impl SystemArg {
    fn evaluator(&self) -> Evaluator {
        Evaluator::new(self.system, self.psi_delta)
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Maximum number of interactions.
    #[arg(long, default_value_t = 100_000)]
    fuel: u64,
    /// fifo, lifo or random:<seed>
    #[arg(long, default_value = "fifo")]
    strategy: Strategy,
    /// none or prune
    #[arg(long, default_value = "prune")]
    gc: GcMode,
    /// Print every intermediate configuration to stderr.
    #[arg(long)]
    trace: bool,
}

impl EvalArgs {
    fn options(&self) -> ReduceOptions {
        ReduceOptions {
            strategy: self.strategy,
            fuel: self.fuel,
            gc: self.gc,
            ..Default::default()
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the resulting net as Graphviz DOT.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

/// Reported to the user as `error: ...` with the given exit code.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read_input(arg: Option<&str>) -> Result<String, Failure> {
    let text = match arg {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| fail(EXIT_USAGE, format!("reading stdin: {e}")))?;
            s
        }
        Some(a) => match a.strip_prefix('@') {
            Some(path) => fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{path}: {e}")))?,
            None => a.to_owned(),
        },
    };
    Ok(text.trim().to_owned())
}

fn read_term(arg: Option<&str>) -> Result<LambdaTerm, Failure> {
    let text = read_input(arg)?;
    parse_term(&text).map_err(|e| fail(EXIT_USAGE, e.to_string()))
}

fn read_config(arg: Option<&str>) -> Result<Configuration, Failure> {
    let text = read_input(arg)?;
    // `reduce` prints its result on the first line.
    let first = text.lines().next().unwrap_or("");
    parse_config(first).map_err(|e| fail(EXIT_USAGE, e.to_string()))
}

fn read_corpus(path: &Path) -> Result<Vec<CorpusEntry>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse_corpus(&text).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn write_dot(path: Option<&Path>, c: &Configuration) -> Result<(), Failure> {
    if let Some(path) = path {
        fs::write(path, to_dot(c)).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn tracer(enabled: bool) -> impl FnMut(&lamnet::net::Session<'_>) {
    let mut step = 0u64;
    move |s| {
        if enabled {
            step += 1;
            eprintln!("step {step}: {}", s.to_configuration());
        }
    }
}

fn cmd_run(system: &SystemArg, eval: &EvalArgs, out: &OutputArgs, term: Option<&str>) -> Result<u8, Failure> {
    let m = read_term(term)?;
    let ev = system.evaluator();
    let opts = eval.options();
    let result = evaluate(&ev, &m, &opts, tracer(eval.trace));
    write_dot(out.dot.as_deref(), &result.net)?;
    let rep = report("term", &m, ev.kind, &result, opts.fuel);
    if out.json {
        println!("{}", to_json(&rep));
    } else if let Some(r) = &rep.readback {
        println!("{r}");
    }
    match (&result.outcome, rep.status) {
        (_, RunStatus::Ok) => {}
        (Err(EvalFailure::Fuel), _) => eprintln!("fuel exhausted after {} interactions", rep.interactions),
        (Err(e), _) => eprintln!("{}: {e}", rep.status),
        (Ok(_), RunStatus::Mismatch) => eprintln!(
            "mismatch: reference reducer gives {}",
            rep.oracle.as_deref().unwrap_or("?")
        ),
        (Ok(_), status) => eprintln!("{status}: reference reducer ran out of fuel"),
    }
    Ok(rep.status.exit_code() as u8)
}

#[derive(Serialize)]
struct Encoding {
    config: String,
}

fn cmd_encode(system: &SystemArg, out: &OutputArgs, term: Option<&str>) -> Result<u8, Failure> {
    let m = read_term(term)?;
    let c = system.evaluator().encode(&m, &mut NameSupply::new());
    write_dot(out.dot.as_deref(), &c)?;
    if out.json {
        println!("{}", to_json(&Encoding { config: c.to_string() }));
    } else {
        println!("{c}");
    }
    Ok(0)
}

#[derive(Serialize)]
struct Reduction<'a> {
    config: String,
    stats: &'a ReductionStats,
}

fn cmd_reduce(system: &SystemArg, eval: &EvalArgs, out: &OutputArgs, config: Option<&str>) -> Result<u8, Failure> {
    let c = read_config(config)?;
    let ev = system.evaluator();
    let (net, stats, code, note) =
        match ev.reduce(&c, &eval.options(), &mut NameSupply::new(), tracer(eval.trace)) {
            Ok(r) => (r.config, r.stats, 0, None),
            Err(ReduceError::FuelExhausted { partial, stats }) => {
                (partial, stats, EXIT_FUEL, Some("fuel exhausted".to_owned()))
            }
            Err(e @ ReduceError::Stuck { .. }) => {
                let note = e.to_string();
                let ReduceError::Stuck { partial, stats, .. } = e else { unreachable!() };
                (partial, stats, EXIT_FAIL, Some(note))
            }
            Err(e) => return Err(fail(EXIT_FAIL, e.to_string())),
        };
    write_dot(out.dot.as_deref(), &net)?;
    if out.json {
        println!(
            "{}",
            to_json(&Reduction {
                config: net.to_string(),
                stats: &stats
            })
        );
    } else {
        println!("{net}");
        for (pair, n) in &stats.interactions {
            println!("interactions {pair} {n}");
        }
        println!("substitutions {}", stats.substitutions);
        println!("peak_equations {}", stats.peak_equations);
        println!("garbage_pruned {}", stats.garbage_equations_pruned);
        println!("fuel_used {}", stats.fuel_used);
    }
    if let Some(note) = note {
        eprintln!("{note}");
    }
    Ok(code)
}

fn cmd_readback(system: &SystemArg, config: Option<&str>) -> Result<u8, Failure> {
    let c = read_config(config)?;
    let t = system.evaluator().readback(&c).map_err(|e| fail(EXIT_FAIL, e.to_string()))?;
    println!("{t}");
    Ok(0)
}

fn corpus_rows(entries: &[CorpusEntry], eval: &EvalArgs) -> Vec<RunReport> {
    let opts = eval.options();
    let variant = PsiDeltaVariant::Standard;
    let evaluators: Vec<Evaluator> = SystemKind::ALL.iter().map(|&k| Evaluator::new(k, variant)).collect();
    let jobs: Vec<(&CorpusEntry, &Evaluator)> = entries
        .iter()
        .flat_map(|e| evaluators.iter().map(move |ev| (e, ev)))
        .collect();
    jobs.par_iter()
        .map(|(e, ev)| run_term(&e.name, &e.term, ev, &opts))
        .collect()
}

fn name_width(rows: &[RunReport]) -> usize {
    rows.iter().map(|r| r.term_name.len()).max().unwrap_or(0).max(4)
}

fn cmd_check(eval: &EvalArgs, json: bool, corpus: &Path) -> Result<u8, Failure> {
    let entries = read_corpus(corpus)?;
    let rows = corpus_rows(&entries, eval);
    let ok = rows.iter().filter(|r| r.status == RunStatus::Ok).count();
    if json {
        println!("{}", to_json(&rows));
    } else {
        let w = name_width(&rows);
        let mut out = io::stdout().lock();
        for r in &rows {
            let _ = writeln!(
                out,
                "{:w$}  {:18}  {:8}  {:>7}  {}",
                r.term_name,
                r.system.as_str(),
                r.status.as_str(),
                r.interactions,
                r.readback.as_deref().unwrap_or("-"),
            );
        }
        let _ = writeln!(out, "{} rows: {ok} ok, {} failed", rows.len(), rows.len() - ok);
    }
    Ok(if ok == rows.len() { 0 } else { EXIT_FAIL })
}

fn cmd_bench(eval: &EvalArgs, corpus: &Path) -> Result<u8, Failure> {
    let entries = read_corpus(corpus)?;
    let rows = corpus_rows(&entries, eval);
    let w = name_width(&rows);
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{:w$}  {:18}  {:>12}  {:>13}", "term", "system", "interactions", "substitutions");
    for r in &rows {
        let _ = writeln!(
            out,
            "{:w$}  {:18}  {:>12}  {:>13}",
            r.term_name,
            r.system.as_str(),
            r.interactions,
            r.substitutions
        );
    }
    Ok(0)
}

fn cmd_polarity() -> Result<u8, Failure> {
    let sys = directed::build_directed_system();
    let witnesses: Vec<Configuration> = lamnet::lambda::bundled()
        .iter()
        .flat_map(|e| {
            [
                encode_gamma(&e.term, &mut NameSupply::new()),
                encode_gamma_star(&e.term, &mut NameSupply::new()),
            ]
        })
        .collect();
    let p = derive_polarity(&sys, &witnesses).map_err(|e| fail(EXIT_FAIL, e.to_string()))?;
    print!("{}", p.dump());
    Ok(0)
}

fn cmd_rules(system: &SystemArg) -> Result<u8, Failure> {
    print!("{}", system.evaluator().table().dump());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Run { system, eval, out, term } => cmd_run(system, eval, out, term.as_deref()),
        Command::Encode { system, out, term } => cmd_encode(system, out, term.as_deref()),
        Command::Reduce { system, eval, out, config } => cmd_reduce(system, eval, out, config.as_deref()),
        Command::Readback { system, config } => cmd_readback(system, config.as_deref()),
        Command::Check { eval, json, corpus } => cmd_check(eval, *json, corpus),
        Command::Bench { eval, corpus } => cmd_bench(eval, corpus),
        Command::Polarity => cmd_polarity(),
        Command::Rules { system } => cmd_rules(system),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
