//! Command-line front end. [`run`] parses arguments, writes the report to
//! the given sink and returns the process exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::decide::{
    axiom_soundness_suite, decide, equivalence_profile, tables, DecideError, OracleConfig, Verdict, DEFAULT_PROBE_DEPTH,
};
use crate::normalize::{
    count_core_strings, count_mem, enumerate_core_strings, enumerate_mem_basic_forms, normalize_for, Congruence,
    NormalizeError,
};
use crate::rewrite::{critical_pairs, join, normalize_with, PatternTerm, RewriteSystem, Strategy, SystemId};
use crate::semantics::{evaluate, parse_state_file, write_state_file, SemanticsError};
use crate::syntax::{parse_term, print_term, ParseError, Style};
use crate::term::{Alphabet, Atom, Term, TermError};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const INEQUIVALENT: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const GUARD: i32 = 3;
    pub const DEPTH: i32 = 4;
    /// Two decision procedures disagreed; never expected.
    pub const INTERNAL: i32 = 5;
}

const MAX_MEM_COUNT: u32 = 16;
const MAX_CORE_COUNT: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Cp,
    Cpt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Innermost,
    Outermost,
}

#[derive(Debug, Parser)]
#[command(name = "hmalab", version, about = "Conditional expressions under proposition-algebra congruences")]
struct Cli {
    /// Report format; json reports carry `schema_version`.
    #[arg(long, value_enum, default_value_t = OutputMode::Text, global = true)]
    output: OutputMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a term.
    Normalize {
        term: String,
        #[arg(short = 'c', long, default_value = "free")]
        congruence: Congruence,
        /// Atom order for `st` (comma separated).
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Print with `&&`, `||` and `!` where possible.
        #[arg(long)]
        sugared: bool,
    },
    /// Decide equivalence under one congruence, or all of them with --profile.
    Equiv {
        left: String,
        right: String,
        #[arg(short = 'c', long, conflicts_with = "profile")]
        congruence: Option<Congruence>,
        #[arg(long)]
        profile: bool,
        /// Show a distinguishing state when the terms differ.
        #[arg(long)]
        witness: bool,
        /// Also write that state to a file.
        #[arg(long, value_name = "FILE")]
        witness_file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_PROBE_DEPTH)]
        probe_depth: usize,
        /// Extra atoms for the compared states (comma separated).
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
    },
    /// Evaluate a term in a state read from a file.
    Eval {
        term: String,
        #[arg(long, value_name = "FILE")]
        state: PathBuf,
    },
    /// Rewrite a term to normal form, or check the critical pairs.
    #[command(group(ArgGroup::new("what").required(true).args(["term", "critical_pairs"])))]
    Trs {
        #[arg(long, value_enum, default_value_t = SystemArg::Cp)]
        system: SystemArg,
        #[arg(long)]
        term: Option<String>,
        #[arg(long)]
        critical_pairs: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Innermost)]
        strategy: StrategyArg,
    },
    /// Count or list memorizing basic forms and repetition-free strings.
    #[command(group(ArgGroup::new("what").required(true).args(["mem", "core", "enumerate_mem", "enumerate_core"])))]
    Count {
        #[arg(long)]
        mem: Option<u32>,
        #[arg(long)]
        core: Option<u32>,
        /// Comma-separated atoms.
        #[arg(long)]
        enumerate_mem: Option<String>,
        /// Comma-separated atoms.
        #[arg(long)]
        enumerate_core: Option<String>,
    },
    /// Print the axiom tables, or check one congruence's laws on random instances.
    Axioms {
        #[arg(long, value_name = "CONGRUENCE")]
        check: Option<Congruence>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Depth(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) | CliError::Io { .. } => exit::PARSE,
            CliError::Guard(_) => exit::GUARD,
            CliError::Depth(_) => exit::DEPTH,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

impl From<TermError> for CliError {
    fn from(e: TermError) -> CliError {
        CliError::Input(e.to_string())
    }
}

impl From<SemanticsError> for CliError {
    fn from(e: SemanticsError) -> CliError {
        match e {
            SemanticsError::Format { .. } => CliError::Input(e.to_string()),
            SemanticsError::InsufficientDepth { .. } | SemanticsError::BudgetExhausted => CliError::Depth(e.to_string()),
            SemanticsError::UnknownAtom(_) | SemanticsError::Guard { .. } | SemanticsError::Constraint(_) => {
                CliError::Guard(e.to_string())
            }
        }
    }
}

impl From<NormalizeError> for CliError {
    fn from(e: NormalizeError) -> CliError {
        match e {
            NormalizeError::AtomsOutsideOrder(_) => CliError::Input(e.to_string()),
            NormalizeError::EnumerationGuard { .. } => CliError::Guard(e.to_string()),
        }
    }
}

impl From<DecideError> for CliError {
    fn from(e: DecideError) -> CliError {
        match e {
            DecideError::Guard { .. } => CliError::Guard(e.to_string()),
            DecideError::Normalize(n) => n.into(),
            DecideError::Semantics(s) => s.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// What a command produced: text, the JSON body and the exit code.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

/// Parse `args` (program name first), run the command and write its report
/// to `out`. Diagnostics in text mode go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    let mode = cli.output;
    let (body, code) = match execute(cli.command) {
        Ok(report) => {
            let text = report.text;
            (if mode == OutputMode::Json { json_body(report.json) } else { text }, report.code)
        }
        Err(e) => {
            let code = e.exit_code();
            if mode == OutputMode::Json {
                (json_body(json!({ "error": e.to_string(), "exit_code": code })), code)
            } else {
                eprintln!("error: {e}");
                (String::new(), code)
            }
        }
    };
    let _ = out.write_all(body.as_bytes());
    let _ = out.flush();
    code
}

fn json_body(mut value: Value) -> String {
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn execute(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Normalize { term, congruence, order, sugared } => cmd_normalize(&term, congruence, order, sugared),
        Command::Equiv { left, right, congruence, profile, witness, witness_file, probe_depth, alphabet } => {
            let config = OracleConfig { probe_depth, alphabet: atoms_arg(alphabet)?, ..OracleConfig::default() };
            cmd_equiv(&left, &right, if profile { None } else { congruence }, witness, witness_file, &config)
        }
        Command::Eval { term, state } => cmd_eval(&term, &state),
        Command::Trs { system, term, critical_pairs, strategy } => {
            let system = match system {
                SystemArg::Cp => SystemId::Cp,
                SystemArg::Cpt => SystemId::Cpt,
            };
            let strategy = match strategy {
                StrategyArg::Innermost => Strategy::Innermost,
                StrategyArg::Outermost => Strategy::Outermost,
            };
            match term {
                Some(t) if !critical_pairs => cmd_trs_term(system, &t, strategy),
                _ => cmd_trs_pairs(system),
            }
        }
        Command::Count { mem, core, enumerate_mem, enumerate_core } => cmd_count(mem, core, enumerate_mem, enumerate_core),
        Command::Axioms { check, samples, seed } => match check {
            Some(k) => cmd_axiom_check(k, samples, seed),
            None => Ok(cmd_axiom_tables()),
        },
    }
}

fn atoms_arg(names: Option<Vec<String>>) -> Result<Option<Alphabet>, CliError> {
    match names {
        None => Ok(None),
        Some(names) => {
            let atoms = names.iter().map(|n| Atom::new(n.trim())).collect::<Result<Vec<_>, _>>()?;
            Ok(Some(Alphabet::new(atoms)?))
        }
    }
}

fn print(t: &Term) -> String {
    print_term(t, Style::Ternary)
}

fn cmd_normalize(text: &str, k: Congruence, order: Option<Vec<String>>, sugared: bool) -> Result<Report, CliError> {
    let term = parse_term(text)?;
    let order = atoms_arg(order)?;
    let form = normalize_for(&term, k, order.as_ref().map(|o| o.atoms()))?.to_term();
    let shown = print_term(&form, if sugared { Style::Sugared } else { Style::Ternary });
    Ok(Report {
        text: format!("{shown}\n"),
        json: json!({
            "command": "normalize",
            "congruence": k,
            "input": print(&term),
            "basic_form": print(&form),
            "sugared": print_term(&form, Style::Sugared),
        }),
        code: exit::OK,
    })
}

fn verdict_line(k: Congruence, v: &Verdict) -> String {
    let method = serde_json::to_value(v.method).ok().and_then(|m| m.as_str().map(str::to_owned)).unwrap_or_default();
    format!("{k}: {} ({method})", if v.equivalent { "equivalent" } else { "not equivalent" })
}

fn cmd_equiv(
    left: &str,
    right: &str,
    k: Option<Congruence>,
    show_witness: bool,
    witness_file: Option<PathBuf>,
    config: &OracleConfig,
) -> Result<Report, CliError> {
    let l = parse_term(left)?;
    let r = parse_term(right)?;
    let verdicts: Vec<(Congruence, Verdict)> = match k {
        Some(k) => vec![(k, decide(&l, &r, k, config)?)],
        None => equivalence_profile(&l, &r, config)?.0,
    };
    // A profile counts as equivalent when even the finest congruence agrees.
    let equivalent = verdicts[0].1.equivalent;
    let mut text = String::new();
    for (k, v) in &verdicts {
        let _ = writeln!(text, "{}", verdict_line(*k, v));
    }
    let first_witness = verdicts.iter().find_map(|(k, v)| v.witness.as_ref().map(|w| (*k, w)));
    if let Some((wk, w)) = first_witness {
        if show_witness || witness_file.is_some() {
            let _ = writeln!(text, "witness ({wk}):");
            text.push_str(&w.to_state_file());
        }
        if let Some(path) = &witness_file {
            std::fs::write(path, w.to_state_file()).map_err(|source| CliError::Io { path: path.clone(), source })?;
        }
    }
    let mut results = serde_json::Map::new();
    for (k, v) in &verdicts {
        let mut entry = serde_json::to_value(v).expect("verdicts serialize");
        if !show_witness {
            if let Value::Object(m) = &mut entry {
                m.remove("witness");
            }
        }
        results.insert(k.name().to_owned(), entry);
    }
    Ok(Report {
        text,
        json: json!({
            "command": "equiv",
            "left": print(&l),
            "right": print(&r),
            "equivalent": equivalent,
            "verdicts": results,
        }),
        code: if equivalent { exit::OK } else { exit::INEQUIVALENT },
    })
}

fn cmd_eval(text: &str, path: &PathBuf) -> Result<Report, CliError> {
    let term = parse_term(text)?;
    let source = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let file = parse_state_file(&source)?;
    let (reply, after) = evaluate(&term, &file.state)?;
    let letter = if reply { "T" } else { "F" };
    let table = write_state_file(&after, None);
    let entries: serde_json::Map<String, Value> =
        after.entries().into_iter().map(|(s, v)| (s.to_string(), json!(if v { "T" } else { "F" }))).collect();
    Ok(Report {
        text: format!("reply: {letter}\nstate:\n{table}"),
        json: json!({
            "command": "eval",
            "term": print(&term),
            "reply": letter,
            "state": {
                "class": after.class(),
                "alphabet": after.alphabet().to_string(),
                "depth": after.depth(),
                "entries": entries,
            },
        }),
        code: exit::OK,
    })
}

fn cmd_trs_term(system: SystemId, text: &str, strategy: Strategy) -> Result<Report, CliError> {
    let term = parse_term(text)?;
    let sys = RewriteSystem::by_id(system);
    let (nf, trace) = normalize_with(&PatternTerm::from(&term), &sys, strategy);
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "position": s.position.to_string(),
                "rule": s.rule,
                "w_before": s.weight_before().to_string(),
                "w_after": s.weight_after().to_string(),
                "after": s.after.to_string(),
            })
        })
        .collect();
    Ok(Report {
        text: format!("{trace}normal form: {nf}\n"),
        json: json!({
            "command": "trs",
            "system": system.to_string(),
            "term": print(&term),
            "steps": steps,
            "normal_form": nf.to_string(),
        }),
        code: exit::OK,
    })
}

fn cmd_trs_pairs(system: SystemId) -> Result<Report, CliError> {
    let sys = RewriteSystem::by_id(system);
    let pairs = critical_pairs(system);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut joined = 0;
    for (i, p) in pairs.iter().enumerate() {
        let outcome = join(p, &sys);
        joined += usize::from(outcome.joinable);
        let _ = writeln!(
            text,
            "{:>2} {}/{}  {}  =>  <{}, {}>  normal forms <{}, {}>  {}",
            i + 1,
            p.rules.0,
            p.rules.1,
            p.overlap,
            p.left,
            p.right,
            outcome.left_normal,
            outcome.right_normal,
            if outcome.joinable { "joinable" } else { "NOT joinable" }
        );
        rows.push(json!({
            "rules": [p.rules.0, p.rules.1],
            "overlap": p.overlap.to_string(),
            "left": p.left.to_string(),
            "right": p.right.to_string(),
            "left_normal": outcome.left_normal.to_string(),
            "right_normal": outcome.right_normal.to_string(),
            "joinable": outcome.joinable,
        }));
    }
    let _ = writeln!(text, "{joined}/{} joinable", pairs.len());
    let all = joined == pairs.len();
    Ok(Report {
        text,
        json: json!({
            "command": "trs",
            "system": system.to_string(),
            "pairs": rows,
            "joinable": joined,
            "total": pairs.len(),
        }),
        code: if all { exit::OK } else { exit::INEQUIVALENT },
    })
}

fn cmd_count(
    mem: Option<u32>,
    core: Option<u32>,
    enumerate_mem: Option<String>,
    enumerate_core: Option<String>,
) -> Result<Report, CliError> {
    let number = |what: &str, n: u32, value: String| Report {
        text: format!("{value}\n"),
        json: json!({ "command": "count", "kind": what, "n": n, "count": value }),
        code: exit::OK,
    };
    if let Some(n) = mem {
        if n > MAX_MEM_COUNT {
            return Err(CliError::Guard(format!("--mem {n} exceeds the limit of {MAX_MEM_COUNT}")));
        }
        return Ok(number("mem", n, count_mem(n).to_string()));
    }
    if let Some(n) = core {
        if n > MAX_CORE_COUNT {
            return Err(CliError::Guard(format!("--core {n} exceeds the limit of {MAX_CORE_COUNT}")));
        }
        return Ok(number("core", n, count_core_strings(n).to_string()));
    }
    let (kind, names) = match (enumerate_mem, enumerate_core) {
        (Some(a), _) => ("mem", a),
        (_, Some(a)) => ("core", a),
        _ => unreachable!("clap requires one option"),
    };
    let alphabet = atoms_arg(Some(names.split(',').map(str::to_owned).collect()))?.expect("given");
    let n = alphabet.len() as u32;
    let (listing, expected): (Vec<String>, String) = if kind == "mem" {
        let forms = enumerate_mem_basic_forms(&alphabet)?;
        (forms.iter().map(|f| print(&f.to_term())).collect(), count_mem(n).to_string())
    } else {
        if alphabet.len() > 6 {
            return Err(CliError::Guard(format!("core enumeration over {} atoms exceeds the limit of 6", alphabet.len())));
        }
        (enumerate_core_strings(&alphabet).iter().map(|s| s.to_string()).collect(), count_core_strings(n).to_string())
    };
    if listing.len().to_string() != expected {
        return Err(CliError::Internal(format!("enumerated {} items, recurrence gives {expected}", listing.len())));
    }
    let mut text = listing.join("\n");
    text.push('\n');
    let _ = writeln!(text, "count: {}", listing.len());
    Ok(Report {
        text,
        json: json!({ "command": "count", "kind": kind, "alphabet": alphabet.to_string(), "count": listing.len().to_string(), "items": listing }),
        code: exit::OK,
    })
}

fn cmd_axiom_tables() -> Report {
    let mut text = String::new();
    let mut out = Vec::new();
    for table in tables() {
        let _ = writeln!(text, "{}", table.name);
        for ax in table.axioms {
            let mut note = String::new();
            if !ax.atom_vars.is_empty() {
                let _ = write!(note, "  [atoms: {}]", ax.atom_vars.join(", "));
            }
            if ax.derived {
                note.push_str("  [derived]");
            }
            let _ = writeln!(text, "  {:<16} {} = {}{note}", ax.name, ax.lhs, ax.rhs);
        }
        out.push(json!({ "name": table.name, "axioms": table.axioms }));
    }
    Report { text, json: json!({ "command": "axioms", "tables": out }), code: exit::OK }
}

fn cmd_axiom_check(k: Congruence, samples: usize, seed: u64) -> Result<Report, CliError> {
    if samples == 0 {
        return Err(CliError::Input("--samples must be at least 1".into()));
    }
    let report = axiom_soundness_suite(k, samples, seed, &OracleConfig::default())?;
    let mut text = String::new();
    for row in &report.rows {
        let _ = writeln!(text, "{k} {:<16} {}/{} passed", row.name, row.passed, row.passed + row.failed);
        for (l, r) in &row.failures {
            let _ = writeln!(text, "    counterexample: {l} = {r}");
        }
    }
    let mut json = serde_json::to_value(&report).expect("reports serialize");
    if let Value::Object(m) = &mut json {
        m.insert("command".into(), json!("axioms"));
    }
    Ok(Report { text, json, code: if report.all_passed() { exit::OK } else { exit::INEQUIVALENT } })
}
