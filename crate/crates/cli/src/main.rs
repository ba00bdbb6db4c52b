//! `tropicheck` — command-line front end for the weighted-automata toolkit.
//!
//! Every command prints one JSON report to stdout; `--pretty` additionally
//! renders human-readable tables on stderr. Reports are deterministic:
//! identical inputs produce byte-identical JSON except for the trailing
//! `timing_ms` field.
//!
//! Exit codes:
//! * `0` — success (for pump checks: the property holds).
//! * `1` — input error: unreadable or malformed automaton file (diagnostics
//!   carry the offending line), unknown corpus name, bad word or rep, or a
//!   check precondition failure.
//! * `2` — usage error (bad flags/arguments), and `runs` on a word longer
//!   than `--limit`.
//! * `3` — a pump check returned `violated` (for `hierarchy`: some row
//!   failed to separate its classes).
//! * `4` — a pump check returned `not-stabilized` (for `hierarchy`: some
//!   sub-check did).

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;
use tropicheck::ambiguity;
use tropicheck::corpus;
use tropicheck::format;
use tropicheck::hierarchy;
use tropicheck::pump::checks::{
    check_fa_max, check_finite_min, check_nat, check_pa_max, check_pa_min, CheckParams, Outcome,
};
use tropicheck::pump::factorize::{factorize_idempotent, refine_rep, refinement_universe};
use tropicheck::pump::{FactorSet, FunctionHandle, PumpError, PumpingRep, RefinedRep};
use tropicheck::{Automaton, AutomatonError};

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

/// Exact analysis of weighted automata over tropical and counting semirings.
#[derive(Parser)]
#[command(name = "tropicheck", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Largest pumping exponent evaluated by checks and value tables.
    #[arg(long, global = true, default_value_t = 64)]
    horizon: u64,

    /// Trailing differences that must agree before a sequence counts as
    /// stabilized.
    #[arg(long, global = true, default_value_t = 8)]
    window: u64,

    /// Longest word accepted by run enumeration.
    #[arg(long, global = true, default_value_t = 12)]
    limit: usize,

    /// List every refinement of the pumping representation in the report,
    /// not just the universe summary.
    #[arg(long, global = true)]
    all_refinements: bool,

    /// Render human-readable tables on stderr alongside the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a machine on a word.
    Eval {
        /// Corpus machine name (try `corpus list`) or automaton file path.
        machine: String,
        /// Input word; may be empty ("").
        word: String,
    },
    /// Enumerate and count the accepting runs of a machine on a word.
    Runs {
        /// Corpus machine name or automaton file path.
        machine: String,
        /// Input word; must be at most `--limit` letters long.
        word: String,
    },
    /// Trim a machine and classify its ambiguity degree.
    Classify {
        /// Corpus machine name or automaton file path.
        machine: String,
    },
    /// Find the canonical idempotent infix of a word for a machine.
    Factorize {
        /// Corpus machine name or automaton file path.
        machine: String,
        /// Factor to split; must act on at least one state.
        word: String,
    },
    /// Run one of the five pumping checks.
    Pump {
        #[command(subcommand)]
        variant: PumpCmd,
    },
    /// Inspect the built-in corpus of machines and reference functions.
    Corpus {
        #[command(subcommand)]
        which: CorpusCmd,
    },
    /// Run the full class-separation suite and print its table.
    Hierarchy,
}

/// Where a pump check gets its function from. Exactly one source is given.
#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)
    .args(["wa", "oracle", "min_of", "max_of"])))]
struct Source {
    /// A single weighted automaton: corpus machine name or file path.
    #[arg(long, value_name = "MACHINE")]
    wa: Option<String>,

    /// A built-in reference function, e.g. `f3` (try `corpus list`).
    #[arg(long, value_name = "NAME")]
    oracle: Option<String>,

    /// Pointwise min of min-plus automata (comma-separated machines).
    #[arg(long, value_name = "MACHINES", value_delimiter = ',')]
    min_of: Option<Vec<String>>,

    /// Pointwise max of max-plus automata (comma-separated machines).
    #[arg(long, value_name = "MACHINES", value_delimiter = ',')]
    max_of: Option<Vec<String>>,
}

/// A pumping representation is written as one string: segments interleaved
/// with bracketed factors, e.g. `"aa [bbb] a [ba] b"`. Whitespace is
/// ignored, factors must be non-empty, segments may be empty.
#[derive(Subcommand)]
enum PumpCmd {
    /// Exact equal-or-strict growth of one pumped factor (counting
    /// semantics).
    Nat {
        /// Representation with exactly one factor, e.g. `"a [bbb] b"`.
        rep: String,
        #[command(flatten)]
        source: Source,
        /// Minimum factor length and first compared exponent
        /// [default: the factor length].
        #[arg(long)]
        threshold: Option<u64>,
    },
    /// Eventual flatness of pumped sets and their unions (min-plus,
    /// finitely ambiguous semantics).
    FiniteMin {
        /// Representation, e.g. `"[bbb] aaa [bbb] aaa"`.
        rep: String,
        /// Factor sets to query: 1-based indices, comma-separated within a
        /// set, sets separated by `;`, e.g. `"1,2;3"`.
        #[arg(long, value_name = "SETS")]
        sets: String,
        #[command(flatten)]
        source: Source,
        /// Minimum number of queried sets [default: the number given].
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Flat-block-or-flat-selections dichotomy over a factor partition
    /// (min-plus, polynomially ambiguous semantics).
    PaMin {
        /// Representation, e.g. `"[aaa] [bbb] [aaa] [bbb]"`.
        rep: String,
        /// Partition of all factors into blocks, e.g. `"1,2;3,4"`.
        #[arg(long, value_name = "BLOCKS")]
        partition: String,
        #[command(flatten)]
        source: Source,
    },
    /// Decomposability of pumped sets and cross-set pairs (max-plus,
    /// finitely ambiguous semantics).
    FaMax {
        /// Representation, e.g. `"[aaaa] [bbbb] [aaaa] [bbbb]"`.
        rep: String,
        /// Factor sets to query, e.g. `"1;2;3"`.
        #[arg(long, value_name = "SETS")]
        sets: String,
        #[command(flatten)]
        source: Source,
    },
    /// Decomposable-block-or-decomposable-selections dichotomy (max-plus,
    /// polynomially ambiguous semantics).
    PaMax {
        /// Representation, e.g. `"[aaa] [bbb] [aaa] [bbb]"`.
        rep: String,
        /// Partition of all factors into blocks, e.g. `"1,2;3,4"`.
        #[arg(long, value_name = "BLOCKS")]
        partition: String,
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// List the built-in machines and reference functions.
    List,
    /// Print a corpus machine in the automaton file format.
    Emit {
        /// Corpus machine name, e.g. `w3`.
        name: String,
    },
}

// ---------------------------------------------------------------------------
// Failure plumbing
// ---------------------------------------------------------------------------

/// An error that aborts the command before a report is produced.
enum Failure {
    /// Bad input data (exit 1): unreadable/malformed files, unknown names,
    /// invalid words, reps, or sets, failed check preconditions.
    Input(String),
    /// Bad usage at the semantic level (exit 2), e.g. a word longer than
    /// the run-enumeration limit.
    Usage(String),
}

impl Failure {
    fn input(msg: impl Into<String>) -> Failure {
        Failure::Input(msg.into())
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<PumpError> for Failure {
    fn from(e: PumpError) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<AutomatonError> for Failure {
    fn from(e: AutomatonError) -> Failure {
        Failure::Input(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Report envelope
// ---------------------------------------------------------------------------

/// The one JSON document every command prints to stdout.
#[derive(Serialize)]
struct Report {
    /// Bumped whenever the shape of any payload changes.
    schema_version: u32,
    /// Subcommand that produced the report.
    command: String,
    /// Echo of the resolved inputs.
    inputs: serde_json::Value,
    /// FNV-1a 64-bit digest of the canonical `{command, inputs}` JSON.
    digest: String,
    /// Command-specific payload.
    result: serde_json::Value,
    /// Wall-clock milliseconds; the only field allowed to vary between
    /// identical invocations.
    timing_ms: u128,
}

const SCHEMA_VERSION: u32 = 1;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn report(
    command: &str,
    inputs: serde_json::Value,
    result: serde_json::Value,
    started: Instant,
) -> Report {
    let canonical = serde_json::json!({ "command": command, "inputs": &inputs });
    let digest = fnv1a(canonical.to_string().as_bytes());
    Report {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        inputs,
        digest: format!("{digest:016x}"),
        result,
        timing_ms: started.elapsed().as_millis(),
    }
}

fn print_report(r: &Report) {
    let text = serde_json::to_string_pretty(r).expect("report serializes");
    println!("{text}");
}

// ---------------------------------------------------------------------------
// Input resolution and parsing
// ---------------------------------------------------------------------------

/// Resolve a machine argument: corpus name first, then file path.
fn resolve_machine(arg: &str) -> Result<Automaton, Failure> {
    if let Some(a) = corpus::machine(arg) {
        return Ok(a);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| {
        Failure::input(format!(
            "{arg}: not a corpus machine (try `corpus list`) and not a readable file: {e}"
        ))
    })?;
    format::parse(&text).map_err(|e| Failure::input(format!("{arg}: {e}")))
}

fn resolve_source(src: &Source) -> Result<(FunctionHandle, serde_json::Value), Failure> {
    if let Some(name) = &src.wa {
        let auto = resolve_machine(name)?;
        let echo = serde_json::json!({ "kind": "wa", "names": [name] });
        return Ok((FunctionHandle::from_automaton(name.clone(), auto), echo));
    }
    if let Some(name) = &src.oracle {
        let semiring = corpus::oracle_semiring(name).ok_or_else(|| {
            Failure::input(format!("{name}: not a corpus function (try `corpus list`)"))
        })?;
        let eval = corpus::oracle(name).expect("semiring lookup implies oracle exists");
        let echo = serde_json::json!({ "kind": "oracle", "names": [name] });
        return Ok((
            FunctionHandle::from_oracle(name.to_ascii_lowercase(), semiring, eval),
            echo,
        ));
    }
    let (kind, names) = if let Some(names) = &src.min_of {
        ("min-of", names)
    } else if let Some(names) = &src.max_of {
        ("max-of", names)
    } else {
        unreachable!("clap enforces exactly one source");
    };
    let mut parts = Vec::with_capacity(names.len());
    for name in names {
        parts.push(resolve_machine(name)?);
    }
    let display = format!("{kind}({})", names.join(","));
    let handle = if kind == "min-of" {
        FunctionHandle::min_of(display, parts)?
    } else {
        FunctionHandle::max_of(display, parts)?
    };
    let echo = serde_json::json!({ "kind": kind, "names": names });
    Ok((handle, echo))
}

/// Parse `"u0 [v1] u1 [v2] u2"` into a pumping representation. Whitespace
/// is ignored; brackets must be balanced and non-nested; every factor must
/// be non-empty.
fn parse_rep(text: &str) -> Result<PumpingRep, Failure> {
    let mut segments = vec![String::new()];
    let mut factors: Vec<String> = Vec::new();
    let mut in_factor = false;
    for c in text.chars() {
        match c {
            c if c.is_whitespace() => {}
            '[' => {
                if in_factor {
                    return Err(Failure::input(format!("rep {text:?}: '[' inside a factor")));
                }
                in_factor = true;
                factors.push(String::new());
            }
            ']' => {
                if !in_factor {
                    return Err(Failure::input(format!("rep {text:?}: unmatched ']'")));
                }
                in_factor = false;
                segments.push(String::new());
            }
            c => {
                if in_factor {
                    factors.last_mut().expect("open factor").push(c);
                } else {
                    segments.last_mut().expect("segments start non-empty").push(c);
                }
            }
        }
    }
    if in_factor {
        return Err(Failure::input(format!("rep {text:?}: unclosed '['")));
    }
    if factors.is_empty() {
        return Err(Failure::input(format!(
            "rep {text:?}: needs at least one [factor]"
        )));
    }
    PumpingRep::new(segments, factors).map_err(Failure::from)
}

/// Parse `"1,2;3"` into factor sets (1-based indices).
fn parse_sets(text: &str) -> Result<Vec<FactorSet>, Failure> {
    let mut sets = Vec::new();
    for part in text.split(';') {
        let mut set = BTreeSet::new();
        for item in part.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(Failure::input(format!(
                    "sets {text:?}: empty index in {part:?}"
                )));
            }
            let k: usize = item.parse().map_err(|_| {
                Failure::input(format!("sets {text:?}: {item:?} is not a factor index"))
            })?;
            set.insert(k);
        }
        if set.is_empty() {
            return Err(Failure::input(format!("sets {text:?}: empty set")));
        }
        sets.push(set);
    }
    Ok(sets)
}

fn rep_echo(rep: &PumpingRep) -> serde_json::Value {
    serde_json::json!({
        "segments": rep.segments(),
        "factors": rep.factors(),
        "word": rep.word(),
    })
}

fn sets_echo(sets: &[FactorSet]) -> serde_json::Value {
    let lists: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    serde_json::json!(lists)
}

// ---------------------------------------------------------------------------
// Per-exponent value tables
// ---------------------------------------------------------------------------

/// Values of the function along one pumped direction of the canonical
/// refinement: `values[i] = f(w(set, i))` for `i = 0..=horizon`.
#[derive(Serialize)]
struct ValueTable {
    label: String,
    set: Vec<usize>,
    values: Vec<String>,
}

fn value_table(
    f: &FunctionHandle,
    refined: &RefinedRep,
    label: &str,
    set: &FactorSet,
    horizon: u64,
) -> Result<ValueTable, Failure> {
    let mut values = Vec::with_capacity(horizon as usize + 1);
    for i in 0..=horizon {
        values.push(f.evaluate(&refined.pumped(set, i))?.to_string());
    }
    Ok(ValueTable {
        label: label.to_string(),
        set: set.iter().copied().collect(),
        values,
    })
}

fn value_tables(
    f: &FunctionHandle,
    rep: &PumpingRep,
    labelled_sets: &[(String, FactorSet)],
    horizon: u64,
) -> Result<Vec<ValueTable>, Failure> {
    let refined = refine_rep(f, rep)?;
    labelled_sets
        .iter()
        .map(|(label, set)| value_table(f, &refined, label, set, horizon))
        .collect()
}

fn labelled(prefix: &str, sets: &[FactorSet]) -> Vec<(String, FactorSet)> {
    sets.iter()
        .enumerate()
        .map(|(i, s)| {
            let indices: Vec<String> = s.iter().map(|k| k.to_string()).collect();
            (
                format!("{prefix} {} {{{}}}", i + 1, indices.join(",")),
                s.clone(),
            )
        })
        .collect()
}

/// Universe summary (and, under `--all-refinements`, the full listing).
fn universe_echo(
    f: &FunctionHandle,
    rep: &PumpingRep,
    params: &CheckParams,
    all: bool,
) -> Result<serde_json::Value, Failure> {
    let universe = refinement_universe(f, rep, params.refinement_cap)?;
    let mut value = serde_json::json!({
        "total": universe.total.to_string(),
        "kept": universe.refinements.len(),
        "truncated": universe.truncated,
    });
    if all {
        let listing: Vec<serde_json::Value> = universe
            .refinements
            .iter()
            .enumerate()
            .map(|(index, r)| {
                serde_json::json!({
                    "index": index,
                    "splits": r.splits(),
                    "kept": r.kept(),
                })
            })
            .collect();
        value["refinements"] = serde_json::json!(listing);
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// Pretty renderers (stderr only)
// ---------------------------------------------------------------------------

fn render_tables(tables: &[ValueTable], horizon: u64) {
    if tables.is_empty() {
        return;
    }
    let mut header = String::from("    i");
    for t in tables {
        header.push_str(&format!("  {:>18}", t.label));
    }
    eprintln!("{header}");
    for i in 0..=horizon as usize {
        let mut row = format!("{i:>5}");
        for t in tables {
            row.push_str(&format!("  {:>18}", t.values[i]));
        }
        eprintln!("{row}");
    }
}

fn render_hierarchy(rows: &[hierarchy::HierarchyRow]) {
    eprintln!(
        "{:<10} {:<9} {:<7} {:<12} {:<11} {:<15} witnesses",
        "function", "semiring", "class", "excluded", "check", "outcome"
    );
    for r in rows {
        eprintln!(
            "{:<10} {:<9} {:<7} {:<12} {:<11} {:<15} {}",
            r.function,
            r.semiring.name(),
            r.member_class,
            r.excluded_class,
            r.check,
            outcome_name(r.outcome),
            r.violation_summary
        );
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::Violated => "violated",
        Outcome::NotStabilized => "not-stabilized",
    }
}

fn outcome_exit(o: Outcome) -> u8 {
    match o {
        Outcome::Holds => 0,
        Outcome::Violated => 3,
        Outcome::NotStabilized => 4,
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_eval(machine: &str, word: &str, pretty: bool, started: Instant) -> Result<u8, Failure> {
    let auto = resolve_machine(machine)?;
    let value = auto.evaluate(word)?;
    let inputs = serde_json::json!({ "machine": machine, "word": word });
    let result = serde_json::json!({
        "semiring": auto.semiring().name(),
        "value": value.to_string(),
    });
    print_report(&report("eval", inputs, result, started));
    if pretty {
        eprintln!("{machine}({word:?}) = {value}  [{}]", auto.semiring().name());
    }
    Ok(0)
}

fn cmd_runs(
    machine: &str,
    word: &str,
    limit: usize,
    pretty: bool,
    started: Instant,
) -> Result<u8, Failure> {
    let auto = resolve_machine(machine)?;
    let runs = auto.enumerate_runs(word, limit).map_err(|e| match e {
        AutomatonError::WordTooLong { len, limit } => Failure::Usage(format!(
            "word has {len} letters but the run-enumeration limit is {limit}; \
             raise --limit to enumerate it"
        )),
        other => Failure::from(other),
    })?;
    let count = auto.count_runs(word)?;
    let run_list: Vec<serde_json::Value> = runs
        .iter()
        .map(|r| {
            serde_json::json!({
                "states": r.states,
                "weight": r.weight.to_string(),
            })
        })
        .collect();
    let inputs = serde_json::json!({ "machine": machine, "word": word, "limit": limit });
    let result = serde_json::json!({
        "semiring": auto.semiring().name(),
        "count": count.to_string(),
        "runs": run_list,
        "value": auto.evaluate(word)?.to_string(),
    });
    print_report(&report("runs", inputs, result, started));
    if pretty {
        eprintln!("{count} accepting run(s) of {machine} on {word:?}:");
        for r in &runs {
            eprintln!("  {}  (weight {})", r.states.join(" -> "), r.weight);
        }
    }
    Ok(0)
}

fn cmd_classify(machine: &str, pretty: bool, started: Instant) -> Result<u8, Failure> {
    let auto = resolve_machine(machine)?;
    let classification = ambiguity::classify(&auto)?;
    let inputs = serde_json::json!({ "machine": machine });
    let mut result = serde_json::to_value(&classification).expect("classification serializes");
    result["degree"] = serde_json::json!(classification.degree.name());
    print_report(&report("classify", inputs, result, started));
    if pretty {
        eprintln!("{machine}: {}", classification.degree.name());
        if let Some(w) = &classification.ambiguous_word {
            eprintln!("  two runs on {w:?}");
        }
        if let Some(c) = &classification.doubling_cycle {
            eprintln!("  doubling cycle at {} on {:?}", c.state, c.word);
        }
        if let Some(d) = &classification.drift_pattern {
            eprintln!("  drift {} -> {} on {:?}", d.from, d.to, d.word);
        }
    }
    Ok(0)
}

fn cmd_factorize(machine: &str, word: &str, pretty: bool, started: Instant) -> Result<u8, Failure> {
    let auto = resolve_machine(machine)?;
    let (start, end) = factorize_idempotent(&auto, word)?;
    let chars: Vec<char> = word.chars().collect();
    let infix: String = chars[start..end].iter().collect();
    let inputs = serde_json::json!({ "machine": machine, "word": word });
    let result = serde_json::json!({
        "start": start,
        "end": end,
        "infix": infix,
    });
    print_report(&report("factorize", inputs, result, started));
    if pretty {
        let before: String = chars[..start].iter().collect();
        let after: String = chars[end..].iter().collect();
        eprintln!("{machine} on {word:?}: {before}[{infix}]{after} (idempotent infix)");
    }
    Ok(0)
}

/// Everything shared by the five pump commands after the verdict exists.
#[allow(clippy::too_many_arguments)]
fn finish_pump(
    check_name: &str,
    inputs: serde_json::Value,
    verdict: serde_json::Value,
    outcome: Outcome,
    tables: Vec<ValueTable>,
    universe: serde_json::Value,
    horizon: u64,
    pretty: bool,
    started: Instant,
) -> Result<u8, Failure> {
    let result = serde_json::json!({
        "outcome": outcome_name(outcome),
        "verdict": verdict,
        "refinement_universe": universe,
        "tables": tables,
    });
    print_report(&report(check_name, inputs, result, started));
    if pretty {
        eprintln!("{check_name}: {}", outcome_name(outcome));
        render_tables(&tables, horizon);
    }
    Ok(outcome_exit(outcome))
}

fn cmd_pump(variant: &PumpCmd, cli: &Cli, started: Instant) -> Result<u8, Failure> {
    let params = CheckParams {
        horizon: cli.horizon,
        window: cli.window,
        ..CheckParams::default()
    };
    match variant {
        PumpCmd::Nat {
            rep,
            source,
            threshold,
        } => {
            let parsed = parse_rep(rep)?;
            if parsed.factor_count() != 1 {
                return Err(Failure::input(format!(
                    "the nat check pumps exactly one factor, got {}",
                    parsed.factor_count()
                )));
            }
            let (f, source_echo) = resolve_source(source)?;
            let u = parsed.segments()[0].clone();
            let v = parsed.factors()[0].clone();
            let w = parsed.segments()[1].clone();
            let threshold = threshold.unwrap_or(v.chars().count() as u64);
            let verdict = check_nat(&f, &u, &v, &w, threshold, &params)?;
            let inputs = serde_json::json!({
                "function": source_echo,
                "rep": rep_echo(&parsed),
                "threshold": threshold,
                "horizon": cli.horizon,
                "window": cli.window,
            });
            let single: FactorSet = std::iter::once(1).collect();
            let tables = value_tables(
                &f,
                &parsed,
                &[("factor 1".to_string(), single)],
                cli.horizon,
            )?;
            let universe = universe_echo(&f, &parsed, &params, cli.all_refinements)?;
            finish_pump(
                "pump-nat",
                inputs,
                serde_json::to_value(&verdict).expect("verdict serializes"),
                verdict.outcome(),
                tables,
                universe,
                cli.horizon,
                cli.pretty,
                started,
            )
        }
        PumpCmd::FiniteMin {
            rep,
            sets,
            source,
            threshold,
        } => {
            let parsed = parse_rep(rep)?;
            let set_list = parse_sets(sets)?;
            let (f, source_echo) = resolve_source(source)?;
            let threshold = threshold.unwrap_or(set_list.len());
            let verdict = check_finite_min(&f, &parsed, &set_list, threshold, &params)?;
            let inputs = serde_json::json!({
                "function": source_echo,
                "rep": rep_echo(&parsed),
                "sets": sets_echo(&set_list),
                "threshold": threshold,
                "horizon": cli.horizon,
                "window": cli.window,
            });
            let tables = value_tables(&f, &parsed, &labelled("set", &set_list), cli.horizon)?;
            let universe = universe_echo(&f, &parsed, &params, cli.all_refinements)?;
            finish_pump(
                "pump-finite-min",
                inputs,
                serde_json::to_value(&verdict).expect("verdict serializes"),
                verdict.outcome(),
                tables,
                universe,
                cli.horizon,
                cli.pretty,
                started,
            )
        }
        PumpCmd::PaMin {
            rep,
            partition,
            source,
        } => {
            let parsed = parse_rep(rep)?;
            let blocks = parse_sets(partition)?;
            let (f, source_echo) = resolve_source(source)?;
            let verdict = check_pa_min(&f, &parsed, &blocks, &params)?;
            let inputs = serde_json::json!({
                "function": source_echo,
                "rep": rep_echo(&parsed),
                "partition": sets_echo(&blocks),
                "horizon": cli.horizon,
                "window": cli.window,
            });
            let tables = value_tables(&f, &parsed, &labelled("block", &blocks), cli.horizon)?;
            let universe = universe_echo(&f, &parsed, &params, cli.all_refinements)?;
            finish_pump(
                "pump-pa-min",
                inputs,
                serde_json::to_value(&verdict).expect("verdict serializes"),
                verdict.outcome(),
                tables,
                universe,
                cli.horizon,
                cli.pretty,
                started,
            )
        }
        PumpCmd::FaMax { rep, sets, source } => {
            let parsed = parse_rep(rep)?;
            let set_list = parse_sets(sets)?;
            let (f, source_echo) = resolve_source(source)?;
            let verdict = check_fa_max(&f, &parsed, &set_list, &params)?;
            let inputs = serde_json::json!({
                "function": source_echo,
                "rep": rep_echo(&parsed),
                "sets": sets_echo(&set_list),
                "horizon": cli.horizon,
                "window": cli.window,
            });
            let tables = value_tables(&f, &parsed, &labelled("set", &set_list), cli.horizon)?;
            let universe = universe_echo(&f, &parsed, &params, cli.all_refinements)?;
            finish_pump(
                "pump-fa-max",
                inputs,
                serde_json::to_value(&verdict).expect("verdict serializes"),
                verdict.outcome(),
                tables,
                universe,
                cli.horizon,
                cli.pretty,
                started,
            )
        }
        PumpCmd::PaMax {
            rep,
            partition,
            source,
        } => {
            let parsed = parse_rep(rep)?;
            let blocks = parse_sets(partition)?;
            let (f, source_echo) = resolve_source(source)?;
            let verdict = check_pa_max(&f, &parsed, &blocks, &params)?;
            let inputs = serde_json::json!({
                "function": source_echo,
                "rep": rep_echo(&parsed),
                "partition": sets_echo(&blocks),
                "horizon": cli.horizon,
                "window": cli.window,
            });
            let tables = value_tables(&f, &parsed, &labelled("block", &blocks), cli.horizon)?;
            let universe = universe_echo(&f, &parsed, &params, cli.all_refinements)?;
            finish_pump(
                "pump-pa-max",
                inputs,
                serde_json::to_value(&verdict).expect("verdict serializes"),
                verdict.outcome(),
                tables,
                universe,
                cli.horizon,
                cli.pretty,
                started,
            )
        }
    }
}

fn cmd_corpus_list(pretty: bool, started: Instant) -> Result<u8, Failure> {
    let machines: Vec<serde_json::Value> = corpus::MACHINES
        .iter()
        .map(|&name| {
            let auto = corpus::machine(name).expect("listed machine exists");
            serde_json::json!({
                "name": name,
                "semiring": auto.semiring().name(),
                "states": auto.dim(),
                "degree": corpus::expected_degree(name)
                    .expect("listed machine has a degree")
                    .name(),
                "oracle": corpus::paired_oracle(name).expect("listed machine has an oracle"),
                "describes": corpus::describe(name).expect("listed machine has a description"),
            })
        })
        .collect();
    let oracles: Vec<serde_json::Value> = corpus::ORACLES
        .iter()
        .map(|&name| {
            serde_json::json!({
                "name": name,
                "semiring": corpus::oracle_semiring(name)
                    .expect("listed oracle has a semiring")
                    .name(),
                "describes": corpus::describe(name).expect("listed oracle has a description"),
            })
        })
        .collect();
    let inputs = serde_json::json!({});
    let result = serde_json::json!({ "machines": machines, "oracles": oracles });
    print_report(&report("corpus-list", inputs, result, started));
    if pretty {
        eprintln!("machines:");
        for &name in corpus::MACHINES {
            eprintln!(
                "  {name:<5} {}",
                corpus::describe(name).expect("listed machine has a description")
            );
        }
        eprintln!("functions:");
        for &name in corpus::ORACLES {
            eprintln!(
                "  {name:<5} {}",
                corpus::describe(name).expect("listed oracle has a description")
            );
        }
    }
    Ok(0)
}

fn cmd_corpus_emit(name: &str) -> Result<u8, Failure> {
    let auto = corpus::machine(name).ok_or_else(|| {
        Failure::input(format!("{name}: not a corpus machine (try `corpus list`)"))
    })?;
    print!("{}", format::serialize(&auto));
    Ok(0)
}

fn cmd_hierarchy(cli: &Cli, started: Instant) -> Result<u8, Failure> {
    let params = CheckParams {
        horizon: cli.horizon,
        window: cli.window,
        ..CheckParams::default()
    };
    let rows = hierarchy::demonstrate(&params)?;
    let inputs = serde_json::json!({ "horizon": cli.horizon, "window": cli.window });
    let separations = rows.iter().filter(|r| r.separates()).count();
    let result = serde_json::json!({
        "rows": rows,
        "separations": separations,
        "all_separate": separations == rows.len(),
    });
    print_report(&report("hierarchy", inputs, result, started));
    if cli.pretty {
        render_hierarchy(&rows);
    }
    if rows.iter().any(|r| r.outcome == Outcome::NotStabilized) {
        return Ok(4);
    }
    if separations < rows.len() {
        return Ok(3);
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn run(cli: &Cli, started: Instant) -> Result<u8, Failure> {
    match &cli.command {
        Cmd::Eval { machine, word } => cmd_eval(machine, word, cli.pretty, started),
        Cmd::Runs { machine, word } => cmd_runs(machine, word, cli.limit, cli.pretty, started),
        Cmd::Classify { machine } => cmd_classify(machine, cli.pretty, started),
        Cmd::Factorize { machine, word } => cmd_factorize(machine, word, cli.pretty, started),
        Cmd::Pump { variant } => cmd_pump(variant, cli, started),
        Cmd::Corpus { which } => match which {
            CorpusCmd::List => cmd_corpus_list(cli.pretty, started),
            CorpusCmd::Emit { name } => cmd_corpus_emit(name),
        },
        Cmd::Hierarchy => cmd_hierarchy(cli, started),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    match run(&cli, started) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
