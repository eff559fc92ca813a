//! The `ringlab` command line: reads a ring spec, runs one command and
//! renders the result as text or as a JSON report.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use ringlab::classify::{self, ClassReport};
use ringlab::expr;
use ringlab::factorize::{self, Certificate, FactorClass};
use ringlab::spec::{parse_spec, RingSpec};
use ringlab::verify::{self, CheckResult, CorpusEntry, Verdict};
use ringlab::{Error, Ideal, Limits, ModuleSpec, RingTable};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ringlab", version, about = "Ideal lattices, n-OA ideals and factorizations in finite commutative rings")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = Limits::default().max_ring_size)]
    max_ring_size: usize,
    #[arg(long, global = true, default_value_t = Limits::default().tuple_budget)]
    tuple_budget: u64,
    #[arg(long, global = true, default_value_t = Limits::default().max_ideals)]
    max_ideals: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Oa,
    Prime,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ring summary: size, locality, units, maximal ideals, nilradical.
    Info { spec: PathBuf },
    /// Full ideal lattice with canonical generators.
    Ideals { spec: PathBuf },
    /// Prime, n-absorbing and n-OA status of one ideal.
    CheckIdeal {
        spec: PathBuf,
        /// Comma-separated generator expressions.
        #[arg(long)]
        gens: Option<String>,
        /// Named ideal from the spec document.
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Factor an ideal into n-OA or prime ideals.
    Factor {
        spec: PathBuf,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Mode::Oa)]
        mode: Mode,
        /// Replay a certificate written by `factor --json` instead of searching.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// n-OAF verdicts for n = 1..max-n and the least such n.
    Classify {
        spec: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
    },
    /// Run the structural checks over a corpus.
    Verify {
        /// `default` or a JSON file holding a list of corpus entries.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
    },
    /// Reproduce the two worked examples.
    PaperExamples,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Spec(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuard { .. } | Error::LatticeGuard { .. } | Error::BudgetExceeded { .. } => {
                Failure::Guard(e.to_string())
            }
            Error::ImproperIdeal
            | Error::InvalidArgument(_)
            | Error::NotTrivialExtension
            | Error::RingMismatch => Failure::Usage(e.to_string()),
            _ => Failure::Spec(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// What a command produced before rendering.
struct Rendered {
    code: i32,
    text: String,
    summary: Value,
    payload: Value,
}

impl Rendered {
    fn ok(text: String, summary: Value, payload: Value) -> Self {
        Rendered {
            code: EXIT_OK,
            text,
            summary,
            payload,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let limits = Limits {
        max_ring_size: cli.max_ring_size,
        tuple_budget: cli.tuple_budget,
        max_ideals: cli.max_ideals,
    };
    match execute(&cli.command, limits) {
        Ok(r) => {
            let stdout = if cli.json {
                let report = json!({
                    "command": command_echo(&cli.command),
                    "ring_summary": r.summary,
                    "payload": r.payload,
                    "tool_version": TOOL_VERSION,
                });
                let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
                s.push('\n');
                s
            } else {
                r.text
            };
            Output {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Spec(m) => (EXIT_SPEC, m),
                Failure::Guard(m) => (EXIT_GUARD, m),
            };
            Output {
                code,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

fn command_echo(cmd: &Command) -> Value {
    let path = |p: &Path| p.display().to_string();
    match cmd {
        Command::Info { spec } => json!({"name": "info", "spec": path(spec)}),
        Command::Ideals { spec } => json!({"name": "ideals", "spec": path(spec)}),
        Command::CheckIdeal { spec, gens, ideal, n } => {
            json!({"name": "check-ideal", "spec": path(spec), "gens": gens, "ideal": ideal, "n": n})
        }
        Command::Factor {
            spec,
            gens,
            ideal,
            n,
            mode,
            replay,
        } => json!({
            "name": "factor",
            "spec": path(spec),
            "gens": gens,
            "ideal": ideal,
            "n": n,
            "mode": match mode { Mode::Oa => "oa", Mode::Prime => "prime" },
            "replay": replay.as_deref().map(path),
        }),
        Command::Classify { spec, max_n } => {
            json!({"name": "classify", "spec": path(spec), "max_n": max_n})
        }
        Command::Verify { corpus, max_n } => {
            json!({"name": "verify", "corpus": corpus, "max_n": max_n})
        }
        Command::PaperExamples => json!({"name": "paper-examples"}),
    }
}

fn execute(cmd: &Command, limits: Limits) -> CliResult<Rendered> {
    match cmd {
        Command::Info { spec } => {
            let (ring, _) = load(spec, limits)?;
            cmd_info(&ring)
        }
        Command::Ideals { spec } => {
            let (ring, _) = load(spec, limits)?;
            cmd_ideals(&ring)
        }
        Command::CheckIdeal { spec, gens, ideal, n } => {
            let (ring, named) = load(spec, limits)?;
            let target = select_ideal(&ring, &named, gens.as_deref(), ideal.as_deref())?;
            cmd_check_ideal(&ring, &target, *n as usize)
        }
        Command::Factor {
            spec,
            gens,
            ideal,
            n,
            mode,
            replay,
        } => {
            let (ring, named) = load(spec, limits)?;
            match replay {
                Some(file) => cmd_replay(&ring, file),
                None => {
                    let target = select_ideal(&ring, &named, gens.as_deref(), ideal.as_deref())?;
                    let class = match mode {
                        Mode::Oa => FactorClass::NOa(*n as usize),
                        Mode::Prime => FactorClass::Prime,
                    };
                    cmd_factor(&ring, &target, class)
                }
            }
        }
        Command::Classify { spec, max_n } => {
            let (ring, _) = load(spec, limits)?;
            cmd_classify(&ring, *max_n as usize)
        }
        Command::Verify { corpus, max_n } => cmd_verify(corpus, *max_n as usize, limits),
        Command::PaperExamples => cmd_paper_examples(limits),
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Spec(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path, limits: Limits) -> CliResult<(Arc<RingTable>, BTreeMap<String, Ideal>)> {
    let doc = parse_spec(&read_file(path)?)?;
    Ok(doc.build(limits)?)
}

fn select_ideal(
    ring: &RingTable,
    named: &BTreeMap<String, Ideal>,
    gens: Option<&str>,
    name: Option<&str>,
) -> CliResult<Ideal> {
    match (gens, name) {
        (Some(g), None) => {
            let elems = expr::parse_element_list(ring, g)?;
            Ok(ring.generate_ideal(&elems))
        }
        (None, Some(n)) => named
            .get(n)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("no ideal named `{n}` in the spec"))),
        _ => Err(Failure::Usage(
            "give exactly one of --gens and --ideal".to_string(),
        )),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn labels(ring: &RingTable, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&a| ring.label(a)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct IdealDoc {
    name: String,
    size: usize,
    generators: Vec<String>,
}

fn ideal_doc(ring: &RingTable, i: &Ideal) -> IdealDoc {
    IdealDoc {
        name: ring.ideal_name(i),
        size: i.size(),
        generators: labels(ring, &ring.generators(i)),
    }
}

fn ideal_from_doc(ring: &RingTable, doc: &IdealDoc) -> CliResult<Ideal> {
    let elems = doc
        .generators
        .iter()
        .map(|g| expr::parse_element(ring, g))
        .collect::<ringlab::Result<Vec<_>>>()?;
    Ok(ring.generate_ideal(&elems))
}

fn summary(ring: &RingTable) -> (String, Value) {
    let max: Vec<String> = ring
        .maximal_ideals()
        .iter()
        .map(|m| ring.ideal_name(m))
        .collect();
    let nil = ring.ideal_name(&ring.nilradical());
    let units = ring.units().len();
    let text = format!(
        "ring: size {}, local {}, units {}\nmaximal ideals: {}\nnilradical: {}\n",
        ring.size(),
        yes_no(ring.is_local()),
        units,
        max.join(", "),
        nil
    );
    let value = json!({
        "size": ring.size(),
        "local": ring.is_local(),
        "units": units,
        "maximal_ideals": max,
        "nilradical": nil,
    });
    (text, value)
}

fn cmd_info(ring: &RingTable) -> CliResult<Rendered> {
    let (mut text, value) = summary(ring);
    let count = ring.all_ideals()?.len();
    writeln!(text, "ideals: {count}").unwrap();
    for note in ring.notes() {
        writeln!(text, "note: {note}").unwrap();
    }
    let payload = json!({"ideal_count": count, "notes": ring.notes()});
    Ok(Rendered::ok(text, value, payload))
}

fn cmd_ideals(ring: &RingTable) -> CliResult<Rendered> {
    let (mut text, value) = summary(ring);
    let lattice = ring.all_ideals()?;
    writeln!(text, "ideals ({}):", lattice.len()).unwrap();
    let mut rows = Vec::new();
    for i in lattice {
        let doc = ideal_doc(ring, i);
        let prime = ring.is_proper(i) && ring.is_prime(i)?;
        let maximal = ring.maximal_ideals().contains(i);
        let mut flags = Vec::new();
        if maximal {
            flags.push("maximal");
        } else if prime {
            flags.push("prime");
        }
        let line = format!("  {:<24} size {:<5} {}", doc.name, doc.size, flags.join(" "));
        writeln!(text, "{}", line.trim_end()).unwrap();
        rows.push(json!({
            "name": doc.name,
            "size": doc.size,
            "generators": doc.generators,
            "prime": prime,
            "maximal": maximal,
        }));
    }
    Ok(Rendered::ok(text, value, json!({"ideals": rows})))
}

fn report_value(ring: &RingTable, r: &ClassReport) -> Value {
    json!({
        "ideal": ideal_doc(ring, &r.ideal),
        "n": r.n,
        "is_prime": r.is_prime,
        "is_n_absorbing": r.is_n_absorbing,
        "is_n_oa": r.is_n_oa,
        "oracle": r.oracle,
        "oa_witness": r.oa_witness.as_ref().map(|w| labels(ring, w)),
        "absorbing_witness": r.absorbing_witness.as_ref().map(|w| labels(ring, w)),
    })
}

fn cmd_check_ideal(ring: &RingTable, target: &Ideal, n: usize) -> CliResult<Rendered> {
    let r = classify::classify_ideal(ring, target, n)?;
    let (mut text, value) = summary(ring);
    let absorbing = match r.is_n_absorbing {
        Some(b) => yes_no(b).to_string(),
        None => "unknown (budget exceeded)".to_string(),
    };
    let oracle = match r.oracle {
        classify::OaOracle::BruteForce => "brute force",
        classify::OaOracle::FastPathOnly => "fast path only, budget exceeded",
    };
    writeln!(text, "ideal: {}", ring.ideal_name(target)).unwrap();
    writeln!(text, "n: {n}").unwrap();
    writeln!(text, "prime: {}", yes_no(r.is_prime)).unwrap();
    writeln!(text, "{n}-absorbing: {absorbing}").unwrap();
    writeln!(text, "{n}-OA: {} ({oracle})", yes_no(r.is_n_oa)).unwrap();
    if let Some(w) = &r.oa_witness {
        writeln!(text, "OA witness: [{}]", labels(ring, w).join(", ")).unwrap();
    }
    if let Some(w) = &r.absorbing_witness {
        writeln!(text, "absorbing witness: [{}]", labels(ring, w).join(", ")).unwrap();
    }
    Ok(Rendered::ok(text, value, report_value(ring, &r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ClassDoc {
    Prime,
    NOa { n: usize },
}

impl From<FactorClass> for ClassDoc {
    fn from(c: FactorClass) -> Self {
        match c {
            FactorClass::Prime => ClassDoc::Prime,
            FactorClass::NOa(n) => ClassDoc::NOa { n },
        }
    }
}

impl From<ClassDoc> for FactorClass {
    fn from(c: ClassDoc) -> Self {
        match c {
            ClassDoc::Prime => FactorClass::Prime,
            ClassDoc::NOa { n } => FactorClass::NOa(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CertificateDoc {
    target: IdealDoc,
    class: ClassDoc,
    factors: Vec<IdealDoc>,
}

fn class_text(c: FactorClass) -> String {
    match c {
        FactorClass::Prime => "prime".to_string(),
        FactorClass::NOa(n) => format!("{n}-OA"),
    }
}

fn cmd_factor(ring: &RingTable, target: &Ideal, class: FactorClass) -> CliResult<Rendered> {
    if !ring.is_proper(target) {
        return Err(Error::ImproperIdeal.into());
    }
    let generators = class.generators(ring)?;
    let closure = factorize::multiplicative_closure(ring, &generators)?;
    let cert = factorize::certificate_from_closure(ring, &closure, target, class)?;
    let (mut text, value) = summary(ring);
    let name = ring.ideal_name(target);
    writeln!(text, "target: {name}").unwrap();
    writeln!(text, "class: {}", class_text(class)).unwrap();
    let proper = ring.proper_ideals()?.len();
    let payload = match &cert {
        Some(c) => {
            let names: Vec<String> = c.factors.iter().map(|f| ring.ideal_name(f)).collect();
            writeln!(text, "factors: {}", names.join(" * ")).unwrap();
            let proofs: Vec<Value> = c.proofs.iter().map(|p| report_value(ring, p)).collect();
            json!({
                "certificate": CertificateDoc {
                    target: ideal_doc(ring, target),
                    class: class.into(),
                    factors: c.factors.iter().map(|f| ideal_doc(ring, f)).collect(),
                },
                "proofs": proofs,
            })
        }
        None => {
            let witness = format!(
                "{name} is not a product of {} ideals; the {} generators reach {} of {} proper ideals",
                class_text(class),
                generators.len(),
                closure.len(),
                proper
            );
            writeln!(text, "factors: NONE").unwrap();
            writeln!(text, "witness: {witness}").unwrap();
            json!({
                "certificate": Value::Null,
                "target": ideal_doc(ring, target),
                "class": ClassDoc::from(class),
                "witness": witness,
            })
        }
    };
    Ok(Rendered::ok(text, value, payload))
}

fn cmd_replay(ring: &RingTable, file: &Path) -> CliResult<Rendered> {
    let text = read_file(file)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Spec(format!("{}: {e}", file.display())))?;
    let cert_value = value
        .get("payload")
        .and_then(|p| p.get("certificate"))
        .cloned()
        .unwrap_or(value);
    let doc: CertificateDoc = serde_json::from_value(cert_value)
        .map_err(|e| Failure::Spec(format!("{}: not a certificate: {e}", file.display())))?;
    let target = ideal_from_doc(ring, &doc.target)?;
    let factors = doc
        .factors
        .iter()
        .map(|f| ideal_from_doc(ring, f))
        .collect::<CliResult<Vec<_>>>()?;
    let names_match = ring.ideal_name(&target) == doc.target.name
        && factors
            .iter()
            .zip(&doc.factors)
            .all(|(f, d)| ring.ideal_name(f) == d.name);
    let class = FactorClass::from(doc.class);
    if factors.iter().any(|f| !ring.is_proper(f)) || !ring.is_proper(&target) {
        return Err(Error::ImproperIdeal.into());
    }
    let cert = Certificate {
        target,
        factors,
        class,
        proofs: Vec::new(),
    };
    let ok = names_match && cert.replay(ring)?;
    let (mut out, value) = summary(ring);
    writeln!(
        out,
        "replay {}: {} = {}",
        if ok { "ok" } else { "FAILED" },
        doc.target.name,
        doc.factors
            .iter()
            .map(|f| f.name.as_str())
            .collect::<Vec<_>>()
            .join(" * ")
    )
    .unwrap();
    let mut r = Rendered::ok(out, value, json!({"replay_ok": ok, "certificate": doc}));
    if !ok {
        r.code = EXIT_VERIFY;
    }
    Ok(r)
}

fn verdict_line(ring: &RingTable, n: usize, v: &ringlab::OafVerdict) -> String {
    match &v.witness {
        None => format!("n={n} YES"),
        Some(w) => format!("n={n} NO (witness {})", ring.ideal_name(w)),
    }
}

fn classify_parts(ring: &RingTable, max_n: usize) -> CliResult<(String, Value)> {
    let mut parts = Vec::new();
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let v = factorize::is_n_oaf(ring, n)?;
        parts.push(verdict_line(ring, n, &v));
        rows.push(json!({
            "n": n,
            "holds": v.holds,
            "witness": v.witness.as_ref().map(|w| ring.ideal_name(w)),
        }));
    }
    let dim = factorize::oaf_dim(ring, max_n)?;
    let dim_text = match dim {
        Some(d) => format!("oaf_dim={d}"),
        None => format!("oaf_dim>{max_n}"),
    };
    let zpi = factorize::is_general_zpi(ring)?;
    let zpi_text = match &zpi.witness {
        None => "general ZPI: YES".to_string(),
        Some(w) => format!("general ZPI: NO (witness {})", ring.ideal_name(w)),
    };
    let text = format!("{}; {dim_text}\n{zpi_text}\n", parts.join(", "));
    let value = json!({
        "max_n": max_n,
        "verdicts": rows,
        "oaf_dim": dim,
        "general_zpi": {
            "holds": zpi.holds,
            "witness": zpi.witness.as_ref().map(|w| ring.ideal_name(w)),
        },
    });
    Ok((text, value))
}

fn cmd_classify(ring: &RingTable, max_n: usize) -> CliResult<Rendered> {
    let (mut text, value) = summary(ring);
    let (body, payload) = classify_parts(ring, max_n)?;
    text.push_str(&body);
    Ok(Rendered::ok(text, value, payload))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::VacuousPass => "vacuous",
        Verdict::Fail => "FAIL",
        Verdict::Skipped => "skipped",
        Verdict::BuildError => "BUILD-ERROR",
    }
}

fn result_line(r: &CheckResult) -> String {
    let n = r.n.map(|n| n.to_string()).unwrap_or_else(|| "-".to_string());
    let mut line = format!(
        "{:<11} {:<24} {:<2} {:<28} {}",
        verdict_name(r.verdict),
        r.check,
        n,
        r.ring,
        r.detail
    );
    if let Some(w) = &r.witness {
        let mut parts = w.ideals.clone();
        parts.extend(w.elements.iter().cloned());
        if !parts.is_empty() {
            write!(line, " [witness: {}]", parts.join(", ")).unwrap();
        }
    }
    line
}

fn cmd_verify(corpus: &str, max_n: usize, limits: Limits) -> CliResult<Rendered> {
    let entries: Vec<CorpusEntry> = if corpus == "default" {
        verify::default_corpus()
    } else {
        let text = read_file(Path::new(corpus))?;
        serde_json::from_str(&text).map_err(|e| Failure::Spec(format!("{corpus}: {e}")))?
    };
    let results = verify::run_corpus(&entries, 1..=max_n, limits);
    let mut text = String::new();
    for r in &results {
        writeln!(text, "{}", result_line(r)).unwrap();
    }
    let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
    let failures = verify::failure_count(&results);
    writeln!(
        text,
        "{} checks over {} rings: {} pass, {} vacuous, {} fail, {} skipped, {} build errors",
        results.len(),
        entries.len(),
        count(Verdict::Pass),
        count(Verdict::VacuousPass),
        count(Verdict::Fail),
        count(Verdict::Skipped),
        count(Verdict::BuildError)
    )
    .unwrap();
    let payload = json!({
        "rings": entries.len(),
        "failures": failures,
        "results": results,
    });
    let mut r = Rendered::ok(text, Value::Null, payload);
    if failures > 0 {
        r.code = EXIT_VERIFY;
    }
    Ok(r)
}

fn names(ring: &RingTable, ideals: &[Ideal]) -> Vec<String> {
    ideals.iter().map(|i| ring.ideal_name(i)).collect()
}

fn two_variable_section(limits: Limits) -> CliResult<(String, Value)> {
    let ring = RingSpec::two_variable_example().build(limits)?;
    let mut t = String::new();
    writeln!(t, "== Z2[X,Y]/(X^2, XY, Y^4), basis 1, x, y, y^2, y^3").unwrap();
    let (s, summary_value) = summary(&ring);
    t.push_str(&s);
    let m = ring.maximal_ideals()[0].clone();
    let powers: Vec<Ideal> = (1..=4)
        .map(|k| ring.ideal_power(&m, k))
        .collect::<ringlab::Result<_>>()?;
    let power_names = names(&ring, &powers);
    writeln!(
        t,
        "M = {}, M^2 = {}, M^3 = {}, M^4 = {}",
        power_names[0], power_names[1], power_names[2], power_names[3]
    )
    .unwrap();

    let above: Vec<Ideal> = ring
        .all_ideals()?
        .iter()
        .filter(|i| powers[2].is_subset(i))
        .cloned()
        .collect();
    writeln!(t, "ideals containing M^3 ({}): {}", above.len(), names(&ring, &above).join(", ")).unwrap();

    let fast = classify::list_n_oa_ideals(&ring, 3)?;
    let mut brute = Vec::new();
    for i in ring.proper_ideals()? {
        if classify::is_n_oa(&ring, &i, 3)?.0 {
            brute.push(i);
        }
    }
    writeln!(t, "3-OA ideals ({}): {}", brute.len(), names(&ring, &brute).join(", ")).unwrap();
    writeln!(t, "brute force agrees with the structural test: {}", yes_no(brute == fast)).unwrap();

    let x = ring.principal_ideal(expr::parse_element(&ring, "x")?);
    let cert = factorize::find_factorization(&ring, &x, FactorClass::NOa(3))?;
    let factor_text = match &cert {
        None => "NONE".to_string(),
        Some(c) => names(&ring, &c.factors).join(" * "),
    };
    writeln!(t, "factor {} into 3-OA ideals: {factor_text}", ring.ideal_name(&x)).unwrap();

    let (body, classify_value) = classify_parts(&ring, 4)?;
    t.push_str(&body);

    let (divided, incomparable) = ring.is_divided(&powers[1])?;
    let inc = incomparable.as_ref().map(|i| ring.ideal_name(i));
    writeln!(
        t,
        "M^2 divided: {}{}",
        yes_no(divided),
        inc.as_ref()
            .map(|i| format!(" (incomparable with {i})"))
            .unwrap_or_default()
    )
    .unwrap();

    let value = json!({
        "ring_summary": summary_value,
        "powers_of_m": power_names,
        "ideals_containing_m3": names(&ring, &above),
        "three_oa_ideals": names(&ring, &brute),
        "brute_force_agrees": brute == fast,
        "factor_x_three_oa": cert.as_ref().map(|c| names(&ring, &c.factors)),
        "classify": classify_value,
        "m2_divided": divided,
        "m2_incomparable_with": inc,
    });
    Ok((t, value))
}

fn chain_section(limits: Limits) -> CliResult<(String, Value)> {
    let n = 2;
    let spec = RingSpec::trivial_extension(RingSpec::truncated_poly(2, 2), ModuleSpec::Regular);
    let ring = spec.build(limits)?;
    let mut t = String::new();
    writeln!(t, "== A = F2[X]/(X^2), R = A ∝ A, n = {n}").unwrap();
    let (s, summary_value) = summary(&ring);
    t.push_str(&s);
    let m = ring.maximal_ideals()[0].clone();
    let mn = ring.ideal_power(&m, n as u32)?;
    writeln!(
        t,
        "(M ∝ A)^{n} = {} (zero: {})",
        ring.ideal_name(&mn),
        yes_no(mn == ring.zero_ideal())
    )
    .unwrap();
    let oaf = factorize::is_n_oaf(&ring, n)?;
    writeln!(t, "{n}-OAF: {}", yes_no(oaf.holds)).unwrap();
    let mut non_oa = Vec::new();
    let proper = ring.proper_ideals()?;
    for i in &proper {
        if !classify::is_n_oa(&ring, i, n)?.0 {
            non_oa.push(i.clone());
        }
    }
    writeln!(
        t,
        "non-{n}-OA ideals ({} of {}): {}",
        non_oa.len(),
        proper.len(),
        names(&ring, &non_oa).join(", ")
    )
    .unwrap();
    let zpi = factorize::is_general_zpi(&ring)?;
    writeln!(t, "general ZPI: {}", yes_no(zpi.holds)).unwrap();
    let value = json!({
        "ring_summary": summary_value,
        "n": n,
        "m_power_n": ring.ideal_name(&mn),
        "n_oaf": oaf.holds,
        "non_n_oa_ideals": names(&ring, &non_oa),
        "proper_ideals": proper.len(),
        "general_zpi": zpi.holds,
    });
    Ok((t, value))
}

fn cmd_paper_examples(limits: Limits) -> CliResult<Rendered> {
    let (a, av) = two_variable_section(limits)?;
    let (b, bv) = chain_section(limits)?;
    let text = format!("{a}\n{b}");
    Ok(Rendered::ok(
        text,
        Value::Null,
        json!({"two_variable_example": av, "chain_idealization": bv}),
    ))
}
