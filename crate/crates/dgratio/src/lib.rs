//! Command-line front end. [`run`] takes an argument vector and returns
//! the exit code and output, so the binary is a thin wrapper and tests can
//! drive every subcommand in-process.
//!
//! Exit codes: 0 success, 1 a proven formula or reference value disagrees
//! with the engines, 2 usage or parse error, 3 no exact answer within the
//! budget (bounds are still printed), 4 resource cap.

pub mod args;
pub mod fixtures;
pub mod json;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::Parser;
use dgratio_core::registry::{self, matching_families, Agreement, ClosedForm, FormulaVerdict, Relation, Severity};
use dgratio_core::stategraph::{self, CycleWitness};
use dgratio_core::{
    compute, expand_blocks, parse_block_notation, verify_periodic_independent, BlockList, Budget, DistanceSet, Error,
    Interrupt, Method, MethodUsed, RatioReport, Rational, Status, Verdict,
};
use rayon::prelude::*;
use serde::Serialize;

use args::{BudgetArgs, Cli, Command};
use fixtures::Comparison;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INEXACT: u8 = 3;
pub const EXIT_CAP: u8 = 4;

pub const BUDGET_ENV: &str = "DGRATIO_BUDGET";

#[derive(Debug, Default)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Stops long searches at a wall-clock deadline.
pub struct Deadline(Instant);

impl Deadline {
    pub fn after(secs: f64) -> Deadline {
        Deadline(Instant::now() + Duration::from_secs_f64(secs.max(0.0)))
    }
}

impl Interrupt for Deadline {
    fn interrupted(&self) -> bool {
        Instant::now() >= self.0
    }
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap { .. } => EXIT_CAP,
        Error::BudgetExhausted | Error::Inexact { .. } => EXIT_INEXACT,
        _ => EXIT_USAGE,
    }
}

fn node_budget(b: &BudgetArgs) -> Result<u64, Error> {
    if let Some(n) = b.budget {
        return Ok(n);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => {
            v.trim().parse().map_err(|_| Error::Parameter(format!("{BUDGET_ENV} must be a node count, got `{v}`")))
        }
        Err(_) => Ok(Budget::DEFAULT_NODES),
    }
}

/// A node budget plus an optional deadline that lives as long as the
/// command.
struct Limits {
    nodes: u64,
    timeout: Option<f64>,
}

impl Limits {
    fn new(b: &BudgetArgs) -> Result<Limits, Error> {
        Ok(Limits { nodes: node_budget(b)?, timeout: b.timeout })
    }

    /// A fresh deadline per computation.
    fn deadline(&self) -> Option<Deadline> {
        self.timeout.map(Deadline::after)
    }

    fn budget<'a>(&self, deadline: &'a Option<Deadline>) -> Budget<'a> {
        Budget { max_nodes: self.nodes, interrupt: deadline.as_ref().map(|d| d as &dyn Interrupt) }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stderr: text, ..Default::default() }
            } else {
                Outcome { code: EXIT_OK, stdout: text, ..Default::default() }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut out = Out { json: cli.json, echo, outcome: Outcome::default() };
    if let Err(e) = dispatch(&cli.command, &mut out) {
        out.outcome.code = error_code(&e);
        let _ = writeln!(out.outcome.stderr, "error: {e}");
    }
    out.outcome
}

struct Out {
    json: bool,
    echo: Vec<String>,
    outcome: Outcome,
}

impl Out {
    fn emit<T: Serialize>(&mut self, result: T) {
        let env = json::Envelope { schema_version: json::SCHEMA_VERSION, command: self.echo.clone(), result };
        self.outcome.stdout = serde_json::to_string_pretty(&env).expect("serializable") + "\n";
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.outcome.stdout.push_str(text.as_ref());
        self.outcome.stdout.push('\n');
    }

    fn note(&mut self, text: impl AsRef<str>) {
        self.outcome.stderr.push_str(text.as_ref());
        self.outcome.stderr.push('\n');
    }
}

fn dispatch(cmd: &Command, out: &mut Out) -> Result<(), Error> {
    match cmd {
        Command::Compute(a) => cmd_compute(&a.set.set, a.method.into(), &Limits::new(&a.budget)?, out),
        Command::Blocks(a) => cmd_blocks(&a.set.set, &a.blocks, out),
        Command::Verify(a) => {
            let fixed: Vec<(&str, u64)> = a.params.iter().map(|(n, v)| (n.as_str(), *v)).collect();
            cmd_verify(&a.family, a.range.clone(), &fixed, &Limits::new(&a.budget)?, out)
        }
        Command::Table(a) => cmd_table(a, out),
        Command::Families => cmd_families(out),
        Command::Domination(a) => {
            let (d, w) = stategraph::min_dominating_density(&a.set)?;
            cycle_result(out, "dominating density", &a.set, &d, &w)
        }
        Command::Idcode(a) => {
            let (d, w) = stategraph::min_identifying_density(&a.set.set, a.r)?;
            cycle_result(out, &format!("{}-identifying code density", a.r), &a.set.set, &d, &w)
        }
        Command::Coloring(a) => cmd_coloring(&a.set.set, a.k, out),
        Command::ChiF(a) => cmd_chi_f(&a.set, out),
    }
}

// ---------------------------------------------------------------------------
// compute

/// Lookup-only report for `--budget 0`: the catalog value, with the trivial
/// bounds `1/(max S + 1) ≤ ᾱ ≤ 1/2` raised by the family's witness.
fn registry_only(s: &DistanceSet, c: &ClosedForm) -> RatioReport {
    let mut lower_witness = BlockList::new(vec![s.max_element() + 1]).expect("valid");
    if let Some(w) = registry::check_witness(c.family, &c.params).filter(|w| w.consistent) {
        let d = dgratio_core::normalize(s).divisor;
        let list = expand_blocks(&w.blocks).expect("checked").scaled(d);
        if verify_periodic_independent(&list, s).is_independent() {
            lower_witness = list;
        }
    }
    RatioReport {
        set: s.clone(),
        status: Status::RegistryOnly,
        value: Some(c.prediction.value.clone()),
        lower: lower_witness.density(),
        upper: Rational::new(1, 2),
        lower_witness,
        upper_witness_n: None,
        method: MethodUsed::Shortcut,
        nodes: 0,
        states: None,
    }
}

fn cmd_compute(s: &DistanceSet, method: Method, limits: &Limits, out: &mut Out) -> Result<(), Error> {
    let known = matching_families(s);
    let exact_form = known.iter().find(|c| c.prediction.relation == Relation::Equal);
    let deadline = limits.deadline();
    let mut notes = Vec::new();
    let report = match exact_form {
        Some(c) if limits.nodes == 0 => {
            notes.push(format!("budget 0: value taken from family `{}`, not computed", c.family.id));
            registry_only(s, c)
        }
        _ => {
            let method = if limits.nodes == 0 { Method::Search } else { method };
            compute(s, method, limits.budget(&deadline))?
        }
    };
    if report.method == MethodUsed::Shortcut && report.status == Status::Exact {
        notes.push("every element of S/gcd(S) is odd: answered by the shortcut, no engine run".into());
    }
    out.outcome.code = match report.status {
        Status::Exact => EXIT_OK,
        _ => EXIT_INEXACT,
    };
    if out.json {
        out.emit(json::RatioDto::new(&report, notes, &known));
        return Ok(());
    }
    match (&report.status, &report.value) {
        (Status::Exact, Some(v)) => out.line(format!("alpha-bar = {v} (exact)")),
        (Status::RegistryOnly, Some(v)) => out.line(format!("alpha-bar = {v} (registry only, not computed)")),
        _ => out.line(format!("alpha-bar in [{}, {}] (bounded: budget exhausted)", report.lower, report.upper)),
    }
    out.line(format!("set: {}", report.set));
    out.line(format!("witness: {} (density {})", report.lower_witness, report.lower));
    if let Some(m) = report.upper_witness_n {
        out.line(format!("upper bound from alpha([{m}])/{m}"));
    }
    let mut method_line = format!("method: {}", report.method.as_str());
    if let Some(n) = report.states {
        let _ = write!(method_line, ", {n} states");
    }
    if report.nodes > 0 {
        let _ = write!(method_line, ", {} search nodes", report.nodes);
    }
    out.line(method_line);
    for c in &known {
        out.line(format!(
            "known: {} ({}) {} alpha-bar {} {}",
            c.family.id,
            c.family.kind.as_str(),
            params_text(&c.named_params()),
            c.prediction.relation.symbol(),
            c.prediction.value
        ));
    }
    for n in notes {
        out.line(format!("note: {n}"));
    }
    Ok(())
}

fn params_text(p: &[(&str, u64)]) -> String {
    p.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------------
// blocks

fn cmd_blocks(s: &DistanceSet, text: &str, out: &mut Out) -> Result<(), Error> {
    let bs = parse_block_notation(text)?;
    let list = expand_blocks(&bs)?;
    let verdict = verify_periodic_independent(&list, s);
    let density = list.density();
    let violation = match verdict {
        Verdict::Independent => None,
        Verdict::Violation { first, second, distance } => Some([first, second, distance as u64]),
    };
    if out.json {
        out.emit(json::BlocksDto {
            set: json::set_elems(s),
            blocks: bs.to_string(),
            period: list.period(),
            count: list.count(),
            density: json::frac(&density),
            independent: violation.is_none(),
            violation,
        });
    } else {
        match violation {
            None => out.line(format!("independent; density {density}")),
            Some([x, y, d]) => out.line(format!("not independent: {x} and {y} differ by {d}; density {density}")),
        }
    }
    if violation.is_some() {
        out.outcome.code = EXIT_MISMATCH;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(
    id: &str,
    range: std::ops::RangeInclusive<u64>,
    fixed: &[(&str, u64)],
    limits: &Limits,
    out: &mut Out,
) -> Result<(), Error> {
    let family = registry::find_family(id)?;
    let base = family.params_with(fixed)?;
    let points: Vec<u64> = range.collect();
    // Points are independent; `collect` keeps them in sweep order.
    let verdicts: Vec<FormulaVerdict> = points
        .par_iter()
        .map(|&x| {
            let mut params = base.clone();
            params[family.sweep] = x;
            let deadline = limits.deadline();
            registry::verify_point(family, &params, limits.budget(&deadline))
        })
        .collect::<Result<_, _>>()?;
    let count = |f: &dyn Fn(&FormulaVerdict) -> bool| verdicts.iter().filter(|v| f(v)).count();
    let skipped = count(&|v| v.skipped.is_some());
    let matches = count(&|v| v.agreement == Agreement::Match);
    let mismatches = count(&|v| v.agreement == Agreement::Mismatch);
    let unresolved = count(&|v| v.agreement == Agreement::Unresolved) - skipped;
    let failures = count(&|v| v.severity == Some(Severity::Failure));
    let findings = count(&|v| v.severity == Some(Severity::Finding));
    out.outcome.code = if failures > 0 {
        EXIT_MISMATCH
    } else if unresolved > 0 {
        EXIT_INEXACT
    } else {
        EXIT_OK
    };
    if out.json {
        out.emit(json::VerifyDto {
            family: family.id,
            kind: family.kind.as_str(),
            verdicts: verdicts.iter().map(Into::into).collect(),
            matches,
            mismatches,
            unresolved,
            skipped,
            failures,
            findings,
        });
        return Ok(());
    }
    out.line(format!("family {} ({}): {}", family.id, family.kind.as_str(), family.rule_text));
    for v in &verdicts {
        let mut line = format!("{:<14}", params_text(&v.params));
        if let Some(s) = &v.set {
            let _ = write!(line, " {:<16}", s.to_string());
        }
        if let Some(why) = v.skipped {
            let _ = write!(line, " no prediction ({})", why.as_str());
            out.line(line);
            continue;
        }
        let pred = v.prediction.as_ref().expect("not skipped");
        let got = match (&v.computed, &v.lower, &v.upper) {
            (Some(c), _, _) => c.to_string(),
            (None, Some(l), Some(u)) => format!("[{l}, {u}]"),
            _ => v.error.clone().unwrap_or_else(|| "-".into()),
        };
        let _ = write!(line, " predicted {pred:<10} computed {got:<12} {}", v.agreement.as_str());
        if let Some(w) = &v.witness {
            let state = if w.consistent {
                "ok"
            } else if w.independent {
                "wrong density"
            } else {
                "NOT independent"
            };
            let _ = write!(line, "  witness {} ({state})", w.blocks);
        }
        if let Some(sev) = v.severity {
            let _ = write!(line, "  [{}]", sev.as_str());
        }
        out.line(line);
    }
    out.line(format!(
        "{matches} match, {mismatches} mismatch, {unresolved} unresolved, {skipped} skipped; {failures} failures, {findings} findings"
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// table

pub const TABLE_HEADER: [&str; 11] = [
    "k",
    "i",
    "set",
    "status",
    "value_num",
    "value_den",
    "lower_num",
    "lower_den",
    "upper_num",
    "upper_den",
    "witness_blocks",
];

fn num_den(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

fn cmd_table(a: &args::TableArgs, out: &mut Out) -> Result<(), Error> {
    let limits = Limits::new(&a.budget)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Parameter(format!("csv: {e}"));
    w.write_record(TABLE_HEADER).map_err(csv_err)?;
    let mut summary = json::TableSummary {
        rows: 0,
        exact: 0,
        lower_bound: 0,
        inconclusive: 0,
        fixture_agree: 0,
        fixture_disagree: Vec::new(),
        fixture_open: 0,
        out: a.out.as_ref().map(|p| p.display().to_string()),
    };
    let cells: Vec<(u64, u64)> = a.k.clone().flat_map(|k| a.i.clone().map(move |i| (k, i))).collect();
    // Cells are computed in parallel; `collect` keeps row-major order.
    let rows = cells
        .par_iter()
        .map(|&(k, i)| {
            let s = DistanceSet::from_signed([1, 1 + k as i64, 1 + k as i64 + i as i64])?;
            let deadline = limits.deadline();
            match compute(&s, Method::Auto, limits.budget(&deadline)) {
                Ok(r) => Ok((k, i, s, Some(r))),
                Err(Error::ResourceCap { .. }) => Ok((k, i, s, None)),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>, Error>>()?;
    for (k, i, s, row) in rows {
        summary.rows += 1;
        let set_text = s.to_string();
        let mut rec: Vec<String> = vec![k.to_string(), i.to_string(), set_text];
        match &row {
            Some(r) => {
                let status = if r.status == Status::Exact {
                    summary.exact += 1;
                    "exact"
                } else {
                    summary.lower_bound += 1;
                    "lower_bound"
                };
                rec.push(status.into());
                match &r.value {
                    Some(v) => rec.extend(num_den(v)),
                    None => rec.extend([String::new(), String::new()]),
                }
                rec.extend(num_den(&r.lower));
                rec.extend(num_den(&r.upper));
                rec.push(r.lower_witness.to_string());
                if let Some(cell) = fixtures::cell(k, i) {
                    match fixtures::compare(cell, &r.lower, &r.upper) {
                        Comparison::Agrees => summary.fixture_agree += 1,
                        Comparison::Disagrees => summary.fixture_disagree.push([k, i]),
                        Comparison::Open => summary.fixture_open += 1,
                    }
                }
            }
            None => {
                summary.inconclusive += 1;
                rec.push("inconclusive".into());
                rec.extend(std::iter::repeat_n(String::new(), 7));
            }
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parameter(format!("csv: {e}")))?;
    let text = String::from_utf8(bytes).expect("csv output is utf-8");
    match &a.out {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display())))?,
        None if !out.json => out.outcome.stdout.push_str(&text),
        None => {}
    }
    if !summary.fixture_disagree.is_empty() {
        out.outcome.code = EXIT_MISMATCH;
    }
    let msg = format!(
        "{} rows: {} exact, {} lower_bound, {} inconclusive; reference table: {} agree, {} disagree, {} open",
        summary.rows,
        summary.exact,
        summary.lower_bound,
        summary.inconclusive,
        summary.fixture_agree,
        summary.fixture_disagree.len(),
        summary.fixture_open
    );
    if out.json {
        out.emit(summary);
    } else {
        out.note(msg);
        for [k, i] in &summary.fixture_disagree {
            out.note(format!("disagrees with reference table: k={k} i={i}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// families, stategraph problems

fn cmd_families(out: &mut Out) -> Result<(), Error> {
    let fams = registry::list_families();
    if out.json {
        out.emit(fams.iter().map(json::FamilyDto::from).collect::<Vec<_>>());
        return Ok(());
    }
    for f in fams {
        let params: Vec<String> = f.params.iter().map(|p| format!("{}≥{}", p.name, p.min)).collect();
        out.line(format!("{:<16} {:<11} [{}] {}", f.id, f.kind.as_str(), params.join(", "), f.domain));
        out.line(format!("{:<16} {:<11} {} — {}", "", "", f.rule_text, f.source));
    }
    Ok(())
}

fn cycle_result(out: &mut Out, what: &str, s: &DistanceSet, d: &Rational, w: &CycleWitness) -> Result<(), Error> {
    if out.json {
        out.emit(json::CycleDto::new(s, w, true));
    } else {
        out.line(format!("{what} = {d}"));
        out.line(format!("period {}: {}", w.period(), json::pattern_string(&w.pattern)));
        if let Some(b) = w.period_set() {
            out.line(format!("blocks: {b}"));
        }
    }
    Ok(())
}

fn cmd_coloring(s: &DistanceSet, k: u32, out: &mut Out) -> Result<(), Error> {
    let found = stategraph::periodic_coloring(s, k)?;
    if out.json {
        #[derive(Serialize)]
        struct ColoringDto {
            set: Vec<u32>,
            k: u32,
            colorable: bool,
            coloring: Option<json::CycleDto>,
        }
        out.emit(ColoringDto {
            set: json::set_elems(s),
            k,
            colorable: found.is_some(),
            coloring: found.as_ref().map(|w| json::CycleDto::new(s, w, false)),
        });
    } else {
        match &found {
            Some(w) => {
                out.line(format!("{k}-colorable; period {}", w.period()));
                out.line(format!("coloring: {}", json::pattern_string(&w.pattern)));
            }
            None => out.line(format!("no proper {k}-coloring of G({s})")),
        }
    }
    Ok(())
}

fn cmd_chi_f(s: &DistanceSet, out: &mut Out) -> Result<(), Error> {
    let x = stategraph::fractional_chromatic(s)?;
    if out.json {
        #[derive(Serialize)]
        struct ChiDto {
            set: Vec<u32>,
            chi_f: String,
        }
        out.emit(ChiDto { set: json::set_elems(s), chi_f: json::frac(&x) });
    } else {
        out.line(x.to_string());
    }
    Ok(())
}
