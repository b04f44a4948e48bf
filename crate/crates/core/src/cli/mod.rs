//! Command-line front end. [`run`] does all the work and returns what a
//! process would print, so tests can drive it without spawning anything.

pub mod report;
pub mod scenario;
pub mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{
    amalgamated_series, betti_bound, closed_forms, edim_bound, fiber_series, SeriesKind,
};
use crate::oracle::{
    resolve, MonomialIdeal, QuotientPresentation, ResolveOptions, DEFAULT_CHARACTERISTIC,
    DEFAULT_MAX_INTERNAL,
};
use crate::series::DEFAULT_ORDER;
use crate::structure::{classify, depth_amalgamated, depth_rule, dim_fiber};
use report::*;
use scenario::*;

pub use verify::{compare, Relation, VerifyReport};

/// Default corpus shipped with the crate.
pub fn default_corpus() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

#[derive(Debug, Parser)]
#[command(
    name = "fiberprod",
    version,
    about = "Poincaré series, Betti bounds and depth of fiber product rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario file, or the id of a corpus scenario.
    #[arg(long, global = true)]
    scenario: Option<String>,

    /// Truncation order (overrides the scenario; default 16).
    #[arg(long, global = true)]
    order: Option<usize>,

    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Characteristic of the oracle's coefficient field.
    #[arg(long = "char", global = true)]
    characteristic: Option<u32>,

    /// Largest internal degree the oracle may scan.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_INTERNAL)]
    max_internal: u32,

    /// Oracle worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory holding the scenario corpus.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Fiber-product or amalgamated-duplication Poincaré series.
    Series,
    /// Betti-number bound through index n.
    Betti,
    /// Depth of the fiber product from numeric invariants.
    Depth,
    /// Regular / hypersurface / Cohen-Macaulay / complete intersection.
    Classify,
    /// Graded minimal free resolution of a cyclic module.
    Resolve,
    /// Compare the formula with the oracle on a same-ambient instance.
    Verify,
    /// List the corpus.
    Examples,
}

impl Command {
    fn kind(self) -> Option<Kind> {
        Some(match self {
            Command::Series => Kind::Series,
            Command::Betti => Kind::Betti,
            Command::Depth => Kind::Depth,
            Command::Classify => Kind::Classify,
            Command::Resolve => Kind::Resolve,
            Command::Verify => Kind::Verify,
            Command::Examples => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Outcome::error(&e),
    }
}

fn render<R: Serialize + Render>(cli: &Cli, report: &R) -> String {
    if cli.json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        report.render()
    }
}

fn ok<R: Serialize + Render>(cli: &Cli, report: &R) -> Result<Outcome> {
    Ok(Outcome {
        code: 0,
        stdout: render(cli, report),
        stderr: String::new(),
    })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let corpus = cli.corpus.clone().unwrap_or_else(default_corpus);
    let Some(kind) = cli.command.kind() else {
        let report = ExamplesReport {
            schema_version: SCHEMA_VERSION,
            examples: list_corpus(&corpus)?,
        };
        return ok(cli, &report);
    };
    let arg = cli
        .scenario
        .as_deref()
        .ok_or_else(|| Error::validation("--scenario", "this subcommand needs a scenario"))?;
    let scenario = Scenario::load(&locate(arg, &corpus)?, kind)?;
    match cli.command {
        Command::Series => run_series(cli, &scenario),
        Command::Betti => run_betti(cli, &scenario),
        Command::Depth => run_depth(cli, &scenario),
        Command::Classify => run_classify(cli, &scenario),
        Command::Resolve => run_resolve(cli, &scenario),
        Command::Verify => run_verify(cli, &scenario),
        Command::Examples => unreachable!(),
    }
}

fn oracle_options(cli: &Cli, payload_char: Option<u32>, max_hom: usize) -> ResolveOptions {
    ResolveOptions {
        max_hom,
        max_internal: cli.max_internal,
        characteristic: cli
            .characteristic
            .or(payload_char)
            .unwrap_or(DEFAULT_CHARACTERISTIC),
        threads: cli.threads,
    }
}

fn run_series(cli: &Cli, s: &Scenario) -> Result<Outcome> {
    let report = match SeriesPayload::from_scenario(s)? {
        SeriesPayload::Fiber(p) => {
            let order = cli.order.or(p.order).unwrap_or(DEFAULT_ORDER);
            let fs = fiber_series(&p.inputs, order)?;
            SeriesReport {
                schema_version: SCHEMA_VERSION,
                id: s.id.clone(),
                formula: "fiber".into(),
                kind: fs.kind,
                order,
                series: fs.series,
            }
        }
        SeriesPayload::Amalgamated(p) => {
            let order = cli.order.or(p.order).unwrap_or(DEFAULT_ORDER);
            SeriesReport {
                schema_version: SCHEMA_VERSION,
                id: s.id.clone(),
                formula: "amalgamated".into(),
                kind: SeriesKind::Exact,
                order,
                series: amalgamated_series(&p.p_m_over_r, &p.p_rmodi_over_r, order)?,
            }
        }
    };
    ok(cli, &report)
}

fn run_betti(cli: &Cli, s: &Scenario) -> Result<Outcome> {
    let p: BettiPayload = s.payload()?;
    let n = cli.order.unwrap_or(p.n);
    let bound = betti_bound(&p.beta_m_over_r, &p.beta_t_over_r, &p.beta_t_over_s, n)?;
    let closed = closed_forms(&p.beta_m_over_r, &p.beta_t_over_r, &p.beta_t_over_s).ok();
    if let Some(c) = &closed {
        for (i, v) in c.iter().enumerate().take(n + 1) {
            if bound.bound.values[i] != *v {
                return Err(Error::Inconsistency(format!(
                    "recurrence gives {} at index {i}, closed form gives {v}",
                    bound.bound.values[i]
                )));
            }
        }
    }
    let edim = match p.edim_r {
        Some(e) => {
            let beta1 = p
                .beta_t_over_s
                .get(1)
                .and_then(|b| u64::try_from(b).ok())
                .ok_or_else(|| {
                    Error::validation("payload.beta_T_over_S[1]", "missing or too large")
                })?;
            let b = edim_bound(e, beta1, p.is_large)?;
            Some(EdimReport {
                value: b.value,
                exact: b.exact,
            })
        }
        None => None,
    };
    let report = BettiReport {
        schema_version: SCHEMA_VERSION,
        id: s.id.clone(),
        n,
        kind: if p.is_large {
            SeriesKind::Exact
        } else {
            SeriesKind::ClaimedBound
        },
        bound: bound.bound.values.iter().map(ToString::to_string).collect(),
        a: bound.a,
        big_b: bound.big_b,
        closed_forms: closed.map(|c| c.iter().map(ToString::to_string).collect()),
        edim,
    };
    ok(cli, &report)
}

fn run_depth(cli: &Cli, s: &Scenario) -> Result<Outcome> {
    let report = match DepthPayload::from_scenario(s)? {
        DepthPayload::Fiber(d) => {
            let depth = depth_rule(&d)?;
            DepthReport {
                schema_version: SCHEMA_VERSION,
                id: s.id.clone(),
                dim: Some(dim_fiber(d.R.dim, d.S.dim)),
                depth,
            }
        }
        DepthPayload::Amalgamated(a) => {
            if a.grade_mRmodI > a.dim_RmodI {
                return Err(Error::validation(
                    "payload.grade_mRmodI",
                    format!("grade {} exceeds dim_RmodI {}", a.grade_mRmodI, a.dim_RmodI),
                ));
            }
            DepthReport {
                schema_version: SCHEMA_VERSION,
                id: s.id.clone(),
                dim: None,
                depth: depth_amalgamated(a.grade_mR, a.grade_mRmodI, a.dim_RmodI, a.gamma_in_I),
            }
        }
    };
    ok(cli, &report)
}

fn run_classify(cli: &Cli, s: &Scenario) -> Result<Outcome> {
    let p: ClassifyPayload = s.payload()?;
    let depth = depth_rule(&p.data)?;
    let structure = classify(&p.data, p.depth_fiber)?;
    ok(
        cli,
        &ClassifyReport {
            schema_version: SCHEMA_VERSION,
            id: s.id.clone(),
            depth,
            structure,
        },
    )
}

fn run_resolve(cli: &Cli, s: &Scenario) -> Result<Outcome> {
    let p: ResolvePayload = s.payload()?;
    let vars = if p.vars.is_empty() {
        return Err(Error::validation(
            "payload.vars",
            "need at least one variable",
        ));
    } else {
        p.vars.clone()
    };
    let ideal = parse_ideal("payload.ideal", &p.ideal, &vars)?;
    let module = match &p.module {
        ModuleSpec::Named(k) if k == "k" => MonomialIdeal::maximal(vars.len()),
        ModuleSpec::Named(other) => {
            return Err(Error::validation(
                "payload.module",
                format!("unknown module `{other}`; use \"k\" or a list of monomials"),
            ))
        }
        ModuleSpec::Ideal(gens) => parse_ideal("payload.module", gens, &vars)?,
    };
    let max_hom = cli.order.or(p.max_hom).unwrap_or(DEFAULT_ORDER);
    let opts = oracle_options(cli, p.characteristic, max_hom);
    let pres = QuotientPresentation::new(vars.clone(), ideal, module)?;
    let table = resolve(&pres, &opts)?;
    let report = ResolveReport::new(s.id.clone(), &pres, &opts, &table);
    let mut out = ok(cli, &report)?;
    if let Some(i) = table.complete().iter().position(|c| !c) {
        // Print what was computed, then report the budget failure.
        let e = Error::BudgetExceeded {
            hom_degree: i,
            max_internal: opts.max_internal as usize,
        };
        out.code = e.exit_code();
        out.stderr = format!("error: {e}\n");
    }
    Ok(out)
}

fn run_verify(cli: &Cli, s: &Scenario) -> Result<Outcome> {
    let p: VerifyPayload = s.payload()?;
    let order = cli.order.or(p.order).unwrap_or(DEFAULT_ORDER);
    let settings = verify::VerifySettings {
        order,
        opts: oracle_options(cli, p.characteristic, order),
    };
    let report = verify::verify(&p, s.id.clone(), &settings)?;
    let problems = report.inconsistencies();
    let mut out = ok(cli, &report)?;
    if !problems.is_empty() {
        out.code = Error::Inconsistency(String::new()).exit_code();
        out.stderr = problems
            .iter()
            .map(|p| format!("inconsistency: {p}\n"))
            .collect();
    }
    Ok(out)
}

/// Runs a corpus scenario by id with JSON output.
pub fn run_corpus(command: &str, id: &str, corpus: &Path, extra: &[&str]) -> Outcome {
    let mut argv: Vec<OsString> = vec!["fiberprod".into(), command.into(), "--json".into()];
    argv.push("--scenario".into());
    argv.push(id.into());
    argv.push("--corpus".into());
    argv.push(corpus.as_os_str().to_owned());
    argv.extend(extra.iter().map(OsString::from));
    run(argv)
}
