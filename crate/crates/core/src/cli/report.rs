//! Output documents and their plain-text rendering.
//!
//! Every report carries `schema_version`, writes integers as decimal strings
//! and can be read back with [`parse_output`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::scenario::CorpusEntry;
use super::verify::VerifyReport;
use crate::error::{Error, Result};
use crate::fiber::SeriesKind;
use crate::json;
use crate::oracle::{GradedBettiTable, QuotientPresentation, ResolveOptions};
use crate::series::TruncatedSeries;
use crate::structure::{DepthResult, StructureReport};

pub trait Render {
    fn render(&self) -> String;
}

fn header(out: &mut String, title: &str, id: &Option<String>) {
    match id {
        Some(id) => writeln!(out, "{title} [{id}]").unwrap(),
        None => writeln!(out, "{title}").unwrap(),
    }
}

fn kind_name(k: SeriesKind) -> &'static str {
    match k {
        SeriesKind::Exact => "exact",
        SeriesKind::ClaimedBound => "claimed bound",
    }
}

fn coefficient_table(out: &mut String, rows: &[(&str, &TruncatedSeries)]) {
    let len = rows
        .iter()
        .map(|(_, s)| s.coeffs().len())
        .max()
        .unwrap_or(0);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(_, s)| {
            (0..len)
                .map(|i| s.coeff(i).map_or(String::new(), ToString::to_string))
                .collect()
        })
        .collect();
    let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max(1);
    let widths: Vec<usize> = (0..len)
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].len())
                .max()
                .unwrap_or(0)
                .max(i.to_string().len())
        })
        .collect();
    write!(out, "{:>label_w$}", "i").unwrap();
    for (i, w) in widths.iter().enumerate() {
        write!(out, " {i:>w$}").unwrap();
    }
    out.push('\n');
    for ((label, _), row) in rows.iter().zip(&cells) {
        write!(out, "{label:>label_w$}").unwrap();
        for (c, w) in row.iter().zip(&widths) {
            write!(out, " {c:>w$}").unwrap();
        }
        out.push('\n');
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesReport {
    pub schema_version: u32,
    #[serde(default)]
    pub id: Option<String>,
    pub formula: String,
    pub kind: SeriesKind,
    #[serde(with = "json::usize_str")]
    pub order: usize,
    pub series: TruncatedSeries,
}

impl Render for SeriesReport {
    fn render(&self) -> String {
        let mut out = String::new();
        header(
            &mut out,
            &format!("{} series ({})", self.formula, kind_name(self.kind)),
            &self.id,
        );
        coefficient_table(&mut out, &[("P", &self.series)]);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdimReport {
    #[serde(with = "json::u64_str")]
    pub value: u64,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiReport {
    pub schema_version: u32,
    #[serde(default)]
    pub id: Option<String>,
    #[serde(with = "json::usize_str")]
    pub n: usize,
    pub kind: SeriesKind,
    pub bound: Vec<String>,
    pub a: TruncatedSeries,
    #[serde(rename = "B")]
    pub big_b: TruncatedSeries,
    #[serde(default)]
    pub closed_forms: Option<Vec<String>>,
    #[serde(default)]
    pub edim: Option<EdimReport>,
}

impl Render for BettiReport {
    fn render(&self) -> String {
        let mut out = String::new();
        header(
            &mut out,
            &format!(
                "Betti numbers through index {} ({})",
                self.n,
                kind_name(self.kind)
            ),
            &self.id,
        );
        let bound = TruncatedSeries::new(
            self.bound
                .iter()
                .map(|s| s.parse().expect("decimal"))
                .collect(),
        );
        coefficient_table(
            &mut out,
            &[("beta", &bound), ("a", &self.a), ("B", &self.big_b)],
        );
        if let Some(c) = &self.closed_forms {
            writeln!(out, "closed forms (0..2): {}", c.join(", ")).unwrap();
        }
        if let Some(e) = &self.edim {
            let rel = if e.exact { "=" } else { ">=" };
            writeln!(out, "edim {rel} {}", e.value).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DepthReport {
    pub schema_version: u32,
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default, with = "json::opt_u64_str")]
    pub dim: Option<u64>,
    pub depth: DepthResult,
}

impl Render for DepthReport {
    fn render(&self) -> String {
        let mut out = String::new();
        header(&mut out, "depth", &self.id);
        if let Some(d) = self.dim {
            writeln!(out, "dim = {d}").unwrap();
        }
        writeln!(out, "{}", self.depth).unwrap();
        out
    }
}

fn structure_lines(out: &mut String, s: &StructureReport) {
    writeln!(out, "dim = {}", s.dim_fiber).unwrap();
    for (name, p) in s.entries() {
        writeln!(
            out,
            "{name:<22} {:<8} {:<8} {}",
            p.value.to_string(),
            p.direction.to_string(),
            p.rule
        )
        .unwrap();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyReport {
    pub schema_version: u32,
    #[serde(default)]
    pub id: Option<String>,
    pub depth: DepthResult,
    pub structure: StructureReport,
}

impl Render for ClassifyReport {
    fn render(&self) -> String {
        let mut out = String::new();
        header(&mut out, "structure", &self.id);
        writeln!(out, "{}", self.depth).unwrap();
        structure_lines(&mut out, &self.structure);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolveReport {
    pub schema_version: u32,
    #[serde(default)]
    pub id: Option<String>,
    pub vars: Vec<String>,
    pub ideal: String,
    pub module: String,
    #[serde(with = "json::u64_str")]
    pub characteristic: u64,
    #[serde(with = "json::u64_str")]
    pub max_internal: u64,
    /// `[i, j, β_{i,j}]` for every nonzero entry.
    pub betti: Vec<[String; 3]>,
    pub total: Vec<String>,
    pub complete: Vec<bool>,
}

impl ResolveReport {
    pub fn new(
        id: Option<String>,
        pres: &QuotientPresentation,
        opts: &ResolveOptions,
        table: &GradedBettiTable,
    ) -> Self {
        ResolveReport {
            schema_version: super::scenario::SCHEMA_VERSION,
            id,
            vars: pres.vars().to_vec(),
            ideal: pres.ideal().display(pres.vars()).to_string(),
            module: pres.module_ideal().display(pres.vars()).to_string(),
            characteristic: opts.characteristic as u64,
            max_internal: table.max_internal() as u64,
            betti: table
                .entries()
                .map(|(i, j, c)| [i.to_string(), j.to_string(), c.to_string()])
                .collect(),
            total: table.totals().iter().map(ToString::to_string).collect(),
            complete: table.complete().to_vec(),
        }
    }
}

impl Render for ResolveReport {
    fn render(&self) -> String {
        let mut out = String::new();
        header(
            &mut out,
            &format!("resolution of P/{} over P/{}", self.module, self.ideal),
            &self.id,
        );
        let entries: Vec<(usize, usize, String)> = self
            .betti
            .iter()
            .map(|[i, j, c]| (i.parse().unwrap(), j.parse().unwrap(), c.clone()))
            .collect();
        let cols = self.total.len();
        let rows = entries.iter().map(|(i, j, _)| j - i).max().unwrap_or(0) + 1;
        let mut grid = vec![vec![String::from("."); cols]; rows];
        for (i, j, c) in entries {
            grid[j - i][i] = c;
        }
        let mark: Vec<String> = self
            .complete
            .iter()
            .map(|&c| if c { "" } else { "?" }.to_string())
            .collect();
        let width = |i: usize| {
            grid.iter()
                .map(|r| r[i].len())
                .chain([self.total[i].len() + mark[i].len(), i.to_string().len()])
                .max()
                .unwrap_or(1)
        };
        let widths: Vec<usize> = (0..cols).map(width).collect();
        let label_w = (rows - 1).to_string().len().max("total:".len());
        write!(out, "{:>label_w$}", "").unwrap();
        for (i, w) in widths.iter().enumerate() {
            write!(out, " {i:>w$}").unwrap();
        }
        out.push('\n');
        write!(out, "{:>label_w$}", "total:").unwrap();
        for (i, w) in widths.iter().enumerate() {
            write!(out, " {:>w$}", format!("{}{}", self.total[i], mark[i])).unwrap();
        }
        out.push('\n');
        for (r, row) in grid.iter().enumerate() {
            write!(out, "{:>label_w$}", format!("{r}:")).unwrap();
            for (c, w) in row.iter().zip(&widths) {
                write!(out, " {c:>w$}").unwrap();
            }
            out.push('\n');
        }
        if self.complete.iter().any(|c| !c) {
            writeln!(
                out,
                "? = incomplete within max_internal {}",
                self.max_internal
            )
            .unwrap();
        }
        out
    }
}

impl Render for VerifyReport {
    fn render(&self) -> String {
        let mut out = String::new();
        header(
            &mut out,
            &format!("verify {} over P/{}", self.module, self.fiber.ideal),
            &self.id,
        );
        writeln!(
            out,
            "R = P/{}  S = P/{}  T = P/{}",
            self.r.ideal, self.s.ideal, self.t.ideal
        )
        .unwrap();
        coefficient_table(
            &mut out,
            &[
                ("P^R_M", &self.inputs.p_m_over_r),
                ("P^R_T", &self.inputs.p_t_over_r),
                ("P^S_T", &self.inputs.p_t_over_s),
                ("formula", &self.formula_series),
                ("oracle", &self.oracle_series),
            ],
        );
        write!(
            out,
            "relation: {} ({})",
            self.relation.name(),
            kind_name(self.formula_kind)
        )
        .unwrap();
        if let Some(i) = self.first_divergence {
            write!(out, ", first divergence at t^{i}").unwrap();
        }
        out.push('\n');
        writeln!(
            out,
            "fiber: dim {} depth {} edim {}; {}, oracle {}",
            self.fiber.dim,
            self.fiber.depth,
            self.fiber.edim,
            self.depth_check.predicted,
            self.depth_check.oracle
        )
        .unwrap();
        structure_lines(&mut out, &self.structure);
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExamplesReport {
    pub schema_version: u32,
    pub examples: Vec<CorpusEntry>,
}

impl Render for ExamplesReport {
    fn render(&self) -> String {
        let w = self.examples.iter().map(|e| e.id.len()).max().unwrap_or(0);
        self.examples
            .iter()
            .map(|e| format!("{:<w$}  {:<8}  {}\n", e.id, e.kind.name(), e.description))
            .collect()
    }
}

/// Parses a subcommand's JSON output back into its report type, rejecting
/// unknown fields and wrong schema versions.
pub fn parse_output(command: &str, text: &str) -> Result<()> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::validation("output", e.to_string()))?;
    let version = value.get("schema_version").and_then(|v| v.as_u64());
    if version != Some(super::scenario::SCHEMA_VERSION as u64) {
        return Err(Error::validation(
            "output.schema_version",
            format!("got {version:?}"),
        ));
    }
    use super::scenario::typed;
    match command {
        "series" => typed::<SeriesReport>(value, "output").map(drop),
        "betti" => typed::<BettiReport>(value, "output").map(drop),
        "depth" => typed::<DepthReport>(value, "output").map(drop),
        "classify" => typed::<ClassifyReport>(value, "output").map(drop),
        "resolve" => typed::<ResolveReport>(value, "output").map(drop),
        "verify" => typed::<VerifyReport>(value, "output").map(drop),
        "examples" => typed::<ExamplesReport>(value, "output").map(drop),
        other => Err(Error::validation(
            "command",
            format!("unknown command `{other}`"),
        )),
    }
}
