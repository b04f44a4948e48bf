//! Scenario files: one JSON document per computation.
//!
//! A file is either an envelope
//! `{"schema_version": 1, "id": ..., "kind": ..., "description": ..., "payload": {...}}`
//! or a bare payload, in which case the subcommand decides its kind.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fiber::{BettiSequence, PoincareInputs};
use crate::oracle::{Monomial, MonomialIdeal};
use crate::series::TruncatedSeries;
use crate::structure::FiberData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Series,
    Betti,
    Depth,
    Classify,
    Resolve,
    Verify,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Series => "series",
            Kind::Betti => "betti",
            Kind::Depth => "depth",
            Kind::Classify => "classify",
            Kind::Resolve => "resolve",
            Kind::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub id: Option<String>,
    pub kind: Kind,
    pub description: Option<String>,
    pub payload: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    #[serde(default)]
    schema_version: Option<u32>,
    #[serde(default)]
    id: Option<String>,
    kind: Kind,
    #[serde(default)]
    description: Option<String>,
    payload: Value,
}

pub const SCHEMA_VERSION: u32 = 1;

impl Scenario {
    pub fn parse(text: &str, expected: Kind) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::validation("scenario", e.to_string()))?;
        let is_envelope = value.get("kind").is_some() && value.get("payload").is_some();
        let scenario = if is_envelope {
            let env: Envelope = typed(value, "")?;
            if let Some(v) = env.schema_version {
                if v != SCHEMA_VERSION {
                    return Err(Error::validation(
                        "schema_version",
                        format!("unsupported version {v}, expected {SCHEMA_VERSION}"),
                    ));
                }
            }
            Scenario {
                id: env.id,
                kind: env.kind,
                description: env.description,
                payload: env.payload,
            }
        } else {
            Scenario {
                id: None,
                kind: expected,
                description: None,
                payload: value,
            }
        };
        if scenario.kind != expected {
            return Err(Error::validation(
                "kind",
                format!(
                    "scenario is `{}` but the subcommand is `{}`",
                    scenario.kind.name(),
                    expected.name()
                ),
            ));
        }
        Ok(scenario)
    }

    pub fn load(path: &Path, expected: Kind) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::validation("--scenario", format!("{}: {e}", path.display())))?;
        Self::parse(&text, expected)
    }

    pub fn payload<T: DeserializeOwned>(&self) -> Result<T> {
        typed(self.payload.clone(), "payload")
    }
}

/// Deserializes with the JSON path of the offending field in the error.
pub fn typed<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let field = match (prefix.is_empty(), path.as_str()) {
            (true, p) => p.to_string(),
            (false, ".") => prefix.to_string(),
            (false, p) => format!("{prefix}.{p}"),
        };
        Error::validation(field, e.into_inner().to_string())
    })
}

/// Finds a scenario by path, or by corpus id.
pub fn locate(arg: &str, corpus: &Path) -> Result<PathBuf> {
    let direct = PathBuf::from(arg);
    if direct.is_file() {
        return Ok(direct);
    }
    let by_id = corpus.join(format!("{arg}.json"));
    if by_id.is_file() {
        return Ok(by_id);
    }
    Err(Error::validation(
        "--scenario",
        format!("`{arg}` is neither a file nor a corpus id"),
    ))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub kind: Kind,
    pub description: String,
}

/// Scenario files at the top level of the corpus directory, sorted by id.
pub fn list_corpus(corpus: &Path) -> Result<Vec<CorpusEntry>> {
    let dir = std::fs::read_dir(corpus)
        .map_err(|e| Error::validation("--corpus", format!("{}: {e}", corpus.display())))?;
    let mut out = Vec::new();
    for entry in dir.flatten() {
        let path = entry.path();
        if path.extension().is_none_or(|e| e != "json") || !path.is_file() {
            continue;
        }
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::validation("--corpus", format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::validation(path.display().to_string(), e.to_string()))?;
        let env: Envelope = typed(value, &path.display().to_string())?;
        let stem = path
            .file_stem()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        out.push(CorpusEntry {
            id: env.id.unwrap_or(stem),
            kind: env.kind,
            description: env.description.unwrap_or_default(),
        });
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

/// `"x^2*y"` or an exponent array `[2, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonomialSpec {
    Text(String),
    Exponents(Vec<u32>),
}

pub fn parse_ideal(field: &str, specs: &[MonomialSpec], vars: &[String]) -> Result<MonomialIdeal> {
    let mut gens = Vec::with_capacity(specs.len());
    for (i, spec) in specs.iter().enumerate() {
        let path = format!("{field}[{i}]");
        let m = match spec {
            MonomialSpec::Text(t) => crate::oracle::monomial::parse_monomial(t, vars)
                .map_err(|e| Error::validation(&path, e.to_string()))?,
            MonomialSpec::Exponents(e) => {
                if e.len() != vars.len() {
                    return Err(Error::validation(
                        path,
                        format!("{} exponents for {} variables", e.len(), vars.len()),
                    ));
                }
                Monomial(e.clone())
            }
        };
        if m.degree() == 0 {
            return Err(Error::validation(path, "the unit ideal is not allowed"));
        }
        gens.push(m);
    }
    MonomialIdeal::new(vars.len(), gens)
}

/// Which cyclic module to resolve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    /// `"k"` for the residue field; `"T"` and `"R"` in verify scenarios.
    Named(String),
    /// Generators of `J` in `A/J`.
    Ideal(Vec<MonomialSpec>),
}

impl Default for ModuleSpec {
    fn default() -> Self {
        ModuleSpec::Named("k".into())
    }
}

fn default_vars() -> Vec<String> {
    Vec::new()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSeriesPayload {
    #[serde(flatten)]
    pub inputs: PoincareInputs,
    #[serde(default)]
    pub order: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmalgamatedPayload {
    #[serde(rename = "p_M_over_R")]
    pub p_m_over_r: TruncatedSeries,
    #[serde(rename = "p_RmodI_over_R")]
    pub p_rmodi_over_r: TruncatedSeries,
    #[serde(default)]
    pub order: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum SeriesPayload {
    Fiber(FiberSeriesPayload),
    Amalgamated(AmalgamatedPayload),
}

impl SeriesPayload {
    pub fn from_scenario(s: &Scenario) -> Result<Self> {
        if s.payload.get("p_RmodI_over_R").is_some() {
            Ok(SeriesPayload::Amalgamated(s.payload()?))
        } else {
            // flatten + deny_unknown_fields do not combine in serde, so check by hand.
            if let Some(obj) = s.payload.as_object() {
                let known = [
                    "p_M_over_R",
                    "p_T_over_R",
                    "p_T_over_S",
                    "is_large",
                    "order",
                ];
                if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
                    return Err(Error::validation(format!("payload.{k}"), "unknown field"));
                }
            }
            Ok(SeriesPayload::Fiber(typed(s.payload.clone(), "payload")?))
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiPayload {
    #[serde(rename = "beta_M_over_R")]
    pub beta_m_over_r: BettiSequence,
    #[serde(rename = "beta_T_over_R")]
    pub beta_t_over_r: BettiSequence,
    #[serde(rename = "beta_T_over_S")]
    pub beta_t_over_s: BettiSequence,
    pub n: usize,
    #[serde(default)]
    pub is_large: bool,
    #[serde(default, rename = "edim_R")]
    pub edim_r: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct AmalgamatedDepthPayload {
    pub grade_mR: u64,
    pub grade_mRmodI: u64,
    pub dim_RmodI: u64,
    #[serde(default)]
    pub gamma_in_I: bool,
}

#[derive(Debug, Clone)]
pub enum DepthPayload {
    Fiber(FiberData),
    Amalgamated(AmalgamatedDepthPayload),
}

impl DepthPayload {
    pub fn from_scenario(s: &Scenario) -> Result<Self> {
        if s.payload.get("grade_mRmodI").is_some() {
            Ok(DepthPayload::Amalgamated(s.payload()?))
        } else {
            Ok(DepthPayload::Fiber(s.payload()?))
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ClassifyPayload {
    #[serde(flatten)]
    pub data: FiberData,
    #[serde(default)]
    pub depth_fiber: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolvePayload {
    #[serde(default = "default_vars")]
    pub vars: Vec<String>,
    #[serde(default, rename = "char")]
    pub characteristic: Option<u32>,
    #[serde(default)]
    pub ideal: Vec<MonomialSpec>,
    #[serde(default)]
    pub module: ModuleSpec,
    #[serde(default)]
    pub max_hom: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyPayload {
    pub vars: Vec<String>,
    #[serde(default, rename = "char")]
    pub characteristic: Option<u32>,
    #[serde(rename = "I")]
    pub i: Vec<MonomialSpec>,
    #[serde(rename = "J")]
    pub j: Vec<MonomialSpec>,
    #[serde(default)]
    pub module: ModuleSpec,
    #[serde(default)]
    pub is_large: bool,
    /// Compare against the amalgamated-duplication formula; requires
    /// `P/I ≅ P/J` compatibly with the maps to `T`.
    #[serde(default)]
    pub amalgamated: bool,
    #[serde(default, rename = "gamma_mR_in_ker")]
    pub gamma_mr_in_ker: bool,
    #[serde(default)]
    pub order: Option<usize>,
}
