//! Formula-versus-oracle harness for same-ambient fiber products.
//!
//! With `R = P/I`, `S = P/J` and `T = P/(I+J)` the fiber product is
//! `P/(I ∩ J)`. The oracle supplies `P^R_M`, `P^R_T` and `P^S_T`, the
//! formula turns them into a candidate series over the fiber product, and
//! the oracle resolves the same module over `P/(I ∩ J)` directly.

use serde::{Deserialize, Serialize};

use super::scenario::{parse_ideal, ModuleSpec, VerifyPayload};
use crate::error::{Error, Result};
use crate::fiber::{amalgamated_series, fiber_series, PoincareInputs, SeriesKind};
use crate::oracle::{
    depth_monomial, dim_monomial, edim_monomial, fiber_presentation, poincare_truncation,
    MonomialIdeal, QuotientPresentation, ResolveOptions,
};
use crate::series::TruncatedSeries;
use crate::structure::{
    classify, depth_rule, DepthKind, DepthResult, FiberData, RingInvariants, StructureReport, Tri,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Equal,
    FormulaDominates,
    OracleDominates,
    Incomparable,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Equal => "equal",
            Relation::FormulaDominates => "formula-dominates",
            Relation::OracleDominates => "oracle-dominates",
            Relation::Incomparable => "incomparable",
        }
    }
}

/// Coefficientwise comparison of two series of the same order, and the
/// first index where they differ.
pub fn compare(
    formula: &TruncatedSeries,
    oracle: &TruncatedSeries,
) -> Result<(Relation, Option<usize>)> {
    if formula.order() != oracle.order() {
        return Err(Error::OrderMismatch {
            left: formula.order(),
            right: oracle.order(),
        });
    }
    let pairs = || formula.coeffs().iter().zip(oracle.coeffs());
    let first = pairs().position(|(a, b)| a != b);
    let ge = pairs().all(|(a, b)| a >= b);
    let le = pairs().all(|(a, b)| a <= b);
    let relation = match (first, ge, le) {
        (None, _, _) => Relation::Equal,
        (Some(_), true, _) => Relation::FormulaDominates,
        (Some(_), _, true) => Relation::OracleDominates,
        _ => Relation::Incomparable,
    };
    Ok((relation, first))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleRing {
    pub ideal: String,
    #[serde(with = "crate::json::u64_str")]
    pub dim: u64,
    #[serde(with = "crate::json::u64_str")]
    pub depth: u64,
    #[serde(with = "crate::json::u64_str")]
    pub edim: u64,
}

impl OracleRing {
    fn invariants(&self) -> RingInvariants {
        RingInvariants::new(self.dim, self.depth, self.edim)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DepthCheck {
    pub predicted: DepthResult,
    #[serde(with = "crate::json::u64_str")]
    pub oracle: u64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateCheck {
    pub predicate: String,
    pub classified: Tri,
    pub rule: String,
    pub oracle: bool,
    /// An undetermined classification is never a disagreement.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub schema_version: u32,
    #[serde(default)]
    pub id: Option<String>,
    pub module: String,
    pub formula: String,
    pub formula_kind: SeriesKind,
    pub inputs: PoincareInputs,
    pub formula_series: TruncatedSeries,
    pub oracle_series: TruncatedSeries,
    pub relation: Relation,
    #[serde(with = "crate::json::opt_usize_str")]
    pub first_divergence: Option<usize>,
    #[serde(rename = "R")]
    pub r: OracleRing,
    #[serde(rename = "S")]
    pub s: OracleRing,
    #[serde(rename = "T")]
    pub t: OracleRing,
    pub fiber: OracleRing,
    pub depth_check: DepthCheck,
    pub structure: StructureReport,
    pub structure_check: Vec<PredicateCheck>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    /// Reasons to treat the report as an internal inconsistency. A claimed
    /// equality or exact depth that the oracle contradicts counts as one.
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        match compare(&self.formula_series, &self.oracle_series) {
            Ok((rel, first)) if rel == self.relation && first == self.first_divergence => {}
            _ => out.push("relation is not recomputable from the two series".to_string()),
        }
        if self.formula_kind == SeriesKind::Exact && self.relation != Relation::Equal {
            out.push(format!(
                "fiber product asserted large but relation is {} (first divergence at {})",
                self.relation.name(),
                self.first_divergence.map_or("-".into(), |i| i.to_string())
            ));
        }
        if self.depth_check.predicted.kind == DepthKind::Exact && !self.depth_check.agrees {
            out.push(format!(
                "{} but the oracle finds depth {}",
                self.depth_check.predicted, self.depth_check.oracle
            ));
        }
        out
    }
}

pub struct VerifySettings {
    pub order: usize,
    pub opts: ResolveOptions,
}

fn oracle_ring(
    vars: &[String],
    ideal: &MonomialIdeal,
    opts: &ResolveOptions,
) -> Result<OracleRing> {
    Ok(OracleRing {
        ideal: ideal.display(vars).to_string(),
        dim: dim_monomial(ideal) as u64,
        depth: depth_monomial(ideal, opts)? as u64,
        edim: edim_monomial(ideal) as u64,
    })
}

fn module_ideal(
    spec: &ModuleSpec,
    vars: &[String],
    j: &MonomialIdeal,
) -> Result<(String, MonomialIdeal)> {
    let n = vars.len();
    match spec {
        ModuleSpec::Named(name) => match name.as_str() {
            "k" => Ok(("k".into(), MonomialIdeal::maximal(n))),
            "T" => Ok(("T".into(), j.clone())),
            "R" => Ok(("R".into(), MonomialIdeal::zero(n))),
            other => Err(Error::validation(
                "payload.module",
                format!("unknown module `{other}`; use \"k\", \"T\", \"R\" or a list of monomials"),
            )),
        },
        ModuleSpec::Ideal(gens) => {
            let ideal = parse_ideal("payload.module", gens, vars)?;
            Ok((format!("P/(I + {})", ideal.display(vars)), ideal))
        }
    }
}

fn series(
    vars: &[String],
    ring: &MonomialIdeal,
    module: &MonomialIdeal,
    opts: &ResolveOptions,
) -> Result<TruncatedSeries> {
    let pres = QuotientPresentation::new(vars.to_vec(), ring.clone(), module.clone())?;
    poincare_truncation(&pres, opts)
}

pub fn verify(
    payload: &VerifyPayload,
    id: Option<String>,
    settings: &VerifySettings,
) -> Result<VerifyReport> {
    let vars = &payload.vars;
    if vars.is_empty() {
        return Err(Error::validation(
            "payload.vars",
            "need at least one variable",
        ));
    }
    if let Some(dup) = vars
        .iter()
        .enumerate()
        .find(|(i, v)| vars[..*i].contains(v))
    {
        return Err(Error::validation(
            format!("payload.vars[{}]", dup.0),
            format!("duplicate variable `{}`", dup.1),
        ));
    }
    let i = parse_ideal("payload.I", &payload.i, vars)?;
    let j = parse_ideal("payload.J", &payload.j, vars)?;
    let (fiber_ideal, t_ideal) = fiber_presentation(&i, &j)?;
    let (module_name, n_ideal) = module_ideal(&payload.module, vars, &j)?;

    let order = settings.order;
    // β_2 of T over S feeds the classifier even at tiny orders.
    let t_order = order.max(2);
    let opts = ResolveOptions {
        max_hom: order,
        ..settings.opts
    };
    let t_opts = ResolveOptions {
        max_hom: t_order,
        ..settings.opts
    };

    let p_m_r = series(vars, &i, &n_ideal, &opts)?;
    let p_t_r_full = series(vars, &i, &j, &t_opts)?;
    let p_t_s_full = series(vars, &j, &i, &t_opts)?;
    let p_t_r = p_t_r_full.truncate(order);
    let p_t_s = p_t_s_full.truncate(order);
    let oracle_series = series(vars, &fiber_ideal, &i.sum(&n_ideal), &opts)?;

    let mut notes = Vec::new();
    let inputs = PoincareInputs {
        p_m_over_r: p_m_r.clone(),
        p_t_over_r: p_t_r.clone(),
        p_t_over_s: p_t_s.clone(),
        is_large: payload.is_large || payload.amalgamated,
    };
    let (formula, formula_kind, formula_series) = if payload.amalgamated {
        if p_t_r_full != p_t_s_full {
            return Err(Error::validation(
                "payload.amalgamated",
                format!(
                    "P^R_T = {p_t_r} and P^S_T = {p_t_s} differ, so S is not a copy of R over T"
                ),
            ));
        }
        notes.push("amalgamated duplication: P^R_M / (2 - P^R_{R/I}), exact".to_string());
        (
            "amalgamated".to_string(),
            SeriesKind::Exact,
            amalgamated_series(&p_m_r, &p_t_r, order)?,
        )
    } else {
        let fs = fiber_series(&inputs, order)?;
        let note = match fs.kind {
            SeriesKind::Exact => "fiber formula P^R_M P^S_T / (P^R_T + P^S_T - P^R_T P^S_T), large: equality required",
            SeriesKind::ClaimedBound => {
                "fiber formula P^R_M P^S_T / (P^R_T + P^S_T - P^R_T P^S_T), not asserted large: relation reported, not asserted"
            }
        };
        notes.push(note.to_string());
        ("fiber".to_string(), fs.kind, fs.series)
    };
    let (relation, first_divergence) = compare(&formula_series, &oracle_series)?;

    let r = oracle_ring(vars, &i, &settings.opts)?;
    let s = oracle_ring(vars, &j, &settings.opts)?;
    let t = oracle_ring(vars, &t_ideal, &settings.opts)?;
    let fiber = oracle_ring(vars, &fiber_ideal, &settings.opts)?;

    let as_u64 = |s: &TruncatedSeries, k: usize| -> u64 {
        s.coeff(k)
            .and_then(|c| u64::try_from(c).ok())
            .unwrap_or(u64::MAX)
    };
    let t_is_residue_field = t_ideal.is_maximal();
    let data = FiberData {
        R: r.invariants(),
        S: s.invariants(),
        T: t.invariants(),
        // Same-ambient rings are graded, so the grade of the maximal ideal
        // on the ring is its depth.
        grade_mR: r.depth,
        grade_mS: s.depth,
        grade_mT: t.depth,
        beta1_T_over_S: as_u64(&p_t_s_full, 1),
        beta1_T_over_R: as_u64(&p_t_r_full, 1),
        beta2_T_over_S: as_u64(&p_t_s_full, 2),
        T_is_residue_field: t_is_residue_field,
        // Positive depth leaves no 𝔪-torsion at all.
        gamma_mR_in_ker: r.depth > 0 || payload.gamma_mr_in_ker,
        is_large: payload.is_large || payload.amalgamated,
    };
    let predicted = depth_rule(&data)?;
    notes.push(format!("depth rule {}", predicted.rule));
    let depth_check = DepthCheck {
        agrees: predicted.admits(fiber.depth),
        predicted,
        oracle: fiber.depth,
    };

    let structure = classify(&data, Some(fiber.depth))?;
    let fiber_inv = fiber.invariants();
    let observed = [
        fiber_inv.regular(),
        fiber_inv.hypersurface(),
        fiber_inv.cohen_macaulay(),
        fiber_ideal.is_complete_intersection(),
    ];
    let structure_check: Vec<PredicateCheck> = structure
        .entries()
        .iter()
        .zip(observed)
        .map(|((name, p), oracle)| PredicateCheck {
            predicate: name.to_string(),
            classified: p.value,
            rule: p.rule.clone(),
            oracle,
            consistent: p.value == Tri::Unknown || p.value == Tri::from(oracle),
        })
        .collect();
    for c in structure_check.iter().filter(|c| !c.consistent) {
        notes.push(format!(
            "{} classified {} by {} but the oracle ring has {} = {}",
            c.predicate, c.classified, c.rule, c.predicate, c.oracle
        ));
    }

    Ok(VerifyReport {
        schema_version: super::scenario::SCHEMA_VERSION,
        id,
        module: module_name,
        formula,
        formula_kind,
        inputs,
        formula_series,
        oracle_series,
        relation,
        first_divergence,
        r,
        s,
        t,
        fiber,
        depth_check,
        structure,
        structure_check,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(v)
    }

    #[test]
    fn relations() {
        assert_eq!(
            compare(&s(&[1, 2]), &s(&[1, 2])).unwrap(),
            (Relation::Equal, None)
        );
        assert_eq!(
            compare(&s(&[1, 3]), &s(&[1, 2])).unwrap(),
            (Relation::FormulaDominates, Some(1))
        );
        assert_eq!(
            compare(&s(&[1, 2, 2]), &s(&[1, 2, 5])).unwrap(),
            (Relation::OracleDominates, Some(2))
        );
        assert_eq!(
            compare(&s(&[2, 1]), &s(&[1, 2])).unwrap(),
            (Relation::Incomparable, Some(0))
        );
        assert!(compare(&s(&[1]), &s(&[1, 2])).is_err());
    }
}
