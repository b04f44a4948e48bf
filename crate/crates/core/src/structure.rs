//! Dimension, depth and structure of `R ×_T S`, plus checkers for the
//! Buchsbaum–Eisenbud–Horrocks and Total Rank bounds.
//!
//! Everything here is driven by numeric invariants that the caller supplies
//! (by hand or from the oracle). Each answer carries the identifier of the
//! rule that produced it. Rules are tried in a fixed order and the first one
//! whose hypotheses hold wins.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiber::BettiSequence;
use crate::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RingInvariants {
    pub dim: u64,
    pub depth: u64,
    pub edim: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_regular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_cohen_macaulay: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_hypersurface: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_complete_intersection: Option<bool>,
}

impl RingInvariants {
    pub fn new(dim: u64, depth: u64, edim: u64) -> Self {
        RingInvariants {
            dim,
            depth,
            edim,
            ..Default::default()
        }
    }

    pub fn regular(&self) -> bool {
        self.edim == self.dim
    }

    pub fn cohen_macaulay(&self) -> bool {
        self.depth == self.dim
    }

    pub fn hypersurface(&self) -> bool {
        self.edim - self.depth <= 1
    }

    /// Regular rings and hypersurfaces are complete intersections; otherwise
    /// only the caller's flag can say.
    pub fn complete_intersection(&self) -> Option<bool> {
        if self.regular() || self.hypersurface() {
            return Some(true);
        }
        if !self.cohen_macaulay() {
            return Some(false);
        }
        self.is_complete_intersection
    }

    pub fn validate(&self, path: &str) -> Result<()> {
        if self.depth > self.dim {
            return Err(Error::validation(
                format!("{path}.depth"),
                format!("depth {} exceeds dim {}", self.depth, self.dim),
            ));
        }
        if self.dim > self.edim {
            return Err(Error::validation(
                format!("{path}.dim"),
                format!("dim {} exceeds edim {}", self.dim, self.edim),
            ));
        }
        let flag = |name: &str, flag: Option<bool>, actual: bool| match flag {
            Some(f) if f != actual => Err(Error::validation(
                format!("{path}.{name}"),
                format!("flag says {f} but dim/depth/edim say {actual}"),
            )),
            _ => Ok(()),
        };
        flag("is_regular", self.is_regular, self.regular())?;
        flag(
            "is_cohen_macaulay",
            self.is_cohen_macaulay,
            self.cohen_macaulay(),
        )?;
        if self.is_hypersurface == Some(true) && !self.hypersurface() {
            return Err(Error::validation(
                format!("{path}.is_hypersurface"),
                "a hypersurface has edim − depth ≤ 1",
            ));
        }
        if self.is_complete_intersection == Some(false)
            && self.complete_intersection() == Some(true)
        {
            return Err(Error::validation(
                format!("{path}.is_complete_intersection"),
                "ring is regular or a hypersurface, hence a complete intersection",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct FiberData {
    pub R: RingInvariants,
    pub S: RingInvariants,
    pub T: RingInvariants,
    pub grade_mR: u64,
    pub grade_mS: u64,
    pub grade_mT: u64,
    pub beta1_T_over_S: u64,
    pub beta1_T_over_R: u64,
    #[serde(default)]
    pub beta2_T_over_S: u64,
    #[serde(default)]
    pub T_is_residue_field: bool,
    #[serde(default)]
    pub gamma_mR_in_ker: bool,
    #[serde(default)]
    pub is_large: bool,
}

impl FiberData {
    pub fn validate(&self) -> Result<()> {
        self.R.validate("R")?;
        self.S.validate("S")?;
        self.T.validate("T")?;
        for (name, grade, ring, depth) in [
            ("grade_mR", self.grade_mR, "R", self.R.depth),
            ("grade_mS", self.grade_mS, "S", self.S.depth),
            ("grade_mT", self.grade_mT, "T", self.T.depth),
        ] {
            if grade > depth {
                return Err(Error::validation(
                    name,
                    format!("grade {grade} exceeds {ring}.depth {depth}; a grade never exceeds the depth"),
                ));
            }
        }
        if self.beta1_T_over_S == 0 {
            return Err(Error::TrivialFiberProduct("beta1_T_over_S = 0".into()));
        }
        if self.beta1_T_over_R == 0 {
            return Err(Error::TrivialFiberProduct("beta1_T_over_R = 0".into()));
        }
        if self.T_is_residue_field && (self.T.dim != 0 || self.T.depth != 0) {
            return Err(Error::validation(
                "T_is_residue_field",
                "the residue field has dim = depth = 0",
            ));
        }
        Ok(())
    }
}

pub fn dim_fiber(dim_r: u64, dim_s: u64) -> u64 {
    dim_r.max(dim_s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DepthKind {
    Exact,
    LowerBound,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthResult {
    pub kind: DepthKind,
    #[serde(with = "json::opt_u64_str")]
    pub value: Option<u64>,
    pub rule: String,
}

impl DepthResult {
    fn exact(value: u64, rule: &str) -> Self {
        DepthResult {
            kind: DepthKind::Exact,
            value: Some(value),
            rule: rule.into(),
        }
    }

    /// Whether an observed depth is compatible with this prediction.
    pub fn admits(&self, depth: u64) -> bool {
        match (self.kind, self.value) {
            (DepthKind::Exact, Some(v)) => v == depth,
            (DepthKind::LowerBound, Some(v)) => depth >= v,
            _ => true,
        }
    }
}

impl fmt::Display for DepthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.value) {
            (DepthKind::Exact, Some(v)) => write!(f, "depth = {v} [{}]", self.rule),
            (DepthKind::LowerBound, Some(v)) => write!(f, "depth >= {v} [{}]", self.rule),
            _ => write!(f, "depth unknown [{}]", self.rule),
        }
    }
}

/// Depth of `R ×_T S`. Cases, first match wins:
///
/// 1. `T = k`: `min{depth R, depth S, 1}`.
/// 2. `grade(𝔪T,T) = n` with both other grades above `n`: `n + 1`.
/// 3. `grade(𝔪T,T) > 0` and `R` or `S` of depth 0: `0`.
/// 4. `dim T = 0` and `Γ_{𝔪R}(R) ⊆ ker π_R`: `min{grade(𝔪R,R), grade(𝔪S,S), 1}`,
///    except when `grade(𝔪R,R) > 0 = grade(𝔪S,S)`. That branch is not
///    certified: `k[x,y]/(xy²)` built from `R = k[x,y]/(y²)` and
///    `S = k[x,y]/(x²,xy)` has depth 1, not 0.
/// 5. Otherwise the lower bound `min{depth R, depth S, depth T + 1}`.
pub fn depth_rule(data: &FiberData) -> Result<DepthResult> {
    data.validate()?;
    let d = data;
    if d.T_is_residue_field {
        return Ok(DepthResult::exact(
            d.R.depth.min(d.S.depth).min(1),
            "Lescot",
        ));
    }
    let n = d.grade_mT;
    if d.grade_mR > n && d.grade_mS > n {
        return Ok(DepthResult::exact(n + 1, "Thm-4(i)"));
    }
    if n > 0 && (d.R.depth == 0 || d.S.depth == 0) {
        return Ok(DepthResult::exact(0, "Thm-4(iii)"));
    }
    let asymmetric = d.grade_mR > 0 && d.grade_mS == 0;
    if d.T.dim == 0 && d.gamma_mR_in_ker && !asymmetric {
        return Ok(DepthResult::exact(
            d.grade_mR.min(d.grade_mS).min(1),
            "Cor-Lescot-general",
        ));
    }
    Ok(DepthResult {
        kind: DepthKind::LowerBound,
        value: Some(d.R.depth.min(d.S.depth).min(d.T.depth + 1)),
        rule: "Fact-lower-bound".into(),
    })
}

/// Depth of the amalgamated duplication `R ⋈ I`.
pub fn depth_amalgamated(
    grade_mr: u64,
    grade_mrmodi: u64,
    dim_rmodi: u64,
    gamma_in_i: bool,
) -> DepthResult {
    if grade_mr > grade_mrmodi {
        return DepthResult::exact(grade_mrmodi + 1, "Cor-amalg(i)");
    }
    if dim_rmodi == 0 && gamma_in_i {
        return DepthResult::exact(grade_mr.min(1), "Cor-amalg(ii)");
    }
    DepthResult {
        kind: DepthKind::Unknown,
        value: None,
        rule: "none".into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Unknown => "unknown",
        })
    }
}

/// Logical shape of the statement that produced a predicate value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// A characterization: the value is decided both ways.
    Iff,
    /// A sufficient condition held.
    If,
    /// A necessary condition failed (contrapositive).
    OnlyIf,
    None,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Iff => "iff",
            Direction::If => "if",
            Direction::OnlyIf => "only-if",
            Direction::None => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicate {
    pub value: Tri,
    pub rule: String,
    pub direction: Direction,
}

impl Predicate {
    fn new(value: impl Into<Tri>, rule: &str, direction: Direction) -> Self {
        Predicate {
            value: value.into(),
            rule: rule.into(),
            direction,
        }
    }

    fn unknown() -> Self {
        Predicate::new(Tri::Unknown, "none", Direction::None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    #[serde(with = "json::u64_str")]
    pub dim_fiber: u64,
    pub regular: Predicate,
    pub hypersurface: Predicate,
    pub cohen_macaulay: Predicate,
    pub complete_intersection: Predicate,
}

impl StructureReport {
    pub fn entries(&self) -> [(&'static str, &Predicate); 4] {
        [
            ("regular", &self.regular),
            ("hypersurface", &self.hypersurface),
            ("cohen_macaulay", &self.cohen_macaulay),
            ("complete_intersection", &self.complete_intersection),
        ]
    }
}

pub fn classify(data: &FiberData, depth_fiber: Option<u64>) -> Result<StructureReport> {
    data.validate()?;
    let d = data;
    let dim = dim_fiber(d.R.dim, d.S.dim);
    if let Some(depth) = depth_fiber {
        if depth > dim {
            return Err(Error::validation(
                "depth_fiber",
                format!("depth {depth} exceeds dim {dim}"),
            ));
        }
    }

    let regular = Predicate::new(false, "Thm-struct(i)", Direction::If);

    let n = d.grade_mT;
    let cohen_macaulay = if d.grade_mR > n && d.grade_mS > n {
        let holds = d.R.cohen_macaulay()
            && d.S.cohen_macaulay()
            && d.R.dim == n + 1
            && d.S.dim == n + 1
            && dim == n + 1;
        let rule = if n == 0 {
            "Cor-struct-depth0"
        } else {
            "Thm-struct(iv)"
        };
        Predicate::new(holds, rule, Direction::Iff)
    } else if n > 0 && (d.R.depth == 0 || d.S.depth == 0) && dim > 0 {
        Predicate::new(false, "Thm-struct(iii)", Direction::If)
    } else if let Some(depth) = depth_fiber {
        Predicate::new(depth == dim, "depth-equals-dim", Direction::Iff)
    } else {
        Predicate::unknown()
    };

    let hypersurface = if !d.R.regular() || d.beta1_T_over_S != 1 {
        Predicate::new(false, "Thm-struct(ii)", Direction::OnlyIf)
    } else if cohen_macaulay.value == Tri::False {
        Predicate::new(false, "hypersurface-is-CM", Direction::OnlyIf)
    } else if d.is_large && cohen_macaulay.value == Tri::True {
        Predicate::new(true, "Prop-large(ii)", Direction::Iff)
    } else {
        Predicate::unknown()
    };

    let complete_intersection = if cohen_macaulay.value == Tri::False {
        Predicate::new(false, "CI-is-CM", Direction::OnlyIf)
    } else if hypersurface.value == Tri::True {
        Predicate::new(true, "hypersurface-is-CI", Direction::If)
    } else if d.is_large && d.R.complete_intersection() == Some(true) && large_ci_ratio_is_two(d) {
        Predicate::new(true, "Prop-large(i)", Direction::If)
    } else {
        Predicate::unknown()
    };

    Ok(StructureReport {
        dim_fiber: dim,
        regular,
        hypersurface,
        cohen_macaulay,
        complete_intersection,
    })
}

/// `(β₁^S(T)² + β₁^S(T)) / (β₁^R(T)β₁^S(T) + β₂^S(T)) = 2`, in integers.
fn large_ci_ratio_is_two(d: &FiberData) -> bool {
    let s1 = d.beta1_T_over_S as u128;
    let num = s1 * s1 + s1;
    let den = d.beta1_T_over_R as u128 * s1 + d.beta2_T_over_S as u128;
    den != 0 && num == 2 * den
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCheck {
    #[serde(with = "json::usize_str")]
    pub index: usize,
    pub beta: String,
    pub required: String,
    pub pass: bool,
}

fn check_range(betti: &BettiSequence, i_max: usize) -> Result<()> {
    if i_max >= betti.values.len() {
        return Err(Error::IndexOutOfRange {
            index: i_max,
            len: betti.values.len(),
        });
    }
    Ok(())
}

/// `β_i ≥ C(d, i)` for `1 ≤ i ≤ i_max`.
pub fn beh_check(betti: &BettiSequence, d: u64, i_max: usize) -> Result<Vec<IndexCheck>> {
    check_range(betti, i_max)?;
    Ok((1..=i_max)
        .map(|i| {
            let required = binomial(d, i as u64);
            let beta = &betti.values[i];
            IndexCheck {
                index: i,
                beta: beta.to_string(),
                pass: *beta >= required,
                required: required.to_string(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalRankCheck {
    pub sum: String,
    pub required: String,
    pub pass: bool,
}

/// `Σ_{i=0..i_max} β_i ≥ 2^d`.
pub fn tr_check(betti: &BettiSequence, d: u64, i_max: usize) -> Result<TotalRankCheck> {
    check_range(betti, i_max)?;
    let sum: BigInt = betti.values[..=i_max].iter().sum();
    let required = BigInt::one() << d;
    Ok(TotalRankCheck {
        pass: sum >= required,
        sum: sum.to_string(),
        required: required.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateCheck {
    pub pass: bool,
    #[serde(with = "json::opt_usize_str")]
    pub first_failure: Option<usize>,
}

/// `β_i = 2^d` for every represented `i ≥ d`, as for the residue field of a
/// hypersurface of dimension `d`.
pub fn tate_hypersurface_check(betti: &BettiSequence, d: u64) -> TateCheck {
    let target = BigInt::one() << d;
    let first_failure = betti
        .values
        .iter()
        .enumerate()
        .skip(d as usize)
        .find(|(_, b)| **b != target)
        .map(|(i, _)| i);
    TateCheck {
        pass: first_failure.is_none(),
        first_failure,
    }
}
