//! Poincaré series of modules over a fiber product `R ×_T S`.
//!
//! Given `P^R_M`, `P^R_T` and `P^S_T`, the candidate series for `M` over the
//! fiber product is
//!
//! ```text
//!            P^R_M(t) · P^S_T(t)
//!   ------------------------------------------
//!   P^R_T(t) + P^S_T(t) - P^R_T(t) · P^S_T(t)
//! ```
//!
//! which is the exact Poincaré series when both projections out of the fiber
//! product are large. For other fiber products the same expression is only a
//! claimed coefficientwise bound, and it is reported as such: callers that
//! hold ground truth (the `verify` harness) decide what the comparison shows.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{self, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareInputs {
    #[serde(rename = "p_M_over_R")]
    pub p_m_over_r: TruncatedSeries,
    #[serde(rename = "p_T_over_R")]
    pub p_t_over_r: TruncatedSeries,
    #[serde(rename = "p_T_over_S")]
    pub p_t_over_s: TruncatedSeries,
    #[serde(default)]
    pub is_large: bool,
}

fn check_poincare(field: &str, p: &TruncatedSeries) -> Result<()> {
    if let Some(i) = p.first_negative() {
        return Err(Error::validation(
            format!("{field}[{i}]"),
            "Poincaré coefficients must be nonnegative",
        ));
    }
    if p.constant().is_zero() {
        return Err(Error::validation(
            format!("{field}[0]"),
            "constant term must be at least 1",
        ));
    }
    Ok(())
}

/// `T` is cyclic over the ring and the map onto `T` is not an isomorphism:
/// `β_0 = 1` and `β_1 ≥ 1`.
fn check_residue_series(field: &str, p: &TruncatedSeries) -> Result<()> {
    check_poincare(field, p)?;
    if !p.constant().is_one() {
        return Err(Error::validation(
            format!("{field}[0]"),
            "T is cyclic, so its constant term must be 1",
        ));
    }
    match p.coeff(1) {
        None => Err(Error::validation(
            field,
            "need at least the coefficient of t^1 to check nontriviality",
        )),
        Some(c) if c.is_zero() => Err(Error::TrivialFiberProduct(format!(
            "{field}[1] = 0: the projection onto T is an isomorphism"
        ))),
        Some(_) => Ok(()),
    }
}

impl PoincareInputs {
    pub fn validate(&self) -> Result<()> {
        check_poincare("p_M_over_R", &self.p_m_over_r)?;
        check_residue_series("p_T_over_R", &self.p_t_over_r)?;
        check_residue_series("p_T_over_S", &self.p_t_over_s)?;
        Ok(())
    }

    pub fn max_order(&self) -> usize {
        self.p_m_over_r
            .order()
            .min(self.p_t_over_r.order())
            .min(self.p_t_over_s.order())
    }
}

/// `P^R_M(t) = μ(M) + t·P^R_{Ω₁}(t)`: splits off the number of generators and
/// returns the series of the first syzygy, one order shorter.
pub fn syzygy_shift(p: &TruncatedSeries) -> Result<(BigInt, TruncatedSeries)> {
    if let Some(i) = p.first_negative() {
        return Err(Error::validation(
            format!("p[{i}]"),
            "Poincaré coefficients must be nonnegative",
        ));
    }
    if p.constant().is_zero() {
        return Err(Error::ZeroModule);
    }
    if p.order() == 0 {
        return Err(Error::validation(
            "p",
            "order 0 carries no syzygy information",
        ));
    }
    let omega = TruncatedSeries::new(p.coeffs()[1..].to_vec());
    Ok((p.constant().clone(), omega))
}

/// Series of `M` over `A` when `A → S` is large: `P^A_M = P^S_M · P^A_S`.
pub fn large_compose(
    p_m_over_s: &TruncatedSeries,
    p_s_over_a: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    if let Some(i) = p_m_over_s.first_negative() {
        return Err(Error::validation(
            format!("p_M_over_S[{i}]"),
            "must be nonnegative",
        ));
    }
    if let Some(i) = p_s_over_a.first_negative() {
        return Err(Error::validation(
            format!("p_S_over_A[{i}]"),
            "must be nonnegative",
        ));
    }
    Ok(series::mul(p_m_over_s, p_s_over_a))
}

/// `P^R_T + P^S_T − P^R_T·P^S_T`.
pub fn fiber_denominator(
    p_t_over_r: &TruncatedSeries,
    p_t_over_s: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    check_residue_series("p_T_over_R", p_t_over_r)?;
    check_residue_series("p_T_over_S", p_t_over_s)?;
    Ok(series::sub(
        &series::add(p_t_over_r, p_t_over_s),
        &series::mul(p_t_over_r, p_t_over_s),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// Exact Poincaré series (large fiber product).
    Exact,
    /// Formula value for a fiber product not asserted to be large.
    ClaimedBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSeries {
    pub series: TruncatedSeries,
    pub kind: SeriesKind,
}

fn check_order(requested: usize, available: usize) -> Result<()> {
    if requested > available {
        return Err(Error::OrderTooLong {
            requested,
            available,
        });
    }
    Ok(())
}

pub fn fiber_series(inputs: &PoincareInputs, order: usize) -> Result<FiberSeries> {
    inputs.validate()?;
    check_order(order, inputs.max_order())?;
    let den = fiber_denominator(
        &inputs.p_t_over_r.truncate(order),
        &inputs.p_t_over_s.truncate(order),
    )?;
    let num = series::mul(
        &inputs.p_m_over_r.truncate(order),
        &inputs.p_t_over_s.truncate(order),
    );
    let series = series::divide(&num, &den)?;
    debug_assert!(series.is_nonnegative());
    Ok(FiberSeries {
        series,
        kind: if inputs.is_large {
            SeriesKind::Exact
        } else {
            SeriesKind::ClaimedBound
        },
    })
}

/// Series of `M` over the amalgamated duplication `R ⋈ I = R ×_{R/I} R`:
/// `P^R_M / (2 − P^R_{R/I})`. Always exact, since that fiber product is large.
pub fn amalgamated_series(
    p_m_over_r: &TruncatedSeries,
    p_rmodi_over_r: &TruncatedSeries,
    order: usize,
) -> Result<TruncatedSeries> {
    check_poincare("p_M_over_R", p_m_over_r)?;
    check_residue_series("p_RmodI_over_R", p_rmodi_over_r)?;
    check_order(order, p_m_over_r.order().min(p_rmodi_over_r.order()))?;
    let two = TruncatedSeries::one(order);
    let den = series::sub(&series::add(&two, &two), &p_rmodi_over_r.truncate(order));
    series::divide(&p_m_over_r.truncate(order), &den)
}

/// Finite list of Betti numbers `β_0, β_1, ...`.
///
/// When `terminates` is set the module has finite projective dimension and
/// every Betti number past the list is zero; otherwise the list is only a
/// prefix and cannot be extended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiSequence {
    #[serde(serialize_with = "serialize_big")]
    pub values: Vec<BigInt>,
    pub terminates: bool,
}

fn serialize_big<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl<'de> Deserialize<'de> for BettiSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Values(Vec<BigInt>);
        impl<'de> Deserialize<'de> for Values {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                series::parse_int_list(d).map(Values)
            }
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Bare(Values),
            Full {
                values: Values,
                #[serde(default)]
                terminates: bool,
            },
        }
        let (values, terminates) = match Repr::deserialize(d)? {
            Repr::Bare(v) => (v.0, false),
            Repr::Full { values, terminates } => (values.0, terminates),
        };
        if values.is_empty() {
            return Err(de::Error::custom("empty Betti sequence"));
        }
        Ok(BettiSequence { values, terminates })
    }
}

impl BettiSequence {
    pub fn prefix(values: Vec<BigInt>) -> Self {
        BettiSequence {
            values,
            terminates: false,
        }
    }

    pub fn finite(values: Vec<BigInt>) -> Self {
        BettiSequence {
            values,
            terminates: true,
        }
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        Self::prefix(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn get(&self, i: usize) -> Option<BigInt> {
        match self.values.get(i) {
            Some(v) => Some(v.clone()),
            None if self.terminates => Some(BigInt::zero()),
            None => None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn validate(&self, field: &str) -> Result<()> {
        if let Some(i) = self.values.iter().position(|v| v.is_negative()) {
            return Err(Error::InvalidBetti {
                field: format!("{field}[{i}]"),
                message: "Betti numbers are nonnegative".into(),
            });
        }
        Ok(())
    }

    pub fn to_series(&self, order: usize, field: &str) -> Result<TruncatedSeries> {
        self.validate(field)?;
        if order >= self.values.len() && !self.terminates {
            return Err(Error::OrderTooLong {
                requested: order,
                available: self.values.len() - 1,
            });
        }
        Ok(TruncatedSeries::new(
            (0..=order)
                .map(|i| self.get(i).unwrap_or_default())
                .collect(),
        ))
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        Self::prefix(s.coeffs().to_vec())
    }
}

fn require_cyclic(field: &str, beta: &BettiSequence) -> Result<()> {
    if beta.values.first().is_none_or(|b| !b.is_one()) {
        return Err(Error::InvalidBetti {
            field: format!("{field}[0]"),
            message: "T is cyclic, so β_0 must be 1".into(),
        });
    }
    Ok(())
}

/// The coefficients `b_i` of the fiber denominator, computed from Betti data:
/// `b_i = β_i^R(T) + β_i^S(T) − Σ_{j=0..i} β_j^R(T) β_{i−j}^S(T)`.
pub fn betti_b(
    beta_t_over_r: &BettiSequence,
    beta_t_over_s: &BettiSequence,
    order: usize,
) -> Result<TruncatedSeries> {
    require_cyclic("beta_T_over_R", beta_t_over_r)?;
    require_cyclic("beta_T_over_S", beta_t_over_s)?;
    let r = beta_t_over_r.to_series(order, "beta_T_over_R")?;
    let s = beta_t_over_s.to_series(order, "beta_T_over_S")?;
    Ok(series::sub(&series::add(&r, &s), &series::mul(&r, &s)))
}

/// Inverse of a denominator with `b_0 = 1` and `b_i ≤ 0`, through the
/// recurrence `B_n = Σ_{i=1..n} |b_i| B_{n−i}`. Every `B_n` is nonnegative.
///
/// This is equivalent to the determinant expression for `B_n` obtained by
/// Cramer's rule on the triangular system `b · B = 1`; the recurrence is
/// what gets computed.
#[allow(non_snake_case)]
pub fn betti_B(b: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !b.constant().is_one() {
        return Err(Error::InvalidDenominator(format!(
            "b_0 = {}, expected 1",
            b.constant()
        )));
    }
    if let Some(i) = b.coeffs().iter().skip(1).position(|c| c.is_positive()) {
        return Err(Error::InvalidDenominator(format!(
            "b_{} = {} is positive",
            i + 1,
            b.coeffs()[i + 1]
        )));
    }
    let abs: Vec<BigInt> = b.coeffs().iter().map(|c| c.abs()).collect();
    let mut big_b: Vec<BigInt> = Vec::with_capacity(abs.len());
    big_b.push(BigInt::one());
    for n in 1..abs.len() {
        let next = (1..=n)
            .filter(|&i| !abs[i].is_zero())
            .fold(BigInt::zero(), |acc, i| acc + &abs[i] * &big_b[n - i]);
        big_b.push(next);
    }
    Ok(TruncatedSeries::new(big_b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiBound {
    /// `Σ_{i=0..n} a_i B_{n−i}` for each `n`.
    pub bound: BettiSequence,
    /// `a_i = Σ_j β_j^R(M) β_{i−j}^S(T)`.
    pub a: TruncatedSeries,
    #[serde(rename = "B")]
    pub big_b: TruncatedSeries,
}

fn require_nontrivial(field: &str, beta: &BettiSequence) -> Result<()> {
    match beta.get(1) {
        Some(v) if v.is_zero() => Err(Error::TrivialFiberProduct(format!("{field}[1] = 0"))),
        None => Err(Error::InvalidBetti {
            field: field.into(),
            message: "need β_1 to check nontriviality".into(),
        }),
        Some(_) => Ok(()),
    }
}

/// Betti numbers of `M` over the fiber product predicted through index `n`.
pub fn betti_bound(
    beta_m_over_r: &BettiSequence,
    beta_t_over_r: &BettiSequence,
    beta_t_over_s: &BettiSequence,
    n: usize,
) -> Result<BettiBound> {
    beta_m_over_r.validate("beta_M_over_R")?;
    if beta_m_over_r.values[0].is_zero() {
        return Err(Error::ZeroModule);
    }
    require_cyclic("beta_T_over_R", beta_t_over_r)?;
    require_cyclic("beta_T_over_S", beta_t_over_s)?;
    require_nontrivial("beta_T_over_R", beta_t_over_r)?;
    require_nontrivial("beta_T_over_S", beta_t_over_s)?;

    let m = beta_m_over_r.to_series(n, "beta_M_over_R")?;
    let ts = beta_t_over_s.to_series(n, "beta_T_over_S")?;
    let a = series::mul(&m, &ts);
    let big_b = betti_B(&betti_b(beta_t_over_r, beta_t_over_s, n)?)?;
    let bound = series::mul(&a, &big_b);
    Ok(BettiBound {
        bound: BettiSequence::from_series(&bound),
        a,
        big_b,
    })
}

/// The closed forms for indices 0, 1 and 2, written out term by term.
pub fn closed_forms(
    beta_m_over_r: &BettiSequence,
    beta_t_over_r: &BettiSequence,
    beta_t_over_s: &BettiSequence,
) -> Result<[BigInt; 3]> {
    let get = |seq: &BettiSequence, i: usize, field: &str| {
        seq.get(i).ok_or_else(|| Error::InvalidBetti {
            field: format!("{field}[{i}]"),
            message: "missing".into(),
        })
    };
    let m0 = get(beta_m_over_r, 0, "beta_M_over_R")?;
    let m1 = get(beta_m_over_r, 1, "beta_M_over_R")?;
    let m2 = get(beta_m_over_r, 2, "beta_M_over_R")?;
    let r1 = get(beta_t_over_r, 1, "beta_T_over_R")?;
    let s1 = get(beta_t_over_s, 1, "beta_T_over_S")?;
    let s2 = get(beta_t_over_s, 2, "beta_T_over_S")?;
    Ok([
        m0.clone(),
        &m0 * &s1 + &m1,
        &m0 * &r1 * &s1 + &m0 * &s2 + &m1 * &s1 + &m2,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdimBound {
    pub value: u64,
    pub exact: bool,
}

/// `edim(R ×_T S) ≥ β_1^S(T) + edim(R)`, with equality for large fiber products.
pub fn edim_bound(edim_r: u64, beta1_t_over_s: u64, is_large: bool) -> Result<EdimBound> {
    if edim_r == 0 {
        return Err(Error::TrivialFiberProduct(
            "edim(R) = 0 makes R a field, so R = T".into(),
        ));
    }
    if beta1_t_over_s == 0 {
        return Err(Error::TrivialFiberProduct("beta1_T_over_S = 0".into()));
    }
    Ok(EdimBound {
        value: edim_r + beta1_t_over_s,
        exact: is_large,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(c)
    }

    fn b(v: &[u64]) -> BettiSequence {
        BettiSequence::from_u64s(v)
    }

    /// Denominator coefficients straight from the definition, with
    /// machine integers and no series arithmetic.
    fn denominator_oracle(r: &[i64], s: &[i64]) -> Vec<i64> {
        let n = r.len().min(s.len());
        (0..n)
            .map(|i| {
                let conv: i64 = (0..=i).map(|j| r[j] * s[i - j]).sum();
                r[i] + s[i] - conv
            })
            .collect()
    }

    #[test]
    fn syzygy_shift_examples() {
        assert_eq!(
            syzygy_shift(&s(&[1, 2, 2, 2])).unwrap(),
            (BigInt::from(1), s(&[2, 2, 2]))
        );
        assert_eq!(
            syzygy_shift(&s(&[3, 0, 0])).unwrap(),
            (BigInt::from(3), s(&[0, 0]))
        );
        assert_eq!(syzygy_shift(&s(&[0, 1])), Err(Error::ZeroModule));
    }

    #[test]
    fn large_compose_examples() {
        assert_eq!(large_compose(&s(&[1, 1]), &s(&[1, 1])).unwrap(), s(&[1, 2]));
        assert_eq!(
            large_compose(&s(&[1, 4, 9]), &s(&[1, 0, 0])).unwrap(),
            s(&[1, 4, 9])
        );
        assert_eq!(
            large_compose(&s(&[1, 2, 2]), &s(&[1, 1, 1])).unwrap(),
            s(&[1, 3, 5])
        );
        assert!(large_compose(&s(&[1, -1]), &s(&[1, 1])).is_err());
    }

    #[test]
    fn fiber_denominator_examples() {
        let oracle = denominator_oracle(&[1, 1, 0], &[1, 1, 0]);
        assert_eq!(oracle, vec![1, 0, -1]);
        assert_eq!(
            fiber_denominator(&s(&[1, 1, 0]), &s(&[1, 1, 0])).unwrap(),
            s(&oracle)
        );

        for r2 in 0..6 {
            let oracle = denominator_oracle(&[1, 2, r2], &[1, 1, 1]);
            assert_eq!(oracle, vec![1, 0, -2]);
            assert_eq!(
                fiber_denominator(&s(&[1, 2, r2]), &s(&[1, 1, 1])).unwrap(),
                s(&oracle)
            );
        }
        assert!(matches!(
            fiber_denominator(&s(&[1, 0, 0]), &s(&[1, 1])),
            Err(Error::TrivialFiberProduct(_))
        ));
    }

    #[test]
    fn fiber_series_examples() {
        let k = s(&[1, 1, 0, 0, 0, 0]);
        let inputs = PoincareInputs {
            p_m_over_r: k.clone(),
            p_t_over_r: k.clone(),
            p_t_over_s: k.clone(),
            is_large: true,
        };
        let out = fiber_series(&inputs, 5).unwrap();
        assert_eq!(out.series, s(&[1, 2, 2, 2, 2, 2]));
        assert_eq!(out.kind, SeriesKind::Exact);

        let free = PoincareInputs {
            p_m_over_r: s(&[1, 0, 0, 0, 0]),
            p_t_over_r: s(&[1, 1, 0, 0, 0]),
            p_t_over_s: s(&[1, 1, 0, 0, 0]),
            is_large: false,
        };
        let out = fiber_series(&free, 4).unwrap();
        assert_eq!(out.series, s(&[1, 1, 1, 1, 1]));
        assert_eq!(out.kind, SeriesKind::ClaimedBound);

        let trivial = PoincareInputs {
            p_t_over_s: s(&[1, 0, 0, 0, 0]),
            ..free.clone()
        };
        assert!(matches!(
            fiber_series(&trivial, 4),
            Err(Error::TrivialFiberProduct(_))
        ));

        assert_eq!(
            fiber_series(&free, 9),
            Err(Error::OrderTooLong {
                requested: 9,
                available: 4
            })
        );
    }

    #[test]
    fn amalgamated_examples() {
        let p = s(&[1, 1, 0, 0, 0]);
        assert_eq!(amalgamated_series(&p, &p, 4).unwrap(), s(&[1, 2, 2, 2, 2]));
        assert_eq!(
            amalgamated_series(&s(&[1, 0, 0, 0]), &s(&[1, 1, 0, 0]), 3).unwrap(),
            s(&[1, 1, 1, 1])
        );
        assert!(matches!(
            amalgamated_series(&p, &s(&[1, 0, 0, 0, 0]), 4),
            Err(Error::TrivialFiberProduct(_))
        ));
    }

    #[test]
    fn betti_b_examples() {
        assert_eq!(
            betti_b(&b(&[1, 2, 0]), &b(&[1, 1, 0]), 2).unwrap(),
            s(&[1, 0, -2])
        );
        assert_eq!(
            betti_b(&b(&[1, 1, 0]), &b(&[1, 1, 0]), 2).unwrap(),
            s(&[1, 0, -1])
        );
        assert!(matches!(
            betti_b(&b(&[2, 1, 0]), &b(&[1, 1, 0]), 2),
            Err(Error::InvalidBetti { .. })
        ));
    }

    #[test]
    fn betti_big_b_examples() {
        let b1 = s(&[1, 0, -2, 0, 0]);
        assert_eq!(betti_B(&b1).unwrap(), s(&[1, 0, 2, 0, 4]));
        assert_eq!(betti_B(&b1).unwrap(), series::invert(&b1).unwrap());
        assert_eq!(betti_B(&s(&[1, 0, 0, 0])).unwrap(), s(&[1, 0, 0, 0]));
        assert_eq!(betti_B(&s(&[1, 0, -1, 0, 0])).unwrap(), s(&[1, 0, 1, 0, 1]));
        assert!(matches!(
            betti_B(&s(&[1, 0, 1])),
            Err(Error::InvalidDenominator(_))
        ));
        assert!(matches!(
            betti_B(&s(&[2, 0, -1])),
            Err(Error::InvalidDenominator(_))
        ));
    }

    #[test]
    fn betti_bound_examples() {
        let m = b(&[1, 2, 2]);
        let tr = b(&[1, 2, 0]);
        let ts = b(&[1, 1, 1]);
        let out = betti_bound(&m, &tr, &ts, 2).unwrap();
        assert_eq!(out.bound.get(1), Some(BigInt::from(3)));
        assert_eq!(out.bound.get(2), Some(BigInt::from(7)));
        let closed = closed_forms(&m, &tr, &ts).unwrap();
        assert_eq!(closed, [BigInt::from(1), BigInt::from(3), BigInt::from(7)]);

        let out = betti_bound(&b(&[1, 0, 0]), &b(&[1, 1, 0]), &b(&[1, 1, 0]), 0).unwrap();
        assert_eq!(out.bound.values, vec![BigInt::from(1)]);
    }

    #[test]
    fn betti_bound_rejects_trivial_and_short_inputs() {
        assert!(matches!(
            betti_bound(&b(&[1, 1]), &b(&[1, 1]), &b(&[1, 0]), 1),
            Err(Error::TrivialFiberProduct(_))
        ));
        assert!(matches!(
            betti_bound(&b(&[1, 1]), &b(&[1, 1]), &b(&[1, 1]), 4),
            Err(Error::OrderTooLong { .. })
        ));
        let finite = BettiSequence::finite(vec![BigInt::from(1), BigInt::from(1)]);
        assert!(betti_bound(&finite, &finite, &finite, 4).is_ok());
    }

    #[test]
    fn edim_bound_examples() {
        assert_eq!(
            edim_bound(1, 1, true).unwrap(),
            EdimBound {
                value: 2,
                exact: true
            }
        );
        assert_eq!(
            edim_bound(2, 1, false).unwrap(),
            EdimBound {
                value: 3,
                exact: false
            }
        );
        assert!(edim_bound(0, 1, false).is_err());
        assert!(edim_bound(2, 0, false).is_err());
    }

    #[test]
    fn betti_sequence_json_forms() {
        let bare: BettiSequence = serde_json::from_str(r#"["1","2",3]"#).unwrap();
        assert!(!bare.terminates);
        let full: BettiSequence =
            serde_json::from_str(r#"{"values":["1","1"],"terminates":true}"#).unwrap();
        assert!(full.terminates);
        assert_eq!(full.get(7), Some(BigInt::zero()));
        assert!(serde_json::from_str::<BettiSequence>("[]").is_err());
    }
}
