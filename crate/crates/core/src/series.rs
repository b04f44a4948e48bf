//! Truncated formal power series in one indeterminate `t` with
//! arbitrary-precision integer coefficients, plus integer rational functions
//! that expand into them.
//!
//! A [`TruncatedSeries`] of order `n` stores the coefficients of
//! `t^0, ..., t^n` and says nothing about higher powers. Binary arithmetic
//! truncates to the smaller of the two orders; comparison under
//! [`dominates`] requires equal orders.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Panics if `coeffs` is empty; a series always represents at least `t^0`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series needs at least one coefficient"
        );
        TruncatedSeries { coeffs }
    }

    pub fn try_new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::validation("series", "empty coefficient list"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Drops every coefficient above `order`. Orders can only shrink.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        TruncatedSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.is_negative())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplication by `t`: shifts every coefficient up one slot. The order
    /// grows by one and the new constant term is zero.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order().min(b.order());
    TruncatedSeries {
        coeffs: (0..=order).map(|i| &a.coeffs[i] + &b.coeffs[i]).collect(),
    }
}

pub fn sub(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order().min(b.order());
    TruncatedSeries {
        coeffs: (0..=order).map(|i| &a.coeffs[i] - &b.coeffs[i]).collect(),
    }
}

/// Cauchy product truncated at the smaller order.
pub fn mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order().min(b.order());
    let coeffs = (0..=order)
        .map(|n| {
            (0..=n)
                .filter(|&i| !a.coeffs[i].is_zero() && !b.coeffs[n - i].is_zero())
                .fold(BigInt::zero(), |acc, i| {
                    acc + &a.coeffs[i] * &b.coeffs[n - i]
                })
        })
        .collect();
    TruncatedSeries { coeffs }
}

pub fn scale(a: &TruncatedSeries, k: &BigInt) -> TruncatedSeries {
    TruncatedSeries {
        coeffs: a.coeffs.iter().map(|c| c * k).collect(),
    }
}

fn unit_sign(c: &BigInt) -> Result<BigInt> {
    if c.is_one() || (-c).is_one() {
        Ok(c.clone())
    } else {
        Err(Error::NotAUnit {
            constant: c.to_string(),
        })
    }
}

/// Multiplicative inverse to the same order. Only series whose constant term
/// is a unit of the integers can be inverted without leaving them.
pub fn invert(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    let u = unit_sign(a.constant())?;
    let order = a.order();
    let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
    out.push(u.clone());
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for i in 1..=n {
            if !a.coeffs[i].is_zero() {
                acc += &a.coeffs[i] * &out[n - i];
            }
        }
        // u is ±1, so dividing by it is multiplying by it.
        out.push(-(acc * &u));
    }
    Ok(TruncatedSeries { coeffs: out })
}

pub fn divide(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    let order = a.order().min(b.order());
    let inv = invert(&b.truncate(order))?;
    Ok(mul(&a.truncate(order), &inv))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub holds: bool,
    /// Smallest index `i` with `a_i < b_i`, when dominance fails.
    pub first_violation: Option<usize>,
}

/// Coefficientwise `a ⪰ b`.
pub fn dominates(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<DominanceReport> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    let first_violation = a.coeffs.iter().zip(&b.coeffs).position(|(x, y)| x < y);
    Ok(DominanceReport {
        holds: first_violation.is_none(),
        first_violation,
    })
}

/// Dense integer polynomial in `t`, constant term first, trailing zeros
/// trimmed. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    /// The polynomial as a series of the given order, zero-padded or cut.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let coeffs = (0..=order)
            .map(|i| self.coeffs.get(i).cloned().unwrap_or_default())
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    fn neg(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// `numerator / denominator` with the denominator normalized to constant
/// term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        let c = denominator.constant();
        if c.is_zero() {
            return Err(Error::InvalidDenominator(
                "denominator has constant term 0".into(),
            ));
        }
        let sign = unit_sign(&c)?;
        if sign.is_negative() {
            Ok(RationalFunction {
                numerator: numerator.neg(),
                denominator: denominator.neg(),
            })
        } else {
            Ok(RationalFunction {
                numerator,
                denominator,
            })
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }
}

pub fn expand(f: &RationalFunction, order: usize) -> TruncatedSeries {
    let num = f.numerator.to_series(order);
    let den = f.denominator.to_series(order);
    divide(&num, &den).expect("denominator constant term is normalized to 1")
}

fn serialize_ints<S: Serializer>(coeffs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(coeffs.len()))?;
    for c in coeffs {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

/// Accepts decimal strings (the transport format) and, for hand-written
/// scenario files, bare JSON integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Str(String),
    Int(i64),
}

pub(crate) fn parse_int_list<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<BigInt>, D::Error> {
    let raw: Vec<IntRepr> = Vec::deserialize(d)?;
    raw.into_iter()
        .enumerate()
        .map(|(i, r)| match r {
            IntRepr::Int(v) => Ok(BigInt::from(v)),
            IntRepr::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| de::Error::custom(format!("[{i}]: `{s}` is not a decimal integer"))),
        })
        .collect()
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_ints(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = parse_int_list(d)?;
        TruncatedSeries::try_new(coeffs).map_err(de::Error::custom)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_ints(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Polynomial::new(parse_int_list(d)?))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: Polynomial,
    den: Polynomial,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.numerator.clone(),
            den: self.denominator.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        RationalFunction::new(r.num, r.den).map_err(de::Error::custom)
    }
}
