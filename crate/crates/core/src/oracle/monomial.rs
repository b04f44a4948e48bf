//! Monomials and monomial ideals in a fixed number of variables.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, v: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, vars }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = self.vars.get(i).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Graded lexicographic comparison: total degree first, then larger
/// exponent of the earlier variable first.
pub fn grlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

/// An ideal generated by monomials, stored by its minimal generators in
/// graded lexicographic order (largest first). The empty generator set is
/// the zero ideal; the unit ideal is not representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: Vec::new(),
        }
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: (0..num_vars).map(|v| Monomial::var(num_vars, v)).collect(),
        }
    }

    /// Builds the ideal from any generating set, dropping redundant
    /// generators.
    pub fn new(num_vars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut all: Vec<Monomial> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            if g.0.len() != num_vars {
                return Err(Error::validation(
                    format!("generators[{i}]"),
                    format!("has {} exponents, expected {num_vars}", g.0.len()),
                ));
            }
            if g.degree() == 0 {
                return Err(Error::validation(
                    format!("generators[{i}]"),
                    "the unit ideal is not allowed",
                ));
            }
            all.push(g);
        }
        Ok(MonomialIdeal {
            num_vars,
            generators: minimalize(all),
        })
    }

    pub fn from_exponents(num_vars: usize, gens: &[&[u32]]) -> Result<Self> {
        Self::new(num_vars, gens.iter().map(|g| Monomial(g.to_vec())))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn max_degree(&self) -> u32 {
        self.generators
            .iter()
            .map(Monomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        debug_assert_eq!(self.num_vars, other.num_vars);
        MonomialIdeal {
            num_vars: self.num_vars,
            generators: minimalize(
                self.generators
                    .iter()
                    .chain(&other.generators)
                    .cloned()
                    .collect(),
            ),
        }
    }

    /// Generated by the pairwise lcms of the generators.
    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let lcms = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.lcm(h)))
            .collect();
        MonomialIdeal {
            num_vars: self.num_vars,
            generators: minimalize(lcms),
        }
    }

    /// Generators of degree one.
    pub fn linear_part(&self) -> usize {
        self.generators.iter().filter(|g| g.degree() == 1).count()
    }

    pub fn is_maximal(&self) -> bool {
        self.linear_part() == self.num_vars
    }

    /// Minimal generators with pairwise disjoint supports form a regular
    /// sequence, and for monomial ideals that is the only way to be one.
    pub fn is_complete_intersection(&self) -> bool {
        let mut seen = vec![false; self.num_vars];
        for g in &self.generators {
            for v in g.support() {
                if std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        true
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        IdealDisplay { ideal: self, vars }
    }
}

struct IdealDisplay<'a> {
    ideal: &'a MonomialIdeal,
    vars: &'a [String],
}

impl fmt::Display for IdealDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.ideal.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display(self.vars))?;
        }
        f.write_str(")")
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(grlex);
    kept.reverse();
    kept
}

/// Every monomial of total degree `degree` in `num_vars` variables, largest
/// first in graded lexicographic order.
pub fn monomials_of_degree(num_vars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, degree, &mut vec![0; num_vars], &mut out);
    out
}

/// Standard monomials of the given degree: the monomials outside `ideal`,
/// which form a basis of that graded piece of the quotient.
pub fn kbasis(ideal: &MonomialIdeal, degree: u32) -> Vec<Monomial> {
    monomials_of_degree(ideal.num_vars, degree)
        .into_iter()
        .filter(|m| !ideal.contains(m))
        .collect()
}

/// Krull dimension of `P / ideal`: the number of variables minus the size of
/// a smallest variable set meeting the support of every generator.
pub fn dim_monomial(ideal: &MonomialIdeal) -> usize {
    let n = ideal.num_vars;
    assert!(
        n < 64,
        "vertex-cover search limited to fewer than 64 variables"
    );
    let supports: Vec<u64> = ideal
        .generators
        .iter()
        .map(|g| g.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    let cover = (0..=n)
        .find(|&size| subsets_of_size(n, size).any(|mask| supports.iter().all(|s| s & mask != 0)))
        .unwrap_or(n);
    n - cover
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u64 = 1 << n;
    (0..limit).filter(move |m| m.count_ones() as usize == k)
}

/// Same-ambient presentation of a fiber product: with `R = P/I`, `S = P/J`
/// and `T = P/(I+J)`, the fiber product is `P/(I ∩ J)`. Returns
/// `(I ∩ J, I + J)`.
pub fn fiber_presentation(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
) -> Result<(MonomialIdeal, MonomialIdeal)> {
    if i.num_vars != j.num_vars {
        return Err(Error::validation(
            "J",
            "I and J live in different polynomial rings",
        ));
    }
    if i.contains_ideal(j) {
        return Err(Error::TrivialFiberProduct("J ⊆ I, so R = T".into()));
    }
    if j.contains_ideal(i) {
        return Err(Error::TrivialFiberProduct("I ⊆ J, so S = T".into()));
    }
    Ok((i.intersection(j), i.sum(j)))
}

/// Parses monomials written like `x^2*y`, `x y^3` or `1`.
pub fn parse_monomial(text: &str, vars: &[String]) -> Result<Monomial> {
    let mut exps = vec![0u32; vars.len()];
    let cleaned = text.replace('*', " ");
    let trimmed = cleaned.trim();
    if trimmed.is_empty() {
        return Err(Error::validation(text, "empty monomial"));
    }
    if trimmed == "1" {
        return Ok(Monomial(exps));
    }
    for factor in trimmed.split_whitespace() {
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (
                n,
                p.parse::<u32>()
                    .map_err(|_| Error::validation(text, format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let v = vars
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::validation(text, format!("unknown variable `{name}`")))?;
        exps[v] += power;
    }
    Ok(Monomial(exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, gens).unwrap()
    }

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn complete_intersections() {
        assert!(ideal(3, &[&[1, 0, 0], &[0, 0, 2]]).is_complete_intersection());
        assert!(!ideal(3, &[&[1, 1, 0], &[0, 1, 1]]).is_complete_intersection());
        assert!(!ideal(2, &[&[2, 0], &[1, 1]]).is_complete_intersection());
        assert!(MonomialIdeal::zero(2).is_complete_intersection());
    }

    #[test]
    fn kbasis_examples() {
        // Brute force: every degree-3 monomial in x, y, keep those xy² does not divide.
        let xy2 = Monomial(vec![1, 2]);
        let brute: Vec<Monomial> = (0..=3u32)
            .rev()
            .map(|a| Monomial(vec![a, 3 - a]))
            .filter(|m| !xy2.divides(m))
            .collect();
        let got = kbasis(&ideal(2, &[&[1, 2]]), 3);
        assert_eq!(got, brute);
        assert_eq!(
            got,
            vec![
                Monomial(vec![3, 0]),
                Monomial(vec![2, 1]),
                Monomial(vec![0, 3])
            ]
        );

        let all = kbasis(&MonomialIdeal::zero(2), 2);
        assert_eq!(
            all,
            vec![
                Monomial(vec![2, 0]),
                Monomial(vec![1, 1]),
                Monomial(vec![0, 2])
            ]
        );

        assert!(kbasis(&MonomialIdeal::maximal(2), 1).is_empty());
    }

    #[test]
    fn minimal_generators() {
        let i = ideal(2, &[&[2, 0], &[1, 0], &[1, 1]]);
        assert_eq!(i.generators(), &[Monomial(vec![1, 0])]);
        assert!(MonomialIdeal::from_exponents(2, &[&[0, 0]]).is_err());
        assert!(MonomialIdeal::from_exponents(2, &[&[1]]).is_err());
    }

    #[test]
    fn dim_examples() {
        assert_eq!(dim_monomial(&ideal(2, &[&[1, 2]])), 1);
        assert_eq!(dim_monomial(&ideal(3, &[&[1, 1, 0], &[0, 0, 2]])), 1);
        assert_eq!(dim_monomial(&MonomialIdeal::zero(4)), 4);
        assert_eq!(dim_monomial(&MonomialIdeal::maximal(3)), 0);
    }

    #[test]
    fn fiber_presentation_examples() {
        let (inter, sum) =
            fiber_presentation(&ideal(2, &[&[0, 2]]), &ideal(2, &[&[2, 0], &[1, 1]])).unwrap();
        assert_eq!(inter, ideal(2, &[&[1, 2]]));
        assert_eq!(sum, ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));

        assert!(matches!(
            fiber_presentation(&ideal(2, &[&[1, 0]]), &MonomialIdeal::maximal(2)),
            Err(Error::TrivialFiberProduct(_))
        ));

        let (inter, sum) = fiber_presentation(
            &ideal(3, &[&[1, 0, 0], &[0, 0, 2]]),
            &ideal(3, &[&[0, 1, 0], &[0, 0, 2]]),
        )
        .unwrap();
        assert_eq!(inter, ideal(3, &[&[1, 1, 0], &[0, 0, 2]]));
        assert_eq!(sum, ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
    }

    #[test]
    fn parse_and_display() {
        let vars = names(&["x", "y"]);
        assert_eq!(
            parse_monomial("x^2*y", &vars).unwrap(),
            Monomial(vec![2, 1])
        );
        assert_eq!(
            parse_monomial("x y x", &vars).unwrap(),
            Monomial(vec![2, 1])
        );
        assert!(parse_monomial("z", &vars).is_err());
        assert!(parse_monomial("x^a", &vars).is_err());
        let i = ideal(2, &[&[1, 2], &[3, 0]]);
        assert_eq!(i.display(&vars).to_string(), "(x^3, x*y^2)");
    }
}
