//! Graded minimal free resolutions of cyclic modules `A/J` over monomial
//! quotient algebras `A = P/I`, computed degree by degree with linear
//! algebra over GF(p).
//!
//! Every free module `F_i = ⊕ A(−d_g)` is stored by its generators and the
//! images of those generators in `F_{i−1}`. In a fixed internal degree `d`,
//! `(F_i)_d` has the basis `{(g, m) : m standard of degree d − d_g}` and the
//! differential is an ordinary matrix. The generators of `F_{i+1}` in degree
//! `d` are the kernel vectors of `∂_i` in degree `d` not already reached by
//! multiplying the degree `d − 1` kernel by the variables.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gf::{EchelonSpan, PrimeField, DEFAULT_CHARACTERISTIC};
use super::monomial::{kbasis, Monomial, MonomialIdeal};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

pub const DEFAULT_MAX_INTERNAL: u32 = 64;

/// `A = P/ideal` with the cyclic module `A/module_ideal`. The module ideal is
/// stored with `ideal` already added in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    vars: Vec<String>,
    ideal: MonomialIdeal,
    module_ideal: MonomialIdeal,
}

impl QuotientPresentation {
    pub fn new(
        vars: Vec<String>,
        ideal: MonomialIdeal,
        module_ideal: MonomialIdeal,
    ) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::validation("vars", "need at least one variable"));
        }
        for (field, i) in [("ideal", &ideal), ("module", &module_ideal)] {
            if i.num_vars() != vars.len() {
                return Err(Error::validation(
                    field,
                    format!(
                        "ideal has {} variables, ring has {}",
                        i.num_vars(),
                        vars.len()
                    ),
                ));
            }
        }
        let module_ideal = module_ideal.sum(&ideal);
        Ok(QuotientPresentation {
            vars,
            ideal,
            module_ideal,
        })
    }

    /// Variables named `x1, x2, ...`.
    pub fn anonymous(ideal: MonomialIdeal, module_ideal: MonomialIdeal) -> Result<Self> {
        let vars = (1..=ideal.num_vars()).map(|i| format!("x{i}")).collect();
        Self::new(vars, ideal, module_ideal)
    }

    /// The residue field `k = A/𝔪` as a module over `P/ideal`.
    pub fn residue_field(vars: Vec<String>, ideal: MonomialIdeal) -> Result<Self> {
        let m = MonomialIdeal::maximal(ideal.num_vars());
        Self::new(vars, ideal, m)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn module_ideal(&self) -> &MonomialIdeal {
        &self.module_ideal
    }

    /// Largest generator degree of the ring and module ideals, at least 1.
    pub fn max_generator_degree(&self) -> u32 {
        self.ideal
            .max_degree()
            .max(self.module_ideal.max_degree())
            .max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolveOptions {
    pub max_hom: usize,
    pub max_internal: u32,
    pub characteristic: u32,
    /// Worker threads for the per-degree linear algebra; `None` uses the
    /// global pool.
    pub threads: Option<usize>,
}

impl ResolveOptions {
    pub fn new(max_hom: usize) -> Self {
        ResolveOptions {
            max_hom,
            max_internal: DEFAULT_MAX_INTERNAL,
            characteristic: DEFAULT_CHARACTERISTIC,
            threads: None,
        }
    }

    pub fn with_max_internal(self, max_internal: u32) -> Self {
        ResolveOptions {
            max_internal,
            ..self
        }
    }

    pub fn with_characteristic(self, characteristic: u32) -> Self {
        ResolveOptions {
            characteristic,
            ..self
        }
    }

    pub fn with_threads(self, threads: usize) -> Self {
        ResolveOptions {
            threads: Some(threads),
            ..self
        }
    }
}

/// Rank bookkeeping for one `(∂_hom, internal degree)` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeAudit {
    pub hom: usize,
    pub internal: u32,
    pub columns: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBettiTable {
    entries: BTreeMap<(usize, u32), u64>,
    max_hom: usize,
    max_internal: u32,
    complete: Vec<bool>,
    audit: Vec<DegreeAudit>,
}

impl GradedBettiTable {
    pub fn get(&self, hom: usize, internal: u32) -> u64 {
        self.entries.get(&(hom, internal)).copied().unwrap_or(0)
    }

    /// Nonzero `β_{i,j}` in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn max_hom(&self) -> usize {
        self.max_hom
    }

    pub fn max_internal(&self) -> u32 {
        self.max_internal
    }

    pub fn complete(&self) -> &[bool] {
        &self.complete
    }

    pub fn is_complete(&self) -> bool {
        self.complete.iter().all(|&c| c)
    }

    pub fn audit(&self) -> &[DegreeAudit] {
        &self.audit
    }

    /// `β_i = Σ_j β_{i,j}` for `i = 0..=max_hom`.
    pub fn totals(&self) -> Vec<u64> {
        let mut t = vec![0; self.max_hom + 1];
        for (&(i, _), &c) in &self.entries {
            t[i] += c;
        }
        t
    }

    /// Largest internal degree with a nonzero entry.
    pub fn top_internal(&self) -> u32 {
        self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }
}

/// An element of a free module: `Σ c · m · e_g`.
type Element = Vec<(usize, Monomial, u32)>;

struct Layer {
    ring: MonomialIdeal,
    degrees: Vec<u32>,
    images: Vec<Element>,
}

/// Graded pieces of a free module over `P/ring`, built on demand.
struct Bases<'a> {
    layer: &'a Layer,
    standard: &'a HashMap<u32, Vec<Monomial>>,
}

struct Basis {
    elems: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl Bases<'_> {
    fn at(&self, d: u32) -> Basis {
        let mut elems = Vec::new();
        for (g, &dg) in self.layer.degrees.iter().enumerate() {
            if dg > d {
                continue;
            }
            if let Some(ms) = self.standard.get(&(d - dg)) {
                elems.extend(ms.iter().map(|m| (g, m.clone())));
            }
        }
        let index = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        Basis { elems, index }
    }
}

fn standard_monomials(ideal: &MonomialIdeal, top: u32) -> HashMap<u32, Vec<Monomial>> {
    (0..=top).map(|d| (d, kbasis(ideal, d))).collect()
}

/// Matrix of `∂ : source → target` in internal degree `d`, as target rows.
fn differential_matrix(
    field: &PrimeField,
    source: &Layer,
    src: &Basis,
    target: &Layer,
    tgt: &Basis,
) -> Vec<Vec<u32>> {
    let mut rows = vec![vec![0u32; src.elems.len()]; tgt.elems.len()];
    for (col, (g, m)) in src.elems.iter().enumerate() {
        for (h, mh, c) in &source.images[*g] {
            let prod = m.mul(mh);
            if target.ring.contains(&prod) {
                continue;
            }
            let row = tgt.index[&(*h, prod)];
            rows[row][col] = field.add(rows[row][col], *c);
        }
    }
    rows
}

/// Re-expresses `x_v · w` for a degree-`d − 1` vector `w` in the degree-`d`
/// basis.
fn multiply_by_var(
    ring: &MonomialIdeal,
    w: &[u32],
    from: &Basis,
    to: &Basis,
    var: &Monomial,
) -> Vec<u32> {
    let mut out = vec![0u32; to.elems.len()];
    for (i, &c) in w.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (g, m) = &from.elems[i];
        let prod = m.mul(var);
        if ring.contains(&prod) {
            continue;
        }
        out[to.index[&(*g, prod)]] = c;
    }
    out
}

struct DegreeKernel {
    degree: u32,
    basis: Basis,
    kernel: Vec<Vec<u32>>,
    audit: DegreeAudit,
}

fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Graded Betti numbers `β_{i,j}` for `i ≤ max_hom`.
///
/// When computing `β_i` the internal degrees scanned stop at
/// `D·(i+1)+1` (where `D` is the largest generator degree of the ring and
/// module ideals) or at `max_internal`, whichever is smaller. `β_i` is marked
/// complete only when the rule-based stop was reached within
/// `max_internal`, no new generator appeared in the last scanned degree, and
/// `β_{i−1}` was complete. Incomplete degrees are returned, flagged.
pub fn resolve(pres: &QuotientPresentation, opts: &ResolveOptions) -> Result<GradedBettiTable> {
    if (opts.max_internal as usize) < opts.max_hom {
        return Err(Error::validation(
            "max_internal",
            format!(
                "max_internal {} is below max_hom {}",
                opts.max_internal, opts.max_hom
            ),
        ));
    }
    let field = PrimeField::new(opts.characteristic)?;
    run_in_pool(opts.threads, || resolve_inner(pres, opts, field))
}

fn resolve_inner(
    pres: &QuotientPresentation,
    opts: &ResolveOptions,
    field: PrimeField,
) -> Result<GradedBettiTable> {
    let n = pres.num_vars();
    let big_d = pres.max_generator_degree();
    let top = opts.max_internal;
    let needed = big_d
        .saturating_mul(opts.max_hom as u32 + 1)
        .saturating_add(1)
        .min(top);
    let ring_std = standard_monomials(&pres.ideal, needed);
    let module_std = standard_monomials(&pres.module_ideal, needed);
    let vars: Vec<Monomial> = (0..n).map(|v| Monomial::var(n, v)).collect();

    let mut entries = BTreeMap::new();
    let mut complete = vec![true];
    let mut audit = Vec::new();
    entries.insert((0, 0), 1);

    // The module itself, as a quotient of one free generator.
    let mut prev = Layer {
        ring: pres.module_ideal.clone(),
        degrees: vec![0],
        images: vec![Vec::new()],
    };
    let mut prev_std = &module_std;
    let mut cur = Layer {
        ring: pres.ideal.clone(),
        degrees: vec![0],
        images: vec![vec![(0, Monomial::one(n), 1)]],
    };

    for i in 1..=opts.max_hom {
        // Generators of F_i come from ker(∂_{i−1} : F_{i−1} → F_{i−2}).
        let rule_cutoff = big_d.saturating_mul(i as u32 + 1).saturating_add(1);
        let cutoff = rule_cutoff.min(top);
        let Some(&lo) = cur.degrees.iter().min() else {
            // F_{i−1} = 0, the resolution has ended.
            complete.push(complete[i - 1]);
            continue;
        };
        if lo > cutoff {
            complete.push(false);
            prev = cur;
            cur = Layer {
                ring: pres.ideal.clone(),
                degrees: Vec::new(),
                images: Vec::new(),
            };
            prev_std = &ring_std;
            continue;
        }

        let src_bases = Bases {
            layer: &cur,
            standard: &ring_std,
        };
        let tgt_bases = Bases {
            layer: &prev,
            standard: prev_std,
        };
        let kernels: Vec<DegreeKernel> = (lo..=cutoff)
            .into_par_iter()
            .map(|d| {
                let src = src_bases.at(d);
                let tgt = tgt_bases.at(d);
                let rows = differential_matrix(&field, &cur, &src, &prev, &tgt);
                let k = field.kernel(rows, src.elems.len());
                DegreeKernel {
                    degree: d,
                    audit: DegreeAudit {
                        hom: i - 1,
                        internal: d,
                        columns: src.elems.len(),
                        rank: k.rank,
                        kernel_dim: k.basis.len(),
                    },
                    basis: src,
                    kernel: k.basis,
                }
            })
            .collect();

        let mut next = Layer {
            ring: pres.ideal.clone(),
            degrees: Vec::new(),
            images: Vec::new(),
        };
        let mut new_at_cutoff = 0;
        for (idx, dk) in kernels.iter().enumerate() {
            audit.push(dk.audit);
            let mut span = EchelonSpan::new(field);
            if idx > 0 {
                let below = &kernels[idx - 1];
                for w in &below.kernel {
                    for v in &vars {
                        span.insert(&multiply_by_var(&pres.ideal, w, &below.basis, &dk.basis, v));
                    }
                }
            }
            let mut fresh = 0u64;
            for k in &dk.kernel {
                if span.insert(k) {
                    fresh += 1;
                    next.degrees.push(dk.degree);
                    next.images.push(
                        k.iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(j, &c)| {
                                let (g, m) = &dk.basis.elems[j];
                                (*g, m.clone(), c)
                            })
                            .collect(),
                    );
                }
            }
            if fresh > 0 {
                entries.insert((i, dk.degree), fresh);
            }
            if dk.degree == cutoff {
                new_at_cutoff = fresh;
            }
        }
        complete.push(complete[i - 1] && rule_cutoff <= top && new_at_cutoff == 0);

        prev = cur;
        prev_std = &ring_std;
        cur = next;
    }

    Ok(GradedBettiTable {
        entries,
        max_hom: opts.max_hom,
        max_internal: top,
        complete,
        audit,
    })
}

/// `β_0, ..., β_{max_hom}` as a series. Fails rather than report a
/// coefficient from an incomplete homological degree.
pub fn poincare_truncation(
    pres: &QuotientPresentation,
    opts: &ResolveOptions,
) -> Result<TruncatedSeries> {
    let table = resolve(pres, opts)?;
    series_from_table(&table)
}

pub fn series_from_table(table: &GradedBettiTable) -> Result<TruncatedSeries> {
    if let Some(i) = table.complete.iter().position(|&c| !c) {
        return Err(Error::BudgetExceeded {
            hom_degree: i,
            max_internal: table.max_internal as usize,
        });
    }
    let totals = table.totals();
    Ok(TruncatedSeries::new(
        totals.into_iter().map(Into::into).collect(),
    ))
}

/// Projective dimension of `P/ideal` over the polynomial ring `P`.
pub fn projective_dimension(ideal: &MonomialIdeal, opts: &ResolveOptions) -> Result<usize> {
    let n = ideal.num_vars();
    let pres = QuotientPresentation::anonymous(MonomialIdeal::zero(n), ideal.clone())?;
    // Hilbert's syzygy theorem: pd ≤ n.
    let opts = ResolveOptions {
        max_hom: n,
        ..*opts
    };
    let table = resolve(&pres, &opts)?;
    let totals = series_from_table(&table)?;
    Ok(totals
        .coeffs()
        .iter()
        .rposition(|c| *c != 0.into())
        .unwrap_or(0))
}

/// Depth of `P/ideal` by Auslander–Buchsbaum: `n − pd`.
pub fn depth_monomial(ideal: &MonomialIdeal, opts: &ResolveOptions) -> Result<usize> {
    Ok(ideal.num_vars() - projective_dimension(ideal, opts)?)
}

/// Embedding dimension of `P/ideal`: variables not killed by a linear
/// generator.
pub fn edim_monomial(ideal: &MonomialIdeal) -> usize {
    ideal.num_vars() - ideal.linear_part()
}
