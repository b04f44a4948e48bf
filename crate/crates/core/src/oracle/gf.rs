//! Dense linear algebra over a prime field GF(p) with word-sized `p`.

use crate::error::{Error, Result};

pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::validation("char", format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        // Fermat: a^(p-2)
        let mut base = a as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        let m = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc as u32
    }

    /// Reduced row echelon form in place; returns the pivot column of each
    /// nonzero row, in order. Rows past the rank are left zero.
    pub fn rref(&self, rows: &mut [Vec<u32>], ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, found);
            let inv = self.inv(rows[r][c]);
            if inv != 1 {
                for x in rows[r].iter_mut() {
                    *x = self.mul(*x, inv);
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if y != 0 {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of `{v : A v = 0}` for the `rows × ncols` matrix `A`, one vector
    /// per free column of the reduced echelon form. The basis depends only on
    /// `A`, not on how it was computed.
    pub fn kernel(&self, mut rows: Vec<Vec<u32>>, ncols: usize) -> Kernel {
        let pivots = self.rref(&mut rows, ncols);
        let rank = pivots.len();
        let mut is_pivot = vec![false; ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis = (0..ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; ncols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(rows[r][free]);
                }
                v
            })
            .collect();
        Kernel { basis, rank, ncols }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub basis: Vec<Vec<u32>>,
    pub rank: usize,
    pub ncols: usize,
}

/// A subspace kept in echelon form so new vectors can be tested for
/// membership and added one at a time.
#[derive(Debug, Clone)]
pub struct EchelonSpan {
    field: PrimeField,
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonSpan {
    pub fn new(field: PrimeField) -> Self {
        EchelonSpan {
            field,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row).skip(*pc) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]);
        for x in w.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        // Keep the stored rows mutually reduced so `reduce` is one pass.
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&w).skip(pc) {
                    if y != 0 {
                        *x = self.field.sub(*x, self.field.mul(c, y));
                    }
                }
            }
        }
        self.rows.push((pc, w));
        true
    }
}
