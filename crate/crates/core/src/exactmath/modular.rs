//! Sparse elimination over word-sized prime fields.
//!
//! Large Koszul strands and high-degree ideal slices are ranked modulo
//! primes. A modular rank never exceeds the rational rank, so a value is only
//! reported once two distinct primes agree on the largest rank seen.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::{Field, PrimeField, Rational};
use crate::error::{Error, Result};

/// Default modulus for the fast path.
pub const DEFAULT_PRIME: u64 = 32003;
/// Confirmation moduli tried after the default one.
pub const CONFIRMATION_PRIMES: [u64; 3] = [2147483629, 2147483587, 2147483563];

/// Sparse row: strictly increasing column indices with nonzero residues.
pub type SparseRow = Vec<(usize, u64)>;

/// Incremental row echelon form over `Z/pZ`.
///
/// Rows are inserted one at a time; each insertion reports whether the row
/// was independent of everything inserted before.
pub struct ModEchelon {
    field: PrimeField,
    ncols: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<SparseRow>,
    acc: Vec<u64>,
    queued: Vec<bool>,
}

impl ModEchelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        ModEchelon {
            field,
            ncols,
            pivot_of_col: vec![None; ncols],
            rows: Vec::new(),
            acc: vec![0; ncols],
            queued: vec![false; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Columns that carry a pivot.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_of_col[c].is_some()).collect()
    }

    /// Insert a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: &[(usize, u64)]) -> bool {
        let p = self.field.modulus();
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
        for &(c, v) in row {
            let v = v % p;
            if v == 0 {
                continue;
            }
            self.acc[c] = (self.acc[c] + v) % p;
            if !self.queued[c] {
                self.queued[c] = true;
                heap.push(Reverse(c));
            }
        }
        while let Some(Reverse(c)) = heap.pop() {
            self.queued[c] = false;
            let a = self.acc[c];
            if a == 0 {
                continue;
            }
            match self.pivot_of_col[c] {
                Some(ri) => {
                    self.acc[c] = 0;
                    let factor = p - a;
                    for &(col, v) in &self.rows[ri] {
                        if col == c {
                            continue;
                        }
                        self.acc[col] = (self.acc[col] + factor * v) % p;
                        if !self.queued[col] {
                            self.queued[col] = true;
                            heap.push(Reverse(col));
                        }
                    }
                }
                None => {
                    let inv = self.field.inv(&a);
                    let mut new_row: SparseRow = vec![(c, 1)];
                    self.acc[c] = 0;
                    let mut rest: Vec<usize> = heap.drain().map(|Reverse(x)| x).collect();
                    rest.sort_unstable();
                    for col in rest {
                        self.queued[col] = false;
                        let v = self.acc[col];
                        if v != 0 {
                            new_row.push((col, v * inv % p));
                            self.acc[col] = 0;
                        }
                    }
                    self.pivot_of_col[c] = Some(self.rows.len());
                    self.rows.push(new_row);
                    return true;
                }
            }
        }
        false
    }
}

/// Rank of a sparse matrix over `Z/pZ`.
pub fn sparse_rank(field: PrimeField, ncols: usize, rows: &[SparseRow]) -> usize {
    let mut ech = ModEchelon::new(field, ncols);
    for r in rows {
        ech.insert(r);
        if ech.rank() == ncols {
            break;
        }
    }
    ech.rank()
}

/// Reduce a sparse rational row modulo `p`; `None` if a denominator vanishes.
pub fn reduce_row(field: &PrimeField, row: &[(usize, Rational)]) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(row.len());
    for (c, q) in row {
        let v = field.from_rational(q)?;
        if v != 0 {
            out.push((*c, v));
        }
    }
    Some(out)
}

/// Outcome of a multi-prime rank computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfirmedRank {
    pub rank: usize,
    /// The primes whose ranks agreed on `rank`.
    pub primes: Vec<u64>,
}

/// Rank confirmed by two primes.
///
/// `build` produces the sparse rows of the matrix reduced modulo the given
/// prime, or `None` when the prime divides a denominator (that prime is then
/// skipped). The first prime is `first`, followed by [`CONFIRMATION_PRIMES`].
pub fn confirmed_rank<B>(ncols: usize, first: u64, build: B) -> Result<ConfirmedRank>
where
    B: Fn(&PrimeField) -> Option<Vec<SparseRow>>,
{
    let mut seen: Vec<(u64, usize)> = Vec::new();
    let candidates = std::iter::once(first).chain(CONFIRMATION_PRIMES.iter().copied().filter(|&q| q != first));
    for p in candidates {
        let field = PrimeField::new(p);
        let Some(rows) = build(&field) else { continue };
        let r = sparse_rank(field, ncols, &rows);
        seen.push((p, r));
        let best = seen.iter().map(|&(_, r)| r).max().unwrap_or(0);
        let agreeing: Vec<u64> = seen.iter().filter(|&&(_, r)| r == best).map(|&(p, _)| p).collect();
        if agreeing.len() >= 2 {
            return Ok(ConfirmedRank { rank: best, primes: agreeing });
        }
    }
    Err(Error::Unconfirmed(format!("modular ranks never agreed: {seen:?}")))
}
