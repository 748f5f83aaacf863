//! Graded Betti numbers of the Orlik-Terao algebra from Koszul strands.
//!
//! `b_{i,j} = dim Tor_i(C, k)_j` is the homology of
//! `L^{i+1} V (x) C_{s-1} -> L^i V (x) C_s -> L^{i-1} V (x) C_{s+1}` with
//! `s = j - i`. The full table is computed after cutting `C` by three
//! generic linear forms; the cut is certified to be a regular sequence
//! before it is used. [`tor_dimension`] runs the strands on all `d`
//! variables and serves as an independent check.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde_json::{Map, Value};

use crate::arrangement::Arrangement;
use crate::circuits::combinations;
use crate::error::{Error, Result};
use crate::exactmath::modular::{sparse_rank, CONFIRMATION_PRIMES, DEFAULT_PRIME};
use crate::exactmath::{binomial, rank, rat, Field, RatMatrix, MPoly, PrimeField, Rational, Rationals};
use crate::orlik_terao::{ideal_spanning_rows, terao_series, GradedPiece, MonomialBasis, OTPresentation};
use crate::rng;

type Row<E> = Vec<(usize, E)>;

/// Graded pieces `C_0..C_top` of a standard graded quotient together with
/// the multiplication maps `y_k : C_q -> C_{q+1}`.
pub struct QuotientAlgebra<F: Field> {
    field: F,
    nvars: usize,
    dims: Vec<usize>,
    // mult[q][k][b] = image of y_k times basis element b of C_q
    mult: Vec<Vec<Vec<Row<F::Elem>>>>,
}

impl<F: Field + Clone> QuotientAlgebra<F> {
    /// Quotient of `k[y_1..y_n]` by the ideal spanned by the generators,
    /// materialized in degrees `0..=top`.
    pub fn new(field: F, nvars: usize, generators: &[MPoly], top: u32) -> Result<Self> {
        let mut pieces = Vec::new();
        for j in 0..=top {
            let basis = MonomialBasis::new(nvars, j);
            let rows = ideal_spanning_rows(generators, &basis, j);
            pieces.push(GradedPiece::from_rows(field.clone(), nvars, j, &rows)?);
        }
        Ok(Self::from_pieces(field, nvars, &pieces))
    }

    fn from_pieces(field: F, nvars: usize, pieces: &[GradedPiece<F>]) -> Self {
        let dims: Vec<usize> = pieces.iter().map(GradedPiece::dim_quotient).collect();
        let mut mult = Vec::new();
        for q in 0..pieces.len().saturating_sub(1) {
            let next = &pieces[q + 1];
            let per_var: Vec<Vec<Row<F::Elem>>> = (0..nvars)
                .map(|k| {
                    pieces[q]
                        .standard_monomials()
                        .iter()
                        .map(|m| {
                            let t = next.ambient().index_of(&m.mul(&crate::exactmath::Monomial::var(nvars, k)));
                            next.monomial_class(t)
                                .into_iter()
                                .enumerate()
                                .filter(|(_, x)| !field.is_zero(x))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            mult.push(per_var);
        }
        QuotientAlgebra { field, nvars, dims, mult }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `dim C_q`, available for `q <= top`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn dim(&self, q: isize) -> usize {
        if q < 0 {
            0
        } else {
            self.dims[q as usize]
        }
    }

    /// Rows of the Koszul differential `L^i (x) C_s -> L^{i-1} (x) C_{s+1}`.
    pub fn koszul_rows(&self, i: usize, s: usize) -> (usize, Vec<Row<F::Elem>>) {
        let n = self.nvars;
        if i == 0 || i > n || self.dim(s as isize) == 0 {
            return (0, Vec::new());
        }
        assert!(s + 1 < self.dims.len(), "degree {} not materialized", s + 1);
        let (dom_sets, _) = subsets(n, i);
        let (_, cod_index) = subsets(n, i - 1);
        let ds = self.dims[s];
        let dt = self.dims[s + 1];
        let f = &self.field;
        let mut rows = Vec::with_capacity(dom_sets.len() * ds);
        for set in &dom_sets {
            for b in 0..ds {
                let mut row: Row<F::Elem> = Vec::new();
                for (t, &k) in set.iter().enumerate() {
                    let mut rest = set.clone();
                    rest.remove(t);
                    let base = cod_index[&rest] * dt;
                    for (c, x) in &self.mult[s][k][b] {
                        let v = if t % 2 == 0 { x.clone() } else { f.neg(x) };
                        row.push((base + c, v));
                    }
                }
                row.sort_by_key(|&(c, _)| c);
                rows.push(row);
            }
        }
        (binomial(n as u64, (i - 1) as u64) as usize * dt, rows)
    }

    /// Homology at `L^i (x) C_s` with ranks supplied by `rank`.
    pub fn homology<R>(&self, i: usize, s: usize, rank: R) -> usize
    where
        R: Fn(usize, &[Row<F::Elem>]) -> usize,
    {
        let n = self.nvars;
        if i > n {
            return 0;
        }
        let size = binomial(n as u64, i as u64) as usize * self.dim(s as isize);
        if size == 0 {
            return 0;
        }
        let out = if i == 0 {
            0
        } else {
            let (cols, rows) = self.koszul_rows(i, s);
            rank(cols, &rows)
        };
        let inc = if s == 0 || i == n {
            0
        } else {
            let (cols, rows) = self.koszul_rows(i + 1, s - 1);
            rank(cols, &rows)
        };
        size - out - inc
    }
}

/// All `k`-subsets of `0..n` in lexicographic order, with their positions.
fn subsets(n: usize, k: usize) -> (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>) {
    let mut list = Vec::new();
    combinations(n, k, |s| list.push(s.to_vec()));
    let index = list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    (list, index)
}

// Fraction-free elimination keeps entry growth in check on these strands.
fn exact_rank(cols: usize, rows: &[Row<Rational>]) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let mut m = RatMatrix::zeros(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row {
            m.set(r, *c, x.clone());
        }
    }
    rank(&m)
}

/// How a Betti number or table was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Exact,
    Primes(Vec<u64>),
}

impl Certificate {
    pub fn describe(&self) -> String {
        match self {
            Certificate::Exact => "exact".into(),
            Certificate::Primes(ps) => format!("primes {ps:?}"),
        }
    }
}

/// One certified Betti number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorValue {
    pub value: usize,
    pub certificate: Certificate,
}

/// Size (rows x columns) up to which strands are eliminated over the rationals.
pub const EXACT_STRAND_LIMIT: usize = 250_000;

/// `dim Tor_i(C(A), k)_j` from the Koszul strand on all `d` variables.
///
/// Strands with `j - i > 2` are zero on plane arrangements and are only
/// computed when `verify_regularity` is set.
pub fn tor_dimension(a: &Arrangement, i: usize, j: usize, verify_regularity: bool) -> Result<TorValue> {
    let d = a.len();
    if j < i || i > d || (j - i > 2 && !verify_regularity) {
        return Ok(TorValue { value: 0, certificate: Certificate::Exact });
    }
    let s = j - i;
    let top = (s + 1) as u32;
    let p = OTPresentation::new(a, d.min(4));
    let expected = terao_series(a, top as usize).coeffs;
    let n = d as u64;
    let largest = |q: usize, k: u64| binomial(n, k) as usize * expected[q] as usize;
    let out_size = if i == 0 { 0 } else { largest(s, i as u64) * largest(s + 1, i as u64 - 1) };
    let in_size = if s == 0 || i == d { 0 } else { largest(s - 1, i as u64 + 1) * largest(s, i as u64) };
    if out_size.max(in_size) <= EXACT_STRAND_LIMIT {
        let alg = QuotientAlgebra::new(Rationals, d, p.generators(), top)?;
        check_dims(alg.dims(), &expected)?;
        let value = alg.homology(i, s, exact_rank);
        return Ok(TorValue { value, certificate: Certificate::Exact });
    }
    let mut seen: Vec<(u64, usize)> = Vec::new();
    for prime in std::iter::once(DEFAULT_PRIME).chain(CONFIRMATION_PRIMES) {
        let field = PrimeField::new(prime);
        let Ok(alg) = QuotientAlgebra::new(field, d, p.generators(), top) else { continue };
        if check_dims(alg.dims(), &expected).is_err() {
            continue;
        }
        let value = alg.homology(i, s, |cols, rows| sparse_rank(field, cols, rows));
        seen.push((prime, value));
        // modular ranks can only drop, so homology can only grow
        let best = seen.iter().map(|&(_, v)| v).min().unwrap_or(0);
        let agreeing: Vec<u64> = seen.iter().filter(|&&(_, v)| v == best).map(|&(q, _)| q).collect();
        if agreeing.len() >= 2 {
            return Ok(TorValue { value: best, certificate: Certificate::Primes(agreeing) });
        }
    }
    Err(Error::Unconfirmed(format!("Tor_{i} in degree {j}: {seen:?}")))
}

fn check_dims(got: &[usize], expected: &[i64]) -> Result<()> {
    for (q, (&g, &e)) in got.iter().zip(expected).enumerate() {
        if g as i64 != e {
            return Err(Error::Internal(format!("dim C_{q} = {g}, Hilbert series predicts {e}")));
        }
    }
    Ok(())
}

/// Graded Betti numbers `b_{i,j}` of `C(A)` over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), usize>,
    pub certificate: Certificate,
}

impl BettiTable {
    pub fn from_entries(entries: BTreeMap<(usize, usize), usize>, certificate: Certificate) -> Self {
        let entries = entries.into_iter().filter(|&(_, v)| v > 0).collect();
        BettiTable { entries, certificate }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.entries
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    /// Total Betti numbers `sum_j b_{i,j}` for `i = 0..=pd`.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.projective_dimension() + 1];
        for (&(i, _), &v) in &self.entries {
            t[i] += v;
        }
        t
    }

    /// Row `r` of the table: `b_{i,i+r}` for `i = 0..=pd`.
    pub fn row(&self, r: usize) -> Vec<usize> {
        (0..=self.projective_dimension()).map(|i| self.get(i, i + r)).collect()
    }

    /// Coefficients of `sum (-1)^i b_{i,j} t^j`.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let deg = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut k = vec![0i64; deg + 1];
        for (&(i, j), &v) in &self.entries {
            k[j] += if i % 2 == 0 { v as i64 } else { -(v as i64) };
        }
        k
    }

    /// Table in the usual layout: header of column indices, totals, then
    /// one row per strand with `-` for zero.
    pub fn render_text(&self) -> String {
        let pd = self.projective_dimension();
        let mut grid: Vec<Vec<String>> = Vec::new();
        grid.push((0..=pd).map(|i| i.to_string()).collect());
        grid.push(self.totals().iter().map(usize::to_string).collect());
        for r in 0..=self.regularity() {
            grid.push(self.row(r).iter().map(|&v| if v == 0 { "-".to_string() } else { v.to_string() }).collect());
        }
        let widths: Vec<usize> = (0..=pd).map(|c| grid.iter().map(|row| row[c].len()).max().unwrap_or(1)).collect();
        let mut labels = vec![String::new(), "total:".to_string()];
        labels.extend((0..=self.regularity()).map(|r| format!("{r}:")));
        let lw = labels.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (label, row) in labels.iter().zip(&grid) {
            let mut line = format!("{label:>lw$}");
            for (c, cell) in row.iter().enumerate() {
                line.push(' ');
                line.push_str(&format!("{cell:>w$}", w = widths[c]));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// `{"i,j": b_ij}` over the nonzero entries, ordered by `(i, j)`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (&(i, j), &v) in &self.entries {
            m.insert(format!("{i},{j}"), Value::from(v));
        }
        Value::Object(m)
    }
}

/// `h(t) (1-t)^(d-3)`, which a Betti table must reproduce as its K-polynomial.
pub fn expected_k_polynomial(a: &Arrangement) -> Vec<i64> {
    let mut k = terao_series(a, 0).h_poly;
    for _ in 0..a.len() - 3 {
        let mut next = vec![0i64; k.len() + 1];
        for (i, c) in k.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        k = next;
    }
    while k.len() > 1 && k.last() == Some(&0) {
        k.pop();
    }
    k
}

/// Linear forms used to cut `C(A)` down to an Artinian algebra.
#[derive(Clone, Debug)]
pub struct ArtinianReduction {
    /// `y_{e+t} -> sum_i coeffs[t][i] y_i` with `e = d - 3`.
    pub coeffs: Vec<Vec<Rational>>,
    pub attempts: usize,
    pub algebra_dims: Vec<usize>,
}

/// Substitute three generic linear forms for the last three variables and
/// check the resulting quotient has the Hilbert function `h(t)` and vanishes
/// in degree 3. Length equal to multiplicity for a linear system of
/// parameters makes the three forms a regular sequence on `C(A)`, so Betti
/// numbers over `R` and over the smaller ring coincide.
pub fn artinian_reduction(a: &Arrangement) -> Result<(QuotientAlgebra<Rationals>, ArtinianReduction)> {
    let d = a.len();
    let e = d - 3;
    let p = OTPresentation::new(a, d.min(4));
    let h = terao_series(a, 0).h_poly;
    let mut r = rng::stream(0x6b6f737a);
    for attempt in 1..=rng::MAX_REDRAWS {
        let coeffs: Vec<Vec<Rational>> =
            (0..3).map(|_| (0..e).map(|_| rat(r.gen_range(-3..=3))).collect()).collect();
        let mut images: Vec<MPoly> = (0..e).map(|k| MPoly::var(e, k)).collect();
        for row in &coeffs {
            let mut form = MPoly::zero(e);
            for (k, c) in row.iter().enumerate() {
                form = &form + &MPoly::var(e, k).scale(c);
            }
            images.push(form);
        }
        let gens: Vec<MPoly> = p.generators().iter().map(|g| g.substitute(&images)).filter(|g| !g.is_zero()).collect();
        let alg = QuotientAlgebra::new(Rationals, e, &gens, 3)?;
        let expected: Vec<usize> = (0..=3).map(|j| h.get(j).copied().unwrap_or(0) as usize).collect();
        if alg.dims() == expected.as_slice() {
            let dims = alg.dims().to_vec();
            return Ok((alg, ArtinianReduction { coeffs, attempts: attempt, algebra_dims: dims }));
        }
    }
    Err(Error::Degenerate(rng::MAX_REDRAWS, "no regular sequence of linear forms found".into()))
}

/// All Betti numbers of `C(A)`, exact over the rationals.
pub fn betti_table(a: &Arrangement) -> Result<BettiTable> {
    let (alg, _) = artinian_reduction(a)?;
    let e = alg.nvars();
    let top = alg.dims().iter().rposition(|&x| x > 0).unwrap_or(0);
    let jobs: Vec<(usize, usize)> = (0..=e).flat_map(|i| (0..=top).map(move |s| (i, s))).collect();
    let values: Vec<usize> = {
        use rayon::prelude::*;
        jobs.par_iter().map(|&(i, s)| alg.homology(i, s, exact_rank)).collect()
    };
    let entries = jobs.iter().zip(values).map(|(&(i, s), v)| ((i, i + s), v)).collect();
    Ok(BettiTable::from_entries(entries, Certificate::Exact))
}

/// Value of `2(C(d,3) - 1) - (d-3)(sum mu + 1)` with the hypothesis check
/// that `I` has no minimal cubic generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B23Report {
    pub value: i64,
    pub new_cubic_generators: usize,
    pub hypothesis_holds: bool,
}

pub fn b23_formula(a: &Arrangement) -> Result<B23Report> {
    let d = a.len() as i64;
    let value = 2 * (binomial(d as u64, 3) as i64 - 1) - (d - 3) * (a.mu_sum() as i64 + 1);
    let p = OTPresentation::new(a, a.len().min(4));
    let cubics = crate::orlik_terao::new_generators_in_degree(&p, 3)?;
    Ok(B23Report { value, new_cubic_generators: cubics, hypothesis_holds: cubics == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::builtin;

    #[test]
    fn braid_table() {
        let t = betti_table(&builtin("braid-a3").unwrap()).unwrap();
        assert_eq!(t.totals(), vec![1, 4, 5, 2]);
        assert_eq!(t.row(1), vec![0, 4, 2, 0]);
        assert_eq!(t.row(2), vec![0, 0, 3, 2]);
        assert_eq!(t.regularity(), 2);
    }

    #[test]
    fn braid_direct_strands() {
        let a = builtin("braid-a3").unwrap();
        let t = betti_table(&a).unwrap();
        for i in 0..=6 {
            for s in 0..=2 {
                let v = tor_dimension(&a, i, i + s, false).unwrap();
                assert_eq!(v.value, t.get(i, i + s), "b_{i},{}", i + s);
            }
        }
        assert_eq!(tor_dimension(&a, 2, 4, false).unwrap().value, 3);
        assert_eq!(tor_dimension(&a, 0, 0, false).unwrap().value, 1);
    }

    #[test]
    fn four_generic_lines_are_a_hypersurface() {
        let t = betti_table(&builtin("ex-2-4").unwrap()).unwrap();
        assert_eq!(t.entries().len(), 2);
        assert_eq!(t.get(1, 3), 1);
    }

    #[test]
    fn text_rendering() {
        let t = betti_table(&builtin("braid-a3").unwrap()).unwrap();
        let expected = "       0 1 2 3\ntotal: 1 4 5 2\n    0: 1 - - -\n    1: - 4 2 -\n    2: - - 3 2\n";
        assert_eq!(t.render_text(), expected);
        assert_eq!(t.to_json()["2,4"], 3);
    }

    #[test]
    fn b23_on_braid() {
        let r = b23_formula(&builtin("braid-a3").unwrap()).unwrap();
        assert_eq!(r.value, 2);
        assert!(r.hypothesis_holds);
        let r = b23_formula(&builtin("9_3_1").unwrap()).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.new_cubic_generators, 4);
    }
}
