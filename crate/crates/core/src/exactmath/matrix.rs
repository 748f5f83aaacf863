//! Dense matrices and exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{Field, Rational, Rationals};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Matrix of exact rationals.
pub type RatMatrix = Matrix<Rational>;

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Build from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }
}

/// Exact rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers; the elimination then stays in
/// `BigInt` with exact divisions by the previous pivot.
pub fn rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| integer_row(m.row(r))).collect();
    bareiss_rank(&mut a, m.cols())
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in row {
        lcm = lcm.lcm(q.denom());
    }
    row.iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            for j in (c + 1)..cols {
                let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form over the field `f`, in place. Returns the pivot
/// columns in increasing order; the first `pivots.len()` rows hold the
/// nonzero rows with pivot entries equal to one.
pub fn rref_in_place<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = f.inv(m.get(r, c));
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        let pivot_row: Vec<F::Elem> = m.row(r).to_vec();
        for i in 0..m.rows {
            if i == r || f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..m.cols {
                if f.is_zero(&pivot_row[j]) {
                    continue;
                }
                let v = f.mul_sub(m.get(i, j), &factor, &pivot_row[j]);
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel, returned as the columns of a `cols x k` matrix.
pub fn kernel_basis(m: &RatMatrix) -> RatMatrix {
    kernel_basis_over(&Rationals, m)
}

/// Right-kernel basis over an arbitrary field context.
pub fn kernel_basis_over<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let vectors = kernel_vectors(f, m);
    let k = vectors.len();
    let mut out = Matrix::filled(m.cols, k, f.zero());
    for (j, v) in vectors.into_iter().enumerate() {
        for (i, x) in v.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    out
}

/// Kernel vectors, one per free column, in increasing free-column order.
pub fn kernel_vectors<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut e = m.clone();
    let pivots = rref_in_place(f, &mut e);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(e.get(r, free));
        }
        out.push(v);
    }
    out
}

/// Solve `m * x = b`; returns one solution or `None` if inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    let cols = m.cols() + 1;
    let rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut aug = Matrix::from_rows(cols, rows);
    let pivots = rref_in_place(&Rationals, &mut aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, m.cols()).clone();
    }
    Some(x)
}

/// Rank over an arbitrary field context (by row reduction).
pub fn rank_over<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut e = m.clone();
    rref_in_place(f, &mut e).len()
}

/// Rank of a matrix given by sparse rows, eliminated densely.
pub fn rank_over_rows<F: Field>(f: &F, cols: usize, rows: &[Vec<(usize, F::Elem)>]) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let mut data = vec![f.zero(); rows.len() * cols];
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row {
            data[r * cols + c] = x.clone();
        }
    }
    let mut m = Matrix::from_vec(rows.len(), cols, data);
    rref_in_place(f, &mut m).len()
}

/// Matrix product over the rationals.
pub fn mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    assert_eq!(a.cols(), b.rows(), "inner dimensions");
    let mut out = RatMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols() {
                let v = out.get(i, j) + x * b.get(k, j);
                out.set(i, j, v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{rat, PrimeField};

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&RatMatrix::zeros(2, 5)), 0);
        assert_eq!(rank(&RatMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel_basis(&RatMatrix::identity(2));
        assert_eq!(k.cols(), 0);
        assert_eq!(k.rows(), 2);
    }

    #[test]
    fn kernel_of_row_vector() {
        let k = kernel_basis(&RatMatrix::from_i64_rows(&[&[1, 1]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), &(-k.get(1, 0)));
        assert!(!k.get(0, 0).is_zero());
    }

    #[test]
    fn dependency_of_four_forms() {
        // columns: x1, x2, x3, x1+x2+x3
        let m = RatMatrix::from_i64_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        let v: Vec<Rational> = k.column(0);
        let scale = v[0].clone();
        let normalized: Vec<Rational> = v.iter().map(|x| x / &scale).collect();
        assert_eq!(normalized, vec![rat(1), rat(1), rat(1), rat(-1)]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1], &[1, -1]]);
        let x = solve(&m, &[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let singular = RatMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert!(solve(&singular, &[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn modular_rank_drops_only_at_bad_primes() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2], &[3, 13]]); // det = 7
        assert_eq!(rank(&m), 2);
        let f7 = PrimeField::new(7);
        let m7 = Matrix::from_rows(2, m.to_rows().iter().map(|r| r.iter().map(|q| f7.from_rational(q).unwrap()).collect()).collect());
        assert_eq!(rank_over(&f7, &m7), 1);
        let f11 = PrimeField::new(11);
        let m11 = Matrix::from_rows(2, m.to_rows().iter().map(|r| r.iter().map(|q| f11.from_rational(q).unwrap()).collect()).collect());
        assert_eq!(rank_over(&f11, &m11), 2);
    }
}
