//! The Orlik-Terao ideal `I` and algebra `C(A) = R/I` with
//! `R = Q[y_1, ..., y_d]`.
//!
//! `I` is the kernel of `y_k -> l_k = alpha / alpha_k`, so ideal membership
//! is decided by substitution. Graded pieces are echelonized spans of
//! monomial multiples of the circuit relations.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, Triple};
use crate::circuits::{circuit_relation, default_max_size, enumerate_circuits, Circuit};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{rref_in_place, solve};
use crate::exactmath::modular::{confirmed_rank, ModEchelon, SparseRow, DEFAULT_PRIME};
use crate::exactmath::{binomial, monomials_of_degree, Field, MPoly, Matrix, Monomial, PrimeField, RatMatrix, Rational, Rationals};

/// Generators `f_Lambda` together with the forms `l_i`.
#[derive(Clone, Debug)]
pub struct OTPresentation {
    d: usize,
    circuits: Vec<Circuit>,
    generators: Vec<MPoly>,
    l_forms: Vec<MPoly>,
}

impl OTPresentation {
    /// Presentation using circuits of size at most `max_circuit_size`.
    pub fn new(a: &Arrangement, max_circuit_size: usize) -> Self {
        let d = a.len();
        let circuits = enumerate_circuits(a, max_circuit_size);
        let generators = circuits.iter().map(|c| circuit_relation(c, d)).collect();
        OTPresentation { d, circuits, generators, l_forms: a.l_forms() }
    }

    /// Presentation sufficient for graded pieces up to degree `j_max`.
    pub fn up_to_degree(a: &Arrangement, j_max: usize) -> Self {
        Self::new(a, default_max_size(a.len(), j_max))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn l_forms(&self) -> &[MPoly] {
        &self.l_forms
    }

    /// Largest degree for which the stored generators span `I_j`.
    pub fn degree_bound(&self) -> usize {
        self.circuits.iter().map(|c| c.len() - 1).max().unwrap_or(0).max(1)
    }

    /// Evaluate `g(l_1, ..., l_d)`.
    pub fn pullback(&self, g: &MPoly) -> MPoly {
        g.substitute(&self.l_forms)
    }
}

/// Monomials of one degree with a reverse index.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monos = monomials_of_degree(nvars, degree);
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }

    pub fn index_of(&self, m: &Monomial) -> usize {
        self.index[m]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    /// Coefficient vector of a homogeneous polynomial of this degree.
    pub fn coordinates(&self, p: &MPoly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p.terms() {
            v[self.index_of(m)] = c.clone();
        }
        v
    }

    pub fn polynomial(&self, coords: &[Rational]) -> MPoly {
        let nvars = self.monos.first().map_or(0, |m| m.0.len());
        let mut p = MPoly::zero(nvars);
        for (m, c) in self.monos.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

/// Sparse spanning rows of `I_j`: every generator of degree `e <= j` times
/// every monomial of degree `j - e`.
pub fn ideal_spanning_rows(generators: &[MPoly], basis: &MonomialBasis, j: u32) -> Vec<Vec<(usize, Rational)>> {
    let nvars = generators.first().map_or(0, MPoly::nvars);
    let mut rows = Vec::new();
    for g in generators {
        let e = g.total_degree().unwrap_or(0);
        if e > j {
            continue;
        }
        for m in monomials_of_degree(nvars, j - e) {
            let mut row: Vec<(usize, Rational)> = g.terms().map(|(t, c)| (basis.index_of(&t.mul(&m)), c.clone())).collect();
            row.sort_by_key(|&(c, _)| c);
            rows.push(row);
        }
    }
    rows
}

/// Echelonized degree-`j` slice of an ideal in a polynomial ring, with the
/// complementary monomial basis of the quotient.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    field: F,
    degree: u32,
    ambient: MonomialBasis,
    echelon: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    standard: Vec<usize>,
    standard_pos: Vec<Option<usize>>,
}

impl<F: Field + Clone> GradedPiece<F> {
    /// Echelonize the given spanning rows of `I_j`.
    pub fn from_rows(field: F, nvars: usize, degree: u32, rows: &[Vec<(usize, Rational)>]) -> Result<Self> {
        let ambient = MonomialBasis::new(nvars, degree);
        let n = ambient.len();
        let mut dense = Vec::with_capacity(rows.len() * n);
        for r in rows {
            let mut v = vec![field.zero(); n];
            for (c, q) in r {
                v[*c] = field
                    .from_rational(q)
                    .ok_or_else(|| Error::Invalid("coefficient denominator vanishes in the field".into()))?;
            }
            dense.extend(v);
        }
        let mut m = Matrix::from_vec(rows.len(), n, dense);
        let pivots = rref_in_place(&field, &mut m);
        let echelon: Vec<Vec<F::Elem>> = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let standard: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut standard_pos = vec![None; n];
        for (k, &c) in standard.iter().enumerate() {
            standard_pos[c] = Some(k);
        }
        Ok(GradedPiece { field, degree, ambient, echelon, pivots, standard, standard_pos })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient(&self) -> &MonomialBasis {
        &self.ambient
    }

    pub fn dim_ideal(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim_quotient(&self) -> usize {
        self.standard.len()
    }

    /// Monomials not leading in the echelon form: a basis of the quotient.
    pub fn standard_monomials(&self) -> Vec<&Monomial> {
        self.standard.iter().map(|&i| self.ambient.get(i)).collect()
    }

    /// Echelon rows (pivot entries equal to one) of the ideal slice.
    pub fn echelon_rows(&self) -> &[Vec<F::Elem>] {
        &self.echelon
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Quotient coordinates of the ambient monomial with index `t`.
    pub fn monomial_class(&self, t: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.standard.len()];
        if let Some(k) = self.standard_pos[t] {
            out[k] = f.one();
            return out;
        }
        let r = self.pivots.binary_search(&t).expect("non-standard monomial is a pivot");
        for (k, &c) in self.standard.iter().enumerate() {
            out[k] = f.neg(&self.echelon[r][c]);
        }
        out
    }

    /// Quotient coordinates of an ambient vector.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.standard.len()];
        for (t, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (k, y) in self.monomial_class(t).iter().enumerate() {
                if !f.is_zero(y) {
                    out[k] = f.add(&out[k], &f.mul(x, y));
                }
            }
        }
        out
    }

    /// True when the ambient vector lies in the ideal slice.
    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }
}

/// Exact `I_j` and `C(A)_j` over the rationals.
pub fn ideal_graded_piece(p: &OTPresentation, j: u32) -> GradedPiece<Rationals> {
    ideal_graded_piece_over(Rationals, p, j).expect("rational coefficients always map")
}

/// `I_j` over an arbitrary field context.
pub fn ideal_graded_piece_over<F: Field + Clone>(field: F, p: &OTPresentation, j: u32) -> Result<GradedPiece<F>> {
    assert!(j as usize <= p.degree_bound().max(j as usize), "presentation too small");
    let basis = MonomialBasis::new(p.d, j);
    let rows = ideal_spanning_rows(&p.generators, &basis, j);
    GradedPiece::from_rows(field, p.d, j, &rows)
}

/// How `dim I_j` was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Exact,
    Primes(Vec<u64>),
}

/// `dim I_j`: exact elimination for small slices, otherwise a sparse
/// modular rank confirmed by two primes.
pub fn ideal_dimension(p: &OTPresentation, j: u32, exact_limit: usize) -> Result<(usize, Certification)> {
    let basis = MonomialBasis::new(p.d, j);
    let rows = ideal_spanning_rows(&p.generators, &basis, j);
    if rows.len() * basis.len() <= exact_limit {
        let piece = GradedPiece::from_rows(Rationals, p.d, j, &rows)?;
        return Ok((piece.dim_ideal(), Certification::Exact));
    }
    let out = confirmed_rank(basis.len(), DEFAULT_PRIME, |f: &PrimeField| {
        rows.iter()
            .map(|r| crate::exactmath::modular::reduce_row(f, r))
            .collect::<Option<Vec<SparseRow>>>()
    })?;
    Ok((out.rank, Certification::Primes(out.primes)))
}

/// Default size (rows x columns) up to which slices are eliminated exactly.
pub const EXACT_LIMIT: usize = 120_000;

/// `dim C(A)_j = C(d-1+j, j) - dim I_j`.
pub fn b2_dimensions(p: &OTPresentation, j: u32) -> Result<usize> {
    let (dim_i, _) = ideal_dimension(p, j, EXACT_LIMIT)?;
    Ok(binomial((p.d - 1) as u64 + j as u64, j as u64) as usize - dim_i)
}

/// Number of minimal generators of degree `j`: `dim I_j - dim(R_1 * I_{j-1})`.
pub fn new_generators_in_degree(p: &OTPresentation, j: u32) -> Result<usize> {
    let full = ideal_graded_piece(p, j).dim_ideal();
    if j == 0 {
        return Ok(full);
    }
    let lower = ideal_graded_piece(p, j - 1);
    let basis = MonomialBasis::new(p.d, j);
    let lower_basis = lower.ambient();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for row in lower.echelon_rows() {
        for k in 0..p.d {
            let y = Monomial::var(p.d, k);
            let mut r: Vec<(usize, Rational)> = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(t, c)| (basis.index_of(&lower_basis.get(t).mul(&y)), c.clone()))
                .collect();
            r.sort_by_key(|&(c, _)| c);
            rows.push(r);
        }
    }
    let product = if rows.len() * basis.len() <= EXACT_LIMIT {
        GradedPiece::from_rows(Rationals, p.d, j, &rows)?.dim_ideal()
    } else {
        let f = PrimeField::new(DEFAULT_PRIME);
        let mut ech = ModEchelon::new(f, basis.len());
        for r in &rows {
            if let Some(sr) = crate::exactmath::modular::reduce_row(&f, r) {
                ech.insert(&sr);
            }
        }
        ech.rank()
    };
    Ok(full - product)
}

/// Taylor coefficients of `P(A, t/(1-t))` and the numerator over `(1-t)^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeraoSeries {
    pub coeffs: Vec<i64>,
    /// `h(t)` with `HS = h(t) / (1-t)^3`, trailing zeros removed.
    pub h_poly: Vec<i64>,
}

/// Expand the Hilbert series of `C(A)` from the Poincaré polynomial.
pub fn terao_series(a: &Arrangement, upto: usize) -> TeraoSeries {
    let pc = crate::arrangement::poincare_polynomial(a).coeffs;
    // h(t) = sum_r c_r t^r (1-t)^(3-r)
    let mut h = vec![0i64; 4];
    for (r, &c) in pc.iter().enumerate() {
        let k = 3 - r;
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            h[r + i] += c * sign * binomial(k as u64, i as u64) as i64;
        }
    }
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    // 1/(1-t)^3 = sum C(n+2, 2) t^n
    let coeffs = (0..=upto)
        .map(|n| {
            h.iter()
                .enumerate()
                .filter(|&(i, _)| i <= n)
                .map(|(i, &hi)| hi * binomial((n - i + 2) as u64, 2) as i64)
                .sum()
        })
        .collect();
    TeraoSeries { coeffs, h_poly: h }
}

/// Ideal membership by substitution `y_k -> l_k`.
pub fn membership(p: &OTPresentation, g: &MPoly) -> Result<bool> {
    if !g.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(p.pullback(g).is_zero())
}

/// The bidiagonal matrix `psi` with `psi[i][i] = alpha_i`,
/// `psi[i+1][i] = -alpha_{i+1}`, verified against the `l_i`.
pub fn hilbert_burch_psi(a: &Arrangement) -> Result<Matrix<MPoly>> {
    let d = a.len();
    let mut psi = Matrix::filled(d, d - 1, MPoly::zero(3));
    for c in 0..d - 1 {
        psi.set(c, c, a.form_poly(c));
        psi.set(c + 1, c, -&a.form_poly(c + 1));
    }
    let l = a.l_forms();
    for c in 0..d - 1 {
        let mut s = MPoly::zero(3);
        for r in 0..d {
            s = &s + &(psi.get(r, c) * &l[r]);
        }
        if !s.is_zero() {
            return Err(Error::Internal(format!("column {} of psi is not a syzygy", c + 1)));
        }
    }
    for (i, li) in l.iter().enumerate() {
        let minor = maximal_minor(&psi, i);
        let expected = if (d - 1 - i) % 2 == 0 { li.clone() } else { -li };
        if minor != expected {
            return Err(Error::Internal(format!("minor deleting row {} is not +-l_{}", i + 1, i + 1)));
        }
    }
    Ok(psi)
}

/// Determinant of `psi` with row `skip` deleted.
pub fn maximal_minor(psi: &Matrix<MPoly>, skip: usize) -> MPoly {
    let rows: Vec<Vec<MPoly>> = (0..psi.rows()).filter(|&r| r != skip).map(|r| psi.row(r).to_vec()).collect();
    determinant(&rows)
}

/// Laplace expansion along the first row, skipping zero entries.
pub fn determinant(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    let nvars = m.first().and_then(|r| r.first()).map_or(0, MPoly::nvars);
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, nvars)
}

fn det_rec(m: &[Vec<MPoly>], row: usize, cols: &[usize], nvars: usize) -> MPoly {
    if cols.is_empty() {
        return MPoly::constant(nvars, Rational::one());
    }
    let mut acc = MPoly::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = det_rec(m, row + 1, &rest, nvars);
        if sub.is_zero() {
            continue;
        }
        let term = entry * &sub;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Outcome of the Jacobian containment check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianContainment {
    pub contained: bool,
    /// For each partial derivative, its coordinates in the basis `l_1..l_d`
    /// (empty when not contained).
    pub coordinates: Vec<Vec<Rational>>,
}

/// Decide whether each partial derivative of `alpha` lies in `span{l_i}`.
pub fn jacobian_containment(a: &Arrangement) -> JacobianContainment {
    let d = a.len();
    let alpha = a.defining_polynomial();
    let basis = MonomialBasis::new(3, (d - 1) as u32);
    let l = a.l_forms();
    let cols: Vec<Vec<Rational>> = l.iter().map(|p| basis.coordinates(p)).collect();
    let mut m = RatMatrix::zeros(basis.len(), d);
    for (k, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            m.set(r, k, x.clone());
        }
    }
    let mut coordinates = Vec::new();
    for v in 0..3 {
        let rhs = basis.coordinates(&alpha.derivative(v));
        match solve(&m, &rhs) {
            Some(x) => coordinates.push(x),
            None => return JacobianContainment { contained: false, coordinates: Vec::new() },
        }
    }
    JacobianContainment { contained: true, coordinates }
}

/// Degree of the projection from the image of `X` onto the gradient image:
/// `sum mu(p) - d + 1`.
pub fn gradient_degree(a: &Arrangement) -> i64 {
    a.mu_sum() as i64 - a.len() as i64 + 1
}

/// Order of vanishing of a form in `x, y, z` at a projective point,
/// read off in the affine chart centred at the point.
pub fn vanishing_order(f: &MPoly, point: &Triple) -> Option<u32> {
    if f.is_zero() {
        return None;
    }
    let c = point.iter().position(|x| !x.is_zero()).expect("projective point");
    let scale = point[c].recip();
    let mut images = Vec::with_capacity(3);
    let mut local = 0;
    for i in 0..3 {
        if i == c {
            images.push(MPoly::constant(2, Rational::one()));
        } else {
            let shifted = &MPoly::var(2, local) + &MPoly::constant(2, &point[i] * &scale);
            images.push(shifted);
            local += 1;
        }
    }
    let g = f.substitute(&images);
    g.terms().map(|(m, _)| m.degree()).min()
}
