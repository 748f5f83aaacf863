//! The 2 x b multiplication matrix of a net and its determinantal quadrics.

use crate::arrangement::Arrangement;
use crate::divisors::{h0_fatpoints, net_split};
use crate::error::{Error, Result};
use crate::exactmath::matrix::solve;
use crate::exactmath::{binary_gcd, binomial, monomials_of_degree, rank, BinaryForm, MPoly, RatMatrix, Rational};
use crate::orlik_terao::{determinant, membership, OTPresentation};
use crate::resonance::MultinetCertificate;
use crate::circuits::combinations;

/// `gamma[i][j]` is the linear form in `y` with `sigma_i tau_j = sum c_k l_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationMatrix {
    pub entries: Vec<Vec<MPoly>>,
    pub sigma: Vec<MPoly>,
    pub tau: Vec<MPoly>,
}

impl MultiplicationMatrix {
    pub fn from_entries(entries: Vec<Vec<MPoly>>) -> Self {
        MultiplicationMatrix { entries, sigma: Vec::new(), tau: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// All 2 x 2 minors, columns in lexicographic order.
    pub fn minors(&self) -> Vec<MPoly> {
        let mut out = Vec::new();
        let e = &self.entries;
        combinations(self.cols(), 2, |c| {
            out.push(&(&e[0][c[0]] * &e[1][c[1]]) - &(&e[0][c[1]] * &e[1][c[0]]));
        });
        out
    }
}

fn coordinates(p: &MPoly, monos: &[crate::exactmath::Monomial]) -> Vec<Rational> {
    monos.iter().map(|m| p.coeff(m)).collect()
}

fn span_rank(ps: &[MPoly], degree: u32, nvars: usize) -> usize {
    if ps.is_empty() {
        return 0;
    }
    let monos = monomials_of_degree(nvars, degree);
    rank(&RatMatrix::from_rows(monos.len(), ps.iter().map(|p| coordinates(p, &monos)).collect()))
}

/// Build `gamma` from a net: `sigma` spans `H^0(A)`, `tau` spans `H^0(B)`.
pub fn multiplication_matrix(a: &Arrangement, cert: &MultinetCertificate) -> Result<MultiplicationMatrix> {
    if !cert.is_net() {
        return Err(Error::Invalid("the multiplication matrix needs a net (all weights one)".into()));
    }
    let d = a.len();
    let split = net_split(a, cert)?;
    let h0a = h0_fatpoints(a, &split.a_div)?;
    if h0a.dimension() != 2 {
        return Err(Error::NotAPencil(h0a.dimension()));
    }
    let products: Vec<MPoly> = cert
        .blocks
        .iter()
        .map(|b| b.iter().fold(MPoly::constant(3, Rational::from_integer(1.into())), |acc, &l| &acc * &a.form_poly(l)))
        .collect();
    let mut sigma: Vec<MPoly> = Vec::new();
    for p in &products {
        let mut trial = sigma.clone();
        trial.push(p.clone());
        if span_rank(&trial, cert.m, 3) == trial.len() {
            sigma = trial;
        }
        if sigma.len() == 2 {
            break;
        }
    }
    if sigma.len() < 2 {
        sigma = h0a.basis.clone();
    }
    let tau = h0_fatpoints(a, &split.b_div)?.basis;

    let top = (d - 1) as u32;
    let monos = monomials_of_degree(3, top);
    let l = a.l_forms();
    let mut lmat = RatMatrix::zeros(monos.len(), d);
    for (k, lk) in l.iter().enumerate() {
        for (r, c) in coordinates(lk, &monos).into_iter().enumerate() {
            lmat.set(r, k, c);
        }
    }
    let mut entries = Vec::new();
    for s in &sigma {
        let mut row = Vec::new();
        for t in &tau {
            let prod = s * t;
            let c = solve(&lmat, &coordinates(&prod, &monos))
                .ok_or_else(|| Error::Internal("a product of sections is not in the span of the l_i".into()))?;
            row.push(MPoly::linear(&c));
        }
        entries.push(row);
    }
    Ok(MultiplicationMatrix { entries, sigma, tau })
}

/// For every `(lambda : mu)` the `b` forms `lambda r_1 + mu r_2` are linearly
/// independent, decided by the gcd of the maximal minors of the pencil.
pub fn is_one_generic(g: &MultiplicationMatrix) -> bool {
    if g.rows() != 2 {
        return false;
    }
    let b = g.cols();
    let nvars = g.entries[0].first().map_or(0, MPoly::nvars);
    if b == 0 || b > nvars {
        return false;
    }
    let lam = MPoly::var(2, 0);
    let mu = MPoly::var(2, 1);
    // pencil[j][k]: coefficient of y_k in column j, a linear binary form
    let pencil: Vec<Vec<MPoly>> = (0..b)
        .map(|j| {
            (0..nvars)
                .map(|k| {
                    let y = crate::exactmath::Monomial::var(nvars, k);
                    &lam.scale(&g.entries[0][j].coeff(&y)) + &mu.scale(&g.entries[1][j].coeff(&y))
                })
                .collect()
        })
        .collect();
    let mut minors = Vec::new();
    combinations(nvars, b, |cols| {
        let m: Vec<Vec<MPoly>> = pencil.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        minors.push(BinaryForm::from_mpoly(&determinant(&m), b));
    });
    match binary_gcd(&minors) {
        Ok(gcd) => gcd.is_nonzero_constant(),
        Err(_) => false,
    }
}

/// Membership of the 2 x 2 minors in the Orlik-Terao ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorsReport {
    pub all_members: bool,
    pub minors: Vec<MPoly>,
    /// Dimension of the span of the minors inside `I_2`.
    pub independent: usize,
}

pub fn minors_in_ideal(a: &Arrangement, g: &MultiplicationMatrix) -> Result<MinorsReport> {
    let p = OTPresentation::new(a, 3);
    let minors = g.minors();
    let mut all_members = true;
    for m in &minors {
        if !m.is_zero() && !membership(&p, m)? {
            all_members = false;
        }
    }
    let nonzero: Vec<MPoly> = minors.iter().filter(|m| !m.is_zero()).cloned().collect();
    let independent = span_rank(&nonzero, 2, a.len());
    Ok(MinorsReport { all_members, minors, independent })
}

/// Eagon-Northcott numbers `beta_i = (i+1) C(b, i+2)` for a 1-generic
/// `2 x b` matrix with `b = km - C(m+1, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnPrediction {
    pub b: usize,
    pub betas: Vec<u64>,
}

impl EnPrediction {
    pub fn quadrics(&self) -> u64 {
        self.betas.first().copied().unwrap_or(0)
    }

    pub fn linear_syzygies(&self) -> u64 {
        self.betas.get(1).copied().unwrap_or(0)
    }
}

pub fn en_prediction(cert: &MultinetCertificate, d: usize) -> Result<EnPrediction> {
    let (k, m) = (cert.k, cert.m as usize);
    if !cert.is_net() {
        return Err(Error::Invalid("the prediction needs a net".into()));
    }
    if k < m {
        return Err(Error::NetHypothesis { k, m });
    }
    if k * m != d {
        return Err(Error::Invalid(format!("a ({k},{m})-net has {} lines, not {d}", k * m)));
    }
    en_numbers(k, m)
}

/// The prediction from the parameters alone.
pub fn en_numbers(k: usize, m: usize) -> Result<EnPrediction> {
    if k < m {
        return Err(Error::NetHypothesis { k, m });
    }
    let b = k * m - binomial(m as u64 + 1, 2) as usize;
    let betas = (0..b.saturating_sub(1)).map(|i| (i as u64 + 1) * binomial(b as u64, i as u64 + 2)).collect();
    Ok(EnPrediction { b, betas })
}
