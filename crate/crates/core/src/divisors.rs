//! Divisors on the blowup `X` of the plane at the rank-2 flats.
//!
//! A class `m E_0 - sum a_p E_p` is stored as `m` and the vector of `a_p`
//! indexed like `Arrangement::flats`.

use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::arrangement::{Arrangement, Triple};
use crate::error::{Error, Result};
use crate::exactmath::matrix::kernel_vectors;
use crate::exactmath::{binomial, monomials_of_degree, rank, MPoly, Matrix, Monomial, RatMatrix, Rational, Rationals};
use crate::resonance::MultinetCertificate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub m: i64,
    pub mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(m: i64, mults: Vec<i64>) -> Self {
        DivisorClass { m, mults }
    }

    /// `E_0`.
    pub fn hyperplane(npoints: usize) -> Self {
        DivisorClass { m: 1, mults: vec![0; npoints] }
    }

    /// The exceptional curve over point `p`.
    pub fn exceptional(npoints: usize, p: usize) -> Self {
        let mut mults = vec![0; npoints];
        mults[p] = -1;
        DivisorClass { m: 0, mults }
    }

    pub fn zero(npoints: usize) -> Self {
        DivisorClass { m: 0, mults: vec![0; npoints] }
    }

    pub fn scale(&self, c: i64) -> Self {
        DivisorClass { m: self.m * c, mults: self.mults.iter().map(|x| x * c).collect() }
    }

    /// `(m; a_1, ..., a_r)`.
    pub fn display(&self) -> String {
        let parts: Vec<String> = self.mults.iter().map(i64::to_string).collect();
        format!("({}; {})", self.m, parts.join(","))
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass { m: self.m + o.m, mults: self.mults.iter().zip(&o.mults).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        self + &(-o)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(-1)
    }
}

/// `m_1 m_2 - sum a_p b_p`.
pub fn pairing(d1: &DivisorClass, d2: &DivisorClass) -> i64 {
    d1.m * d2.m - d1.mults.iter().zip(&d2.mults).map(|(a, b)| a * b).sum::<i64>()
}

/// `K = -3 E_0 + sum E_p`.
pub fn canonical(npoints: usize) -> DivisorClass {
    DivisorClass { m: -3, mults: vec![-1; npoints] }
}

/// `(D^2 - D.K)/2 + 1`.
pub fn riemann_roch_chi(d: &DivisorClass) -> Result<i64> {
    let k = canonical(d.mults.len());
    let twice = pairing(d, d) - pairing(d, &k);
    if twice % 2 != 0 {
        return Err(Error::Internal(format!("D^2 - D.K = {twice} is odd")));
    }
    Ok(twice / 2 + 1)
}

/// `D_A = (d-1) E_0 - sum mu(p) E_p`.
pub fn divisor_da(a: &Arrangement) -> DivisorClass {
    DivisorClass { m: a.len() as i64 - 1, mults: a.flats().iter().map(|p| p.mu as i64).collect() }
}

/// Degree-`m` forms vanishing to order `a_p` at every flat.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub degree: u32,
    pub basis: Vec<MPoly>,
    /// Rank of the stacked vanishing conditions.
    pub condition_rank: usize,
}

impl SectionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Rows `d^beta f (p) = 0` for `|beta| = min(a - 1, m)` over degree-`m`
/// monomials. By Euler's formula these imply all lower order conditions.
pub fn vanishing_conditions(point: &Triple, a: u32, m: u32) -> Vec<Vec<Rational>> {
    if a == 0 {
        return Vec::new();
    }
    let order = (a - 1).min(m);
    let monos = monomials_of_degree(3, m);
    monomials_of_degree(3, order)
        .iter()
        .map(|beta| monos.iter().map(|alpha| derivative_at(alpha, beta, point)).collect())
        .collect()
}

/// `d^beta x^alpha` evaluated at `p`.
fn derivative_at(alpha: &Monomial, beta: &Monomial, p: &Triple) -> Rational {
    let mut c = Rational::from_integer(1.into());
    for v in 0..3 {
        let (e, b) = (alpha.0[v], beta.0[v]);
        if b > e {
            return Rational::zero();
        }
        for t in 0..b {
            c *= Rational::from_integer((e - t).into());
        }
        for _ in 0..e - b {
            c *= &p[v];
        }
    }
    c
}

/// `H^0(D)` as the degree-`m` piece of the fat-point ideal.
pub fn h0_fatpoints(a: &Arrangement, d: &DivisorClass) -> Result<SectionSpace> {
    if d.mults.len() != a.flats().len() {
        return Err(Error::Invalid(format!("{} multiplicities for {} flats", d.mults.len(), a.flats().len())));
    }
    if d.m < 0 {
        return Err(Error::NotFatPoint(format!("degree {} is negative", d.m)));
    }
    if let Some(i) = d.mults.iter().position(|&x| x < 0) {
        return Err(Error::NotFatPoint(format!("multiplicity {} at {} is negative", d.mults[i], a.flats()[i].point_string())));
    }
    let m = d.m as u32;
    let monos = monomials_of_degree(3, m);
    let mut rows = Vec::new();
    for (p, &mult) in a.flats().iter().zip(&d.mults) {
        rows.extend(vanishing_conditions(&p.point, mult as u32, m));
    }
    let n = monos.len();
    let cond = Matrix::from_rows(n, rows);
    let condition_rank = if cond.rows() == 0 { 0 } else { rank(&cond) };
    let basis = kernel_vectors(&Rationals, &cond)
        .into_iter()
        .map(|v| {
            let mut f = MPoly::zero(3);
            for (mono, c) in monos.iter().zip(v) {
                f.add_term(mono.clone(), c);
            }
            f
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(basis.len(), n - condition_rank);
    Ok(SectionSpace { degree: m, basis, condition_rank })
}

/// `h^0`, `chi` and `h^1 = h^0 - chi` (valid since `h^2 = 0` for `m >= -2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub h0: usize,
    pub chi: i64,
    pub h1: i64,
}

pub fn cohomology(a: &Arrangement, d: &DivisorClass) -> Result<Cohomology> {
    let h0 = h0_fatpoints(a, d)?.dimension();
    let chi = riemann_roch_chi(d)?;
    Ok(Cohomology { h0, chi, h1: h0 as i64 - chi })
}

/// Equal linear spans for two families of forms of the given degree.
pub fn same_span(x: &[MPoly], y: &[MPoly], degree: u32) -> bool {
    let monos = monomials_of_degree(3, degree);
    let rows = |ps: &[MPoly]| -> Vec<Vec<Rational>> {
        ps.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect()
    };
    let rx = rows(x);
    let ry = rows(y);
    let r = |v: &[Vec<Rational>]| if v.is_empty() { 0 } else { rank(&RatMatrix::from_rows(monos.len(), v.to_vec())) };
    let mut both = rx.clone();
    both.extend(ry.iter().cloned());
    let k = r(&rx);
    k == r(&ry) && r(&both) == k
}

/// `D_A = A + B` from a multinet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetSplit {
    /// `m E_0 - sum_{p in Z} n_p E_p`.
    pub a_div: DivisorClass,
    pub b_div: DivisorClass,
    /// Lower bound on `h^0(A)`.
    pub h0_a_bound: i64,
    /// `km - C(m+1, 2)` for nets.
    pub h0_b_bound: Option<i64>,
}

pub fn net_split(a: &Arrangement, cert: &MultinetCertificate) -> Result<NetSplit> {
    let mut mults = vec![0i64; a.flats().len()];
    for (&p, &n) in cert.base_locus.iter().zip(&cert.n) {
        mults[p] = n as i64;
    }
    let a_div = DivisorClass::new(cert.m as i64, mults);
    let b_div = &divisor_da(a) - &a_div;
    if let Some(i) = b_div.mults.iter().position(|&x| x < 0) {
        return Err(Error::Invalid(format!("residual has multiplicity {} at {}", b_div.mults[i], a.flats()[i].point_string())));
    }
    let h0_b_bound = cert
        .is_net()
        .then(|| cert.k as i64 * cert.m as i64 - binomial(cert.m as u64 + 1, 2) as i64);
    Ok(NetSplit { a_div, b_div, h0_a_bound: 2, h0_b_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::builtin;
    use crate::resonance::search_multinets;

    #[test]
    fn pairing_basics() {
        let e0 = DivisorClass::hyperplane(3);
        assert_eq!(pairing(&e0, &e0), 1);
        let e1 = DivisorClass::exceptional(3, 0);
        let e2 = DivisorClass::exceptional(3, 1);
        assert_eq!(pairing(&e1, &e2), 0);
        assert_eq!(pairing(&e1, &e1), -1);
        assert_eq!(riemann_roch_chi(&DivisorClass::zero(3)).unwrap(), 1);
    }

    #[test]
    fn braid_da() {
        let a = builtin("braid-a3").unwrap();
        let da = divisor_da(&a);
        let mut mus = da.mults.clone();
        mus.sort_unstable();
        assert_eq!((da.m, mus), (5, vec![1, 1, 1, 2, 2, 2, 2]));
        assert_eq!(pairing(&da, &da), 6);
        assert_eq!(riemann_roch_chi(&da).unwrap(), 6);
        let s = h0_fatpoints(&a, &da).unwrap();
        assert_eq!(s.dimension(), 6);
        assert!(same_span(&s.basis, &a.l_forms(), 5));
    }

    #[test]
    fn da_sections_everywhere() {
        for name in crate::arrangement::BUILTIN_NAMES {
            let a = builtin(name).unwrap();
            let c = cohomology(&a, &divisor_da(&a)).unwrap();
            assert_eq!((c.h0, c.chi, c.h1), (a.len(), a.len() as i64, 0), "{name}");
        }
        let da = divisor_da(&builtin("ex-2-4").unwrap());
        assert_eq!(da, DivisorClass::new(3, vec![1; 6]));
    }

    #[test]
    fn nine_three_one_net_divisors() {
        let a = builtin("9_3_1").unwrap();
        let cert = &search_multinets(&a, 3, 1).unwrap()[0];
        let split = net_split(&a, cert).unwrap();
        assert_eq!(split.h0_b_bound, Some(3));
        let ca = cohomology(&a, &split.a_div).unwrap();
        assert_eq!((ca.h0, ca.h1), (2, 1));
        let cb = cohomology(&a, &split.b_div).unwrap();
        assert_eq!(cb.h0, 3);
        assert_eq!(pairing(&split.b_div, &split.b_div), 7);
        assert_eq!(cb.chi, 3);
        // the 18 flats impose independent conditions on quintics
        assert_eq!(h0_fatpoints(&a, &split.b_div).unwrap().condition_rank, 18);
    }

    #[test]
    fn braid_net_split() {
        let a = builtin("braid-a3").unwrap();
        let cert = &search_multinets(&a, 3, 1).unwrap()[0];
        let split = net_split(&a, cert).unwrap();
        assert_eq!(split.a_div.m, 2);
        assert_eq!(split.b_div, DivisorClass::new(3, vec![1; 7]));
        assert_eq!(split.h0_b_bound, Some(3));
        assert_eq!(h0_fatpoints(&a, &split.a_div).unwrap().dimension(), 2);
    }

    #[test]
    fn negative_multiplicity_is_rejected() {
        let a = builtin("braid-a3").unwrap();
        let mut d = divisor_da(&a);
        d.mults[0] = -1;
        assert!(matches!(h0_fatpoints(&a, &d), Err(Error::NotFatPoint(_))));
    }
}
