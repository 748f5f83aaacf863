//! Binary forms in `(lambda, mu)` and their greatest common divisor.

use std::fmt;

use num_traits::{One, Zero};

use super::field::Rational;
use super::poly::{MPoly, Monomial};
use crate::error::{Error, Result};

/// `sum_k c_k * lambda^(b-k) * mu^k` with `b = coeffs.len() - 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form has at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Degree-0 form that is a nonzero constant.
    pub fn is_nonzero_constant(&self) -> bool {
        self.degree() == 0 && !self.coeffs[0].is_zero()
    }

    /// Read a homogeneous polynomial in two variables `(lambda, mu)`.
    pub fn from_mpoly(p: &MPoly, degree: usize) -> Self {
        assert_eq!(p.nvars(), 2, "binary forms live in two variables");
        let mut coeffs = vec![Rational::zero(); degree + 1];
        for (m, c) in p.terms() {
            assert_eq!(m.degree() as usize, degree, "form must be homogeneous of the stated degree");
            coeffs[m.0[1] as usize] = c.clone();
        }
        BinaryForm { coeffs }
    }

    pub fn to_mpoly(&self) -> MPoly {
        let b = self.degree() as u32;
        let mut p = MPoly::zero(2);
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial(vec![b - k as u32, k as u32]), c.clone());
        }
        p
    }

    /// Exponent of the largest power of `mu` dividing the form.
    fn mu_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form")
    }

    /// Dehomogenize at `mu = 1`; ascending coefficients in `t = lambda`.
    fn dehomogenize(&self) -> Vec<Rational> {
        let b = self.degree();
        let mut up: Vec<Rational> = (0..=b).map(|i| self.coeffs[b - i].clone()).collect();
        trim(&mut up);
        up
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_mpoly().display_with(&["l", "m"]))
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Remainder of `a` by nonzero `b` (ascending coefficients).
fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    while !is_zero_poly(&r) && r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] * &lead_inv;
        for i in 0..=db {
            let v = &r[dr - db + i] - &f * &b[i];
            r[dr - db + i] = v;
        }
        r.pop();
        if r.is_empty() {
            r.push(Rational::zero());
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    let (mut a, mut b) = (a, b);
    while !is_zero_poly(&b) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    trim(&mut a);
    let lead = a.last().cloned().unwrap_or_else(Rational::one);
    if lead.is_zero() {
        return a;
    }
    a.iter().map(|c| c / &lead).collect()
}

/// Monic gcd of binary forms: the `mu`-power bookkeeping accounts for
/// common roots at `lambda : mu = 1 : 0`; zero forms are ignored.
pub fn binary_gcd(forms: &[BinaryForm]) -> Result<BinaryForm> {
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroPencil);
    }
    let mu_power = nonzero.iter().map(|f| f.mu_valuation()).min().unwrap_or(0);
    let mut g: Vec<Rational> = vec![Rational::zero()];
    for f in &nonzero {
        g = poly_gcd(g, f.dehomogenize());
    }
    // g is monic in t = lambda; homogenize to degree deg(g) and attach mu^mu_power.
    let dg = g.len() - 1;
    let total = dg + mu_power;
    let mut coeffs = vec![Rational::zero(); total + 1];
    for (i, c) in g.iter().enumerate() {
        // t^i -> lambda^i mu^(dg - i), index k is the mu exponent
        coeffs[dg - i + mu_power] = c.clone();
    }
    Ok(BinaryForm { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::rat;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn gcd_of_lambda_square_and_lambda_mu() {
        let g = binary_gcd(&[form(&[1, 0, 0]), form(&[0, 1, 0])]).unwrap();
        assert_eq!(g, form(&[1, 0]));
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let g = binary_gcd(&[form(&[1, 0, -1]), form(&[1, -1])]).unwrap();
        assert_eq!(g, form(&[1, -1]));
    }

    #[test]
    fn coprime_pair_gives_constant() {
        let g = binary_gcd(&[form(&[1, 0]), form(&[0, 1])]).unwrap();
        assert!(g.is_nonzero_constant());
        assert_eq!(g, form(&[1]));
    }

    #[test]
    fn common_root_at_infinity() {
        // lambda*mu and mu^2 share mu
        let g = binary_gcd(&[form(&[0, 1, 0]), form(&[0, 0, 1])]).unwrap();
        assert_eq!(g, form(&[0, 1]));
    }

    #[test]
    fn zero_pencil_is_an_error() {
        assert!(matches!(binary_gcd(&[form(&[0, 0])]), Err(Error::ZeroPencil)));
    }

    #[test]
    fn mpoly_round_trip() {
        let f = form(&[2, -3, 0, 5]);
        assert_eq!(BinaryForm::from_mpoly(&f.to_mpoly(), 3), f);
    }
}
