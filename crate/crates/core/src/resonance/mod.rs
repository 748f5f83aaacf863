//! Orlik-Solomon algebra up to degree 2 and the first resonance variety.

pub mod cartan;
pub mod multinet;

use num_traits::{One, Zero};
use rand::Rng;

use crate::arrangement::Arrangement;
use crate::circuits::combinations;
use crate::error::{Error, Result};
use crate::exactmath::{rank, rat, RatMatrix, Rational};
use crate::rng;

pub use cartan::{cartan_test, BlockKind, CartanBlock, CartanReport};
pub use multinet::{check_partition, search_multinets, verify_multinet, MultinetCertificate};

/// `A^2 = L^2(k^d) / span{e_jk - e_ik + e_ij}` over concurrent triples.
#[derive(Clone, Debug)]
pub struct Os2 {
    d: usize,
    relations: Vec<Vec<Rational>>,
    relation_rank: usize,
}

impl Os2 {
    pub fn new(a: &Arrangement) -> Self {
        let d = a.len();
        let mut relations = Vec::new();
        for p in a.flats() {
            combinations(p.lines.len(), 3, |t| {
                let (i, j, k) = (p.lines[t[0]], p.lines[t[1]], p.lines[t[2]]);
                let mut v = vec![Rational::zero(); pair_count(d)];
                v[pair_index(d, j, k)] = rat(1);
                v[pair_index(d, i, k)] = rat(-1);
                v[pair_index(d, i, j)] = rat(1);
                relations.push(v);
            });
        }
        let relation_rank = rank_of(&relations, pair_count(d));
        Os2 { d, relations, relation_rank }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `dim A^2`.
    pub fn dim(&self) -> usize {
        pair_count(self.d) - self.relation_rank
    }

    /// Coordinates of `a ^ b` in the basis `e_ij`, `i < j`.
    pub fn wedge(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.d;
        let mut v = vec![Rational::zero(); pair_count(d)];
        for i in 0..d {
            for j in i + 1..d {
                v[pair_index(d, i, j)] = &a[i] * &b[j] - &a[j] * &b[i];
            }
        }
        v
    }

    /// Whether a vector of the exterior square vanishes in `A^2`.
    pub fn is_zero_in_a2(&self, v: &[Rational]) -> bool {
        let mut rows = self.relations.clone();
        rows.push(v.to_vec());
        rank_of(&rows, pair_count(self.d)) == self.relation_rank
    }

    /// `dim ker(a ^ - : A^1 -> A^2)`.
    pub fn kernel_dimension(&self, a: &[Rational]) -> usize {
        let d = self.d;
        let mut rows = self.relations.clone();
        for k in 0..d {
            let mut e = vec![Rational::zero(); d];
            e[k] = Rational::one();
            rows.push(self.wedge(a, &e));
        }
        let image = rank_of(&rows, pair_count(d)) - self.relation_rank;
        d - image
    }
}

fn pair_count(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

fn pair_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * (2 * d - i - 1) / 2 + (j - i - 1)
}

fn rank_of(rows: &[Vec<Rational>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rank(&RatMatrix::from_rows(cols, rows.to_vec()))
}

/// `dim H^1(A, a)`; zero with `off_hyperplane` set when `sum a_i != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1 {
    pub dim: usize,
    pub off_hyperplane: bool,
}

pub fn h1_dimension(a: &Arrangement, v: &[Rational]) -> Result<H1> {
    h1_with(&Os2::new(a), v)
}

fn h1_with(os: &Os2, v: &[Rational]) -> Result<H1> {
    if v.len() != os.d() {
        return Err(Error::Invalid(format!("vector of length {} for {} lines", v.len(), os.d())));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("resonance needs a nonzero vector".into()));
    }
    let sum: Rational = v.iter().cloned().sum();
    if !sum.is_zero() {
        return Ok(H1 { dim: 0, off_hyperplane: true });
    }
    Ok(H1 { dim: os.kernel_dimension(v) - 1, off_hyperplane: false })
}

/// Where a component came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Index into `Arrangement::flats`.
    Flat(usize),
    Multinet(MultinetCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Local,
    Essential,
}

/// A linear subspace of `R^1(A)` given by spanning vectors in the
/// hyperplane `sum a_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceComponent {
    pub kind: ComponentKind,
    pub span: Vec<Vec<Rational>>,
    pub provenance: Provenance,
    /// `dim H^1` at the oracle sample points.
    pub samples: Vec<usize>,
}

impl ResonanceComponent {
    pub fn projective_dimension(&self) -> usize {
        self.span.len() - 1
    }
}

/// One component `span{e_i - e_j : i, j through p}` per flat with `mu >= 2`.
pub fn local_components(a: &Arrangement) -> Vec<ResonanceComponent> {
    let d = a.len();
    a.flats()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.mu >= 2)
        .map(|(pi, p)| {
            let first = p.lines[0];
            let span = p.lines[1..]
                .iter()
                .map(|&j| {
                    let mut v = vec![Rational::zero(); d];
                    v[first] = rat(1);
                    v[j] = rat(-1);
                    v
                })
                .collect();
            ResonanceComponent { kind: ComponentKind::Local, span, provenance: Provenance::Flat(pi), samples: Vec::new() }
        })
        .collect()
}

/// Falk's condition: `mu(Y) <= |Y n pi|` implies `Y` inside `pi`, for every
/// rank-2 flat `Y` and block `pi`.
pub fn is_neighborly(a: &Arrangement, partition: &[Vec<usize>]) -> Result<bool> {
    let block_of = check_partition(a.len(), partition)?;
    Ok(a.flats().iter().all(|p| {
        (0..partition.len()).all(|b| {
            let meet = p.lines.iter().filter(|&&l| block_of[l] == b).count();
            p.mu > meet || meet == p.lines.len()
        })
    }))
}

/// Essential component spanned by `u_i - u_1` for a multinet.
pub fn essential_component(cert: &MultinetCertificate) -> ResonanceComponent {
    let u0 = cert.block_vector(0);
    let span = (1..cert.k)
        .map(|i| cert.block_vector(i).iter().zip(&u0).map(|(x, y)| rat(x - y)).collect())
        .collect();
    ResonanceComponent { kind: ComponentKind::Essential, span, provenance: Provenance::Multinet(cert.clone()), samples: Vec::new() }
}

/// Random nonzero combination of the spanning vectors.
fn sample_point(span: &[Vec<Rational>], r: &mut impl Rng) -> Vec<Rational> {
    loop {
        let coeffs: Vec<Rational> = span.iter().map(|_| rat(r.gen_range(-7..=7))).collect();
        let mut v = vec![Rational::zero(); span[0].len()];
        for (c, s) in coeffs.iter().zip(span) {
            for (x, y) in v.iter_mut().zip(s) {
                *x += c * y;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Number of oracle samples drawn per component.
pub const ORACLE_SAMPLES: usize = 2;

/// Check `H^1(A, a) != 0` at sampled points of the component (at least
/// `k - 2` for a `k`-multinet component) and record the observed values.
pub fn oracle_check(os: &Os2, c: &mut ResonanceComponent, stream: u64) -> Result<()> {
    let mut r = rng::stream(stream);
    let need = match &c.provenance {
        Provenance::Multinet(cert) => (cert.k - 2).max(1),
        Provenance::Flat(_) => 1,
    };
    c.samples.clear();
    for _ in 0..ORACLE_SAMPLES {
        let v = sample_point(&c.span, &mut r);
        let h = h1_with(os, &v)?;
        if h.off_hyperplane || h.dim < need {
            return Err(Error::OracleRejected(format!("dim H1 = {} at a sampled point, expected at least {need}", h.dim)));
        }
        c.samples.push(h.dim);
    }
    Ok(())
}

fn same_span(x: &[Vec<Rational>], y: &[Vec<Rational>]) -> bool {
    let cols = x[0].len();
    let rx = rank_of(x, cols);
    let mut both = x.to_vec();
    both.extend(y.iter().cloned());
    rx == rank_of(y, cols) && rank_of(&both, cols) == rx
}

/// Options for assembling `R^1(A)`.
#[derive(Clone, Debug)]
pub struct ResonanceOptions {
    pub ks: Vec<usize>,
    pub max_weight: u32,
}

impl Default for ResonanceOptions {
    fn default() -> Self {
        ResonanceOptions { ks: vec![3, 4], max_weight: 2 }
    }
}

/// Local components plus one essential component per multinet found on the
/// whole arrangement, every component confirmed by the `H^1` oracle.
pub fn resonance_components(a: &Arrangement, opts: &ResonanceOptions) -> Result<Vec<ResonanceComponent>> {
    let os = Os2::new(a);
    let mut comps = local_components(a);
    for &k in &opts.ks {
        if k > a.len() {
            continue;
        }
        for cert in search_multinets(a, k, opts.max_weight)? {
            let c = essential_component(&cert);
            if !comps.iter().any(|o| same_span(&o.span, &c.span)) {
                comps.push(c);
            }
        }
    }
    for (i, c) in comps.iter_mut().enumerate() {
        oracle_check(&os, c, 0x7265_736f_0000 + i as u64)?;
    }
    Ok(comps)
}
