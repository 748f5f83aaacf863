//! Circuits of the linear matroid of the defining forms.

use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::exactmath::field::primitive_integer_vector;
use crate::exactmath::matrix::kernel_vectors;
use crate::exactmath::{MPoly, Matrix, Monomial, Rational, Rationals};

/// Minimal dependent set of forms with its normalized dependency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    /// Sorted line indices.
    pub indices: Vec<usize>,
    /// Primitive integer coefficients, first entry positive, all nonzero.
    pub coeffs: Vec<Rational>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    fn contains_all(&self, other: &[usize]) -> bool {
        other.iter().all(|i| self.indices.binary_search(i).is_ok())
    }
}

/// Normalized dependency among the given forms when they form a circuit.
pub fn circuit_of(a: &Arrangement, subset: &[usize]) -> Option<Circuit> {
    let rows: Vec<Vec<Rational>> = (0..3)
        .map(|r| subset.iter().map(|&i| a.form(i)[r].clone()).collect())
        .collect();
    let m = Matrix::from_rows(subset.len(), rows);
    let kernel = kernel_vectors(&Rationals, &m);
    if kernel.len() != 1 {
        return None;
    }
    let v = &kernel[0];
    if v.iter().any(Zero::is_zero) {
        return None;
    }
    let ints = primitive_integer_vector(v)?;
    Some(Circuit {
        indices: subset.to_vec(),
        coeffs: ints.into_iter().map(Rational::from_integer).collect(),
    })
}

/// Visit every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All circuits of size at most `max_size`, by increasing size and then
/// lexicographically. Subsets containing a smaller circuit are skipped.
pub fn enumerate_circuits(a: &Arrangement, max_size: usize) -> Vec<Circuit> {
    let d = a.len();
    let mut out: Vec<Circuit> = Vec::new();
    for size in 3..=max_size.min(d) {
        let mut found = Vec::new();
        combinations(d, size, |s| {
            if out.iter().any(|c| c.len() < size && subset_contains(s, &c.indices)) {
                return;
            }
            if let Some(c) = circuit_of(a, s) {
                found.push(c);
            }
        });
        out.extend(found);
    }
    out
}

fn subset_contains(set: &[usize], sub: &[usize]) -> bool {
    sub.iter().all(|i| set.binary_search(i).is_ok())
}

/// `f = sum_j c_j * prod_{k != j} y_k`, a polynomial in `d` variables.
pub fn circuit_relation(c: &Circuit, d: usize) -> MPoly {
    let mut f = MPoly::zero(d);
    for (j, coeff) in c.coeffs.iter().enumerate() {
        let mut e = vec![0u32; d];
        for (k, &idx) in c.indices.iter().enumerate() {
            if k != j {
                e[idx] = 1;
            }
        }
        f.add_term(Monomial(e), coeff.clone());
    }
    f
}

/// Check the defining identity `sum c_j alpha_{i_j} = 0`.
pub fn is_dependency(a: &Arrangement, c: &Circuit) -> bool {
    (0..3).all(|r| {
        c.indices
            .iter()
            .zip(&c.coeffs)
            .map(|(&i, q)| &a.form(i)[r] * q)
            .fold(Rational::zero(), |acc, x| acc + x)
            .is_zero()
    })
}

/// No circuit contains another one.
pub fn is_antichain(circuits: &[Circuit]) -> bool {
    circuits.iter().enumerate().all(|(i, c)| {
        circuits
            .iter()
            .enumerate()
            .all(|(j, o)| i == j || !c.contains_all(&o.indices))
    })
}

/// Default enumeration bound for downstream graded pieces up to `j_max`.
pub fn default_max_size(d: usize, j_max: usize) -> usize {
    d.min(j_max + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::builtin;
    use crate::exactmath::rat;

    #[test]
    fn braid_triples() {
        let a = builtin("braid-a3").unwrap();
        let cs = enumerate_circuits(&a, 3);
        let idx: Vec<Vec<usize>> = cs.iter().map(|c| c.indices.clone()).collect();
        assert_eq!(idx, vec![vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5], vec![3, 4, 5]]);
        assert_eq!(cs[0].coeffs, vec![rat(1), rat(-1), rat(-1)]);
    }

    #[test]
    fn four_generic_forms() {
        let a = builtin("ex-2-4").unwrap();
        let cs = enumerate_circuits(&a, 4);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].indices, vec![0, 1, 2, 3]);
        assert_eq!(cs[0].coeffs, vec![rat(1), rat(1), rat(1), rat(-1)]);
        let f = circuit_relation(&cs[0], 4);
        assert_eq!(f.to_string(), "-y1*y2*y3+y1*y2*y4+y1*y3*y4+y2*y3*y4");
    }

    #[test]
    fn braid_relation_polynomial() {
        let a = builtin("braid-a3").unwrap();
        let c = circuit_of(&a, &[0, 1, 3]).unwrap();
        let f = circuit_relation(&c, 6);
        // y2*y4 - y1*y4 - y1*y2
        let mut expected = MPoly::zero(6);
        expected.add_term(Monomial(vec![0, 1, 0, 1, 0, 0]), rat(1));
        expected.add_term(Monomial(vec![1, 0, 0, 1, 0, 0]), rat(-1));
        expected.add_term(Monomial(vec![1, 1, 0, 0, 0, 0]), rat(-1));
        assert_eq!(f, expected);
    }

    #[test]
    fn three_generic_lines_have_no_circuit() {
        let a = crate::arrangement::Arrangement::new(
            None,
            vec![[rat(1), rat(0), rat(0)], [rat(0), rat(1), rat(0)], [rat(0), rat(0), rat(1)]],
        )
        .unwrap();
        // three independent forms in a 3-space: no circuit of size 3
        assert!(enumerate_circuits(&a, 3).is_empty());
    }

    #[test]
    fn size_three_circuits_match_multiple_points() {
        for name in crate::arrangement::BUILTIN_NAMES {
            let a = builtin(name).unwrap();
            let cs = enumerate_circuits(&a, 4);
            assert!(is_antichain(&cs), "{name}");
            assert!(cs.iter().all(|c| is_dependency(&a, c)), "{name}");
            let triples: usize = a.flats().iter().map(|p| crate::exactmath::binomial(p.lines.len() as u64, 3) as usize).sum();
            assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), triples, "{name}");
        }
    }
}
