//! The intersection form `Q = J^t J - E` on the blowup at a set of points.

use num_traits::{One, Signed, Zero};

use crate::arrangement::Arrangement;
use crate::exactmath::matrix::kernel_vectors;
use crate::exactmath::{rat, Matrix, Rational, Rationals};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Finite,
    Affine,
    Indefinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanBlock {
    /// Line indices of the block.
    pub lines: Vec<usize>,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanReport {
    pub blocks: Vec<CartanBlock>,
    /// At least three affine blocks and no other kind.
    pub criterion: bool,
}

impl CartanReport {
    pub fn affine_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Affine).count()
    }
}

/// Split `Q` restricted to the lines meeting `Z` into connected blocks and
/// classify each one. `z` holds indices into `Arrangement::flats`.
pub fn cartan_test(a: &Arrangement, z: &[usize]) -> CartanReport {
    let lines: Vec<usize> = (0..a.len()).filter(|&l| z.iter().any(|&p| a.flats()[p].contains(l))).collect();
    let q = |l1: usize, l2: usize| -> i64 {
        z.iter().filter(|&&p| a.flats()[p].contains(l1) && a.flats()[p].contains(l2)).count() as i64 - 1
    };
    let n = lines.len();
    let mut comp = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        comp[start] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if comp[y] == usize::MAX && q(lines[x], lines[y]) != 0 {
                    comp[y] = id;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        let block_lines: Vec<usize> = members.iter().map(|&i| lines[i]).collect();
        let size = block_lines.len();
        let mut m = Matrix::filled(size, size, Rational::zero());
        for (i, &li) in block_lines.iter().enumerate() {
            for (j, &lj) in block_lines.iter().enumerate() {
                m.set(i, j, rat(q(li, lj)));
            }
        }
        blocks.push(CartanBlock { lines: block_lines, kind: classify(&m) });
    }
    let affine = blocks.iter().filter(|b| b.kind == BlockKind::Affine).count();
    let criterion = affine >= 3 && affine == blocks.len();
    CartanReport { blocks, criterion }
}

/// Finite if positive definite; affine if positive semidefinite of corank
/// one with a strictly positive kernel vector; indefinite otherwise.
pub fn classify(m: &Matrix<Rational>) -> BlockKind {
    let Some(corank) = semidefinite_corank(m) else {
        return BlockKind::Indefinite;
    };
    match corank {
        0 => BlockKind::Finite,
        1 => {
            let k = kernel_vectors(&Rationals, m);
            let v = &k[0];
            if v.iter().all(Signed::is_positive) || v.iter().all(Signed::is_negative) {
                BlockKind::Affine
            } else {
                BlockKind::Indefinite
            }
        }
        _ => BlockKind::Indefinite,
    }
}

/// Corank of a positive semidefinite symmetric matrix, `None` otherwise.
/// Symmetric elimination: a negative pivot, or a zero pivot with a nonzero
/// row, rules out semidefiniteness.
fn semidefinite_corank(m: &Matrix<Rational>) -> Option<usize> {
    let n = m.rows();
    let mut a = m.clone();
    let mut alive: Vec<bool> = vec![true; n];
    let mut corank = 0;
    for _ in 0..n {
        let k = (0..n).find(|&i| alive[i])?;
        alive[k] = false;
        let pivot = a.get(k, k).clone();
        if pivot.is_negative() {
            return None;
        }
        if pivot.is_zero() {
            if (0..n).any(|j| alive[j] && !a.get(k, j).is_zero()) {
                return None;
            }
            corank += 1;
            continue;
        }
        let inv = Rational::one() / &pivot;
        for i in 0..n {
            if !alive[i] || a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k) * &inv;
            for j in 0..n {
                if alive[j] {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
    }
    Some(corank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::builtin;
    use crate::exactmath::RatMatrix;

    fn triple_points(a: &Arrangement) -> Vec<usize> {
        (0..a.flats().len()).filter(|&i| a.flats()[i].mu == 2).collect()
    }

    #[test]
    fn braid_has_three_affine_blocks() {
        let a = builtin("braid-a3").unwrap();
        let r = cartan_test(&a, &triple_points(&a));
        assert_eq!(r.blocks.len(), 3);
        assert!(r.criterion);
        let lines: Vec<Vec<usize>> = r.blocks.iter().map(|b| b.lines.clone()).collect();
        assert_eq!(lines, vec![vec![0, 5], vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn nine_three_one_blocks_are_the_neighborly_partition() {
        let a = builtin("9_3_1").unwrap();
        let r = cartan_test(&a, &triple_points(&a));
        assert!(r.criterion);
        assert_eq!(r.affine_count(), 3);
        let nets = crate::resonance::search_multinets(&a, 3, 1).unwrap();
        let lines: Vec<Vec<usize>> = r.blocks.iter().map(|b| b.lines.clone()).collect();
        assert_eq!(lines, nets[0].blocks);
    }

    #[test]
    fn single_double_point_fails() {
        let a = builtin("braid-a3").unwrap();
        let double = (0..a.flats().len()).find(|&i| a.flats()[i].mu == 1).unwrap();
        assert!(!cartan_test(&a, &[double]).criterion);
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&RatMatrix::from_i64_rows(&[&[2, -1], &[-1, 2]])), BlockKind::Finite);
        assert_eq!(classify(&RatMatrix::from_i64_rows(&[&[2, -2], &[-2, 2]])), BlockKind::Affine);
        assert_eq!(classify(&RatMatrix::from_i64_rows(&[&[1, 2], &[2, 1]])), BlockKind::Indefinite);
        assert_eq!(classify(&RatMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])), BlockKind::Indefinite);
        assert_eq!(classify(&RatMatrix::from_i64_rows(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])), BlockKind::Affine);
    }
}
