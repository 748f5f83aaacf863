//! Multinets: verification and exhaustive search.

use num_integer::Integer;
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};

/// A verified weak multinet, with the connectivity condition recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultinetCertificate {
    /// Sorted line indices of each block, blocks ordered by least element.
    pub blocks: Vec<Vec<usize>>,
    /// Weight of every line.
    pub weights: Vec<u32>,
    pub k: usize,
    pub m: u32,
    /// Indices into `Arrangement::flats` of the base locus.
    pub base_locus: Vec<usize>,
    /// `n_p` for each point of the base locus, in the same order.
    pub n: Vec<u32>,
    /// Within-block connectivity off the base locus holds.
    pub connected: bool,
}

impl MultinetCertificate {
    /// All weights one and every base point carries one line per block.
    pub fn is_net(&self) -> bool {
        self.weights.iter().all(|&w| w == 1) && self.n.iter().all(|&n| n == 1)
    }

    /// `u_i = sum_{L in A_i} w(L) e_L`.
    pub fn block_vector(&self, i: usize) -> Vec<i64> {
        let mut u = vec![0i64; self.weights.len()];
        for &l in &self.blocks[i] {
            u[l] = self.weights[l] as i64;
        }
        u
    }

    /// The partition in the 1-based notation `|169|258|347|`.
    pub fn partition_string(&self) -> String {
        let mut s = String::from("|");
        for b in &self.blocks {
            let parts: Vec<String> = b.iter().map(|l| (l + 1).to_string()).collect();
            s.push_str(&parts.join(if b.iter().any(|&l| l >= 9) { "," } else { "" }));
            s.push('|');
        }
        s
    }
}

fn multinet_error(condition: &str, witness: String) -> Error {
    Error::Multinet { condition: condition.into(), witness }
}

/// Check that `blocks` partition `0..d`.
pub fn check_partition(d: usize, blocks: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut block_of = vec![usize::MAX; d];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::Invalid(format!("block {} is empty", b + 1)));
        }
        for &l in block {
            if l >= d {
                return Err(Error::Invalid(format!("line {} out of range", l + 1)));
            }
            if block_of[l] != usize::MAX {
                return Err(Error::Invalid(format!("line {} appears twice", l + 1)));
            }
            block_of[l] = b;
        }
    }
    if let Some(l) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::Invalid(format!("line {} is in no block", l + 1)));
    }
    Ok(block_of)
}

/// Verify the multinet conditions and the numerology identities.
///
/// The base locus is the set of flats met by at least two blocks, so the
/// condition on cross-block intersections holds by construction.
pub fn verify_multinet(a: &Arrangement, blocks: &[Vec<usize>], weights: &[u32]) -> Result<MultinetCertificate> {
    let d = a.len();
    if weights.len() != d {
        return Err(Error::Invalid(format!("{} weights for {} lines", weights.len(), d)));
    }
    if let Some(l) = weights.iter().position(|&w| w == 0) {
        return Err(Error::Invalid(format!("line {} has weight 0", l + 1)));
    }
    if blocks.len() < 3 {
        return Err(Error::Invalid(format!("a multinet needs at least 3 blocks, got {}", blocks.len())));
    }
    check_partition(d, blocks)?;
    let mut blocks: Vec<Vec<usize>> = blocks.to_vec();
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    let block_of = check_partition(d, &blocks)?;
    let k = blocks.len();

    let block_weight = |b: &Vec<usize>| b.iter().map(|&l| weights[l]).sum::<u32>();
    let m = block_weight(&blocks[0]);
    for (i, b) in blocks.iter().enumerate().skip(1) {
        let w = block_weight(b);
        if w != m {
            return Err(multinet_error("1", format!("block 1 has weight {m} but block {} has weight {w}", i + 1)));
        }
    }

    let mut base_locus = Vec::new();
    let mut n = Vec::new();
    for (pi, p) in a.flats().iter().enumerate() {
        let mut per_block = vec![0u32; k];
        for &l in &p.lines {
            per_block[block_of[l]] += weights[l];
        }
        if per_block.iter().filter(|&&x| x > 0).count() < 2 {
            continue;
        }
        if let Some(i) = (1..k).find(|&i| per_block[i] != per_block[0]) {
            return Err(multinet_error(
                "3",
                format!("at {} block 1 contributes {} but block {} contributes {}", p.point_string(), per_block[0], i + 1, per_block[i]),
            ));
        }
        base_locus.push(pi);
        n.push(per_block[0]);
    }

    // numerology
    let total: u32 = weights.iter().sum();
    if total != k as u32 * m {
        return Err(multinet_error("sum of weights = km", format!("{total} != {}", k as u32 * m)));
    }
    let sq: u32 = n.iter().map(|x| x * x).sum();
    if sq != m * m {
        return Err(multinet_error("sum of n_p^2 = m^2", format!("{sq} != {}", m * m)));
    }
    for l in 0..d {
        let s: u32 = base_locus.iter().zip(&n).filter(|(&pi, _)| a.flats()[pi].contains(l)).map(|(_, &x)| x).sum();
        if s != m {
            return Err(multinet_error("sum of n_p over Z on each line = m", format!("line {} gives {s} != {m}", l + 1)));
        }
    }

    let in_z = |l1: usize, l2: usize| {
        base_locus.iter().any(|&pi| {
            let p = &a.flats()[pi];
            p.contains(l1) && p.contains(l2)
        })
    };
    let connected = blocks.iter().all(|b| {
        let mut seen = vec![false; b.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in 0..b.len() {
                if !seen[y] && !in_z(b[x], b[y]) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    });

    Ok(MultinetCertificate { blocks, weights: weights.to_vec(), k, m, base_locus, n, connected })
}

/// Largest number of candidate (coloring, weighting) pairs a search may visit.
pub const SEARCH_GUARD: f64 = 1e9;

/// All multinets (connectivity included) with `k` blocks and weights in
/// `1..=max_weight` of greatest common divisor one, up to block order.
pub fn search_multinets(a: &Arrangement, k: usize, max_weight: u32) -> Result<Vec<MultinetCertificate>> {
    let d = a.len();
    if k < 3 {
        return Err(Error::Invalid(format!("k must be at least 3, got {k}")));
    }
    if max_weight == 0 {
        return Err(Error::Invalid("max weight must be positive".into()));
    }
    let factorial: f64 = (1..=k).map(|x| x as f64).product();
    let space = (k as f64).powi(d as i32) / factorial * (max_weight as f64).powi(d as i32);
    if space > SEARCH_GUARD {
        return Err(Error::SearchGuard(format!(
            "about {space:.2e} candidates for d = {d}, k = {k}, max weight {max_weight}; lower --max-weight or --k"
        )));
    }
    let colorings = restricted_growth_strings(d, k);
    let weightings = weight_vectors(d, max_weight);
    let mut found: Vec<MultinetCertificate> = colorings
        .par_iter()
        .flat_map_iter(|coloring| {
            let blocks: Vec<Vec<usize>> = (0..k).map(|b| (0..d).filter(|&l| coloring[l] == b).collect()).collect();
            weightings
                .iter()
                .filter(|w| {
                    let m: u32 = blocks[0].iter().map(|&l| w[l]).sum();
                    blocks.iter().all(|b| b.iter().map(|&l| w[l]).sum::<u32>() == m)
                })
                .filter_map(|w| verify_multinet(a, &blocks, w).ok())
                .filter(|c| c.connected)
                .collect::<Vec<_>>()
        })
        .collect();
    found.sort_by(|x, y| (&x.blocks, &x.weights).cmp(&(&y.blocks, &y.weights)));
    Ok(found)
}

/// Colorings of `0..d` by exactly `k` colors, first occurrences in order.
fn restricted_growth_strings(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(pos: usize, used: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d - pos < k - used {
            return;
        }
        if pos == d {
            out.push(cur.clone());
            return;
        }
        for c in 0..=used.min(k - 1) {
            cur.push(c);
            rec(pos + 1, used.max(c + 1), d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, 0, d, k, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Weight vectors in `1..=w` with gcd one.
fn weight_vectors(d: usize, w: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v: Vec<u32>| (1..=w).map(move |x| {
            let mut v = v.clone();
            v.push(x);
            v
        })).collect();
    }
    out.retain(|v| v.iter().fold(0u32, |g, &x| g.gcd(&x)) == 1);
    out
}
