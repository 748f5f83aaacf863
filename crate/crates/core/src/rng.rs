//! Fixed-seed randomness for generic choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{rat, Rational};

/// Seed shared by every generic choice; reported by the CLI.
pub const SEED: u64 = 0x5eed_07b1;

/// Number of fresh draws tried before a genericity failure is reported.
pub const MAX_REDRAWS: usize = 5;

/// Generator for the named purpose. Different streams never share draws.
pub fn stream(purpose: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(purpose);
    r
}

/// Random integer in `[-bound, bound]` as a rational.
pub fn small_rational(r: &mut ChaCha8Rng, bound: i64) -> Rational {
    rat(r.gen_range(-bound..=bound))
}

/// Random vector whose entries sum to zero, not identically zero.
pub fn zero_sum_vector(r: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<Rational> {
    loop {
        let mut v: Vec<Rational> = (0..len.saturating_sub(1)).map(|_| small_rational(r, bound)).collect();
        let s: Rational = v.iter().cloned().sum();
        v.push(-s);
        if v.iter().any(|x| *x != rat(0)) {
            return v;
        }
    }
}
