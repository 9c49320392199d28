//! Deterministic random draws shared by the identity checks, the residual
//! sampler and the family generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{rat, ratio, Rational};

pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational p/q with |p| <= 9 and 1 <= q <= 5.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn random_rationals<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng)).collect()
}

pub fn random_small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound))
}

/// `count` points with integer coordinates drawn uniformly from [-3, 3]^n.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect())
        .collect()
}

/// Unit-scale float points, uniform in [-1, 1]^n.
pub fn unit_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect()
}
