//! Seeded randomness. Every stochastic operation in the crate builds its
//! stream from `rng(seed)` or `derive_seed`, so identical inputs always
//! replay identical samples regardless of platform.

use crate::linalg;
use crate::space::Normed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for a tagged sub-task of a run seed.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    splitmix64(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn gaussian_vec(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Uniform direction on the Euclidean unit sphere of R^n.
pub(crate) fn euclid_unit(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vec(rng, n);
        let len = linalg::norm2(&v);
        if len > 1e-12 {
            return linalg::scale(&v, 1.0 / len);
        }
    }
}

/// Uniform Euclidean direction rescaled to unit norm in `space`.
pub(crate) fn space_unit<N: Normed + ?Sized>(space: &N, rng: &mut impl Rng) -> Vec<f64> {
    let v = euclid_unit(rng, space.dim());
    let len = space.norm(&v);
    linalg::scale(&v, 1.0 / len)
}

/// Uniform sample from the box [-half, half]^n.
pub(crate) fn box_vec(rng: &mut impl Rng, n: usize, half: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-half..=half)).collect()
}
