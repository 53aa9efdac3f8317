//! Deterministic per-task random streams.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// SplitMix64 finalizer applied to `seed ⊕ golden·(index + 1)`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream for task `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> DVector<f64> {
    DVector::from_iterator(len, (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)))
}

/// Gaussian vector supported on the coordinates listed in `support`.
pub fn gaussian_on<R: Rng + ?Sized>(rng: &mut R, len: usize, support: &[usize]) -> DVector<f64> {
    let mut v = DVector::zeros(len);
    for &i in support {
        v[i] = rng.sample::<f64, _>(StandardNormal);
    }
    v
}
