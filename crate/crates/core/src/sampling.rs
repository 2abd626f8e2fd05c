//! Seeded random sampling. Every stream is derived from `(seed, stream)` so
//! results do not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default coordinate range for sampled algebra elements.
pub const COORD_RANGE: f64 = 3.0;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for one independent stream of a run.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(stream)))
}

/// Stable 64-bit label for a string, used to give each family its own stream.
pub fn label_hash(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

pub fn uniform_vec<R: Rng>(rng: &mut R, n: usize, half_width: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-half_width..=half_width)).collect()
}

/// Random dual vector that visits every stratum: `f1` and `f2` are each
/// zeroed with probability 1/4.
pub fn stratified_functional<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut f = uniform_vec(rng, n, COORD_RANGE);
    if rng.gen_bool(0.25) {
        f[0] = 0.0;
    }
    if n > 1 && rng.gen_bool(0.25) {
        f[1] = 0.0;
    }
    f
}
