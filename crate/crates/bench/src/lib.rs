//! Fixtures shared by the benchmarks.

use acs_core::optimize::random_pair;
use acs_core::{minimal_spectrum, validate_family, AmbientPair, Spectrum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Families spanning every `g` and a range of dimensions.
pub const FAMILIES: [(u32, u32, u32); 6] = [
    (1, 10, 10),
    (2, 5, 20),
    (3, 8, 8),
    (4, 4, 11),
    (4, 12, 17),
    (6, 2, 2),
];

pub fn spectrum(g: u32, m1: u32, m2: u32) -> Spectrum {
    minimal_spectrum(&validate_family(g, m1, m2).expect("valid family")).expect("spectrum")
}

pub fn pairs(spec: &Spectrum, n: usize, seed: u64) -> Vec<AmbientPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_pair(spec, &mut rng)).collect()
}

pub fn label(g: u32, m1: u32, m2: u32) -> String {
    format!("g{g}_{m1}_{m2}")
}
