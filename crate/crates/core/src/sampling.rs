//! Seeded random probe points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic generator used by every randomized check.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Point in the open upper half-plane with `|Re| ≤ 3` and `Im ∈ [0.05, 3]`.
pub fn upper_half_plane<R: Rng>(r: &mut R) -> Complex64 {
    Complex64::new(r.gen_range(-3.0..3.0), r.gen_range(0.05..3.0))
}

/// Point in the square `[-2, 2]²`.
pub fn complex_box<R: Rng>(r: &mut R) -> Complex64 {
    Complex64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))
}
