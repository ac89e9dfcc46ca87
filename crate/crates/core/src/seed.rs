//! Seed derivation shared by every randomized routine.
//!
//! Randomized work is split into fixed-size chunks. Chunk `c` of a run seeded
//! with `s` draws from the ChaCha stream `c` of the generator keyed by `s`, so
//! the set of draws never depends on how many threads process the chunks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Number of samples handled by one chunk (one ChaCha stream).
pub const CHUNK_SAMPLES: u64 = 1 << 16;

/// Generator for stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Mixes a base seed with an instance index (SplitMix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Splits `samples` into `(stream, count)` chunks.
pub(crate) fn chunks(samples: u64) -> impl Iterator<Item = (u64, u64)> {
    let full = samples / CHUNK_SAMPLES;
    let rest = samples % CHUNK_SAMPLES;
    (0..full)
        .map(|c| (c, CHUNK_SAMPLES))
        .chain((rest > 0).then_some((full, rest)))
}
