//! Seeded randomness.
//!
//! Every randomized operation takes a `u64` seed and expands it with ChaCha8
//! (`rand_chacha::ChaCha8Rng::seed_from_u64`). Independent sub-streams of one run use
//! ChaCha's stream selector, so adding draws to one stage never shifts another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator seeded with `seed`.
pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}
