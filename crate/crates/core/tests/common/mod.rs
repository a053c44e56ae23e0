#![allow(dead_code)]

pub mod golden;
pub mod laws;
pub mod props;
pub mod terms;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
