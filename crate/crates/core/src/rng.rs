//! Seeded pseudorandom source shared by the samplers and generators.
//!
//! xoshiro256** seeded through `SeedableRng::seed_from_u64`, so a seed gives
//! the same stream on every platform.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;

pub type Rng = Xoshiro256StarStar;

pub fn seeded(seed: u64) -> Rng {
    Xoshiro256StarStar::seed_from_u64(seed)
}
