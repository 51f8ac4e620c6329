//! Deterministic random sources for the verification suites.
//!
//! Every trial gets its own stream derived from `(seed, trial)`, so suites
//! produce the same samples regardless of how trials are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
