//! Counter-based random substreams.
//!
//! A stream is identified by `(seed, domain, index)`. The domain separates
//! unrelated consumers (direct simulation, the analytic sampler, the
//! contrast experiment, synthetic datasets) that may be handed the same user seed; the index
//! names a fixed work unit, so which thread runs the unit is irrelevant.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Draws per work unit for the chunked samplers.
pub(crate) const CHUNK: usize = 8192;

pub(crate) const DOMAIN_DIRECT: u64 = 0x6469_7265_6374_0001;
pub(crate) const DOMAIN_ANALYTIC: u64 = 0x616e_616c_7974_0002;
pub(crate) const DOMAIN_CONTRAST: u64 = 0x636f_6e74_7261_0003;
pub(crate) const DOMAIN_DATASET: u64 = 0x6461_7461_7365_0004;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn substream(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ domain));
    rng.set_stream(index);
    rng
}

/// Sizes of the fixed work units covering `n` draws.
pub(crate) fn chunk_lengths(n: usize) -> impl Iterator<Item = usize> {
    (0..n.div_ceil(CHUNK)).map(move |i| CHUNK.min(n - i * CHUNK))
}
