use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::topology::{compute_sizes, NetworkSpec};

/// The generator behind every sampled workload: ChaCha8 seeded with `seed`.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` uniform ordered pairs of distinct servers.
///
/// `src` is uniform on `[0, N)` and `dst` uniform on the remaining `N - 1`
/// servers, so each ordered pair has probability `1 / (N (N - 1))`.
pub fn sample_pairs(spec: &NetworkSpec, count: usize, seed: u64) -> Result<Vec<(u64, u64)>> {
    let servers = compute_sizes(spec)?.servers();
    sample_from(servers, count, &mut rng_for(seed))
}

pub(crate) fn sample_from(servers: u64, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(u64, u64)>> {
    if count > 0 && servers < 2 {
        return Err(Error::InvalidCount(format!("cannot draw distinct pairs from {servers} servers")));
    }
    Ok((0..count)
        .map(|_| {
            let src = rng.gen_range(0..servers);
            let mut dst = rng.gen_range(0..servers - 1);
            if dst >= src {
                dst += 1;
            }
            (src, dst)
        })
        .collect())
}
