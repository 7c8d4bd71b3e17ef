//! Shared helpers for the integration suites: a process-wide context cache
//! and deterministic seeded randomness.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use joseph_core::ideal::SeedTensor;
use joseph_core::lie::{AlgebraKind, LieContext};
use joseph_core::rational::{int, Rational};
use joseph_core::tensor::DenseTensor;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

pub const DEFAULT_SEED: u64 = 0x4a5e9_u64;

static CACHE: OnceLock<Mutex<HashMap<AlgebraKind, Arc<LieContext>>>> = OnceLock::new();

pub fn ctx(kind: AlgebraKind) -> Arc<LieContext> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(kind)
        .or_insert_with(|| {
            Arc::new(LieContext::build_relaxed(kind).expect("context builds"))
        })
        .clone()
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ stream)
}

pub fn random_seed(context: &LieContext, stream: u64) -> SeedTensor {
    let mut r = rng(stream);
    SeedTensor::random(context, &mut r)
}

/// A pseudo-random element of `g (x) g` with small integer coordinates.
pub fn random_quadratic(context: &LieContext, stream: u64) -> DenseTensor {
    use rand_core::RngCore;
    let mut r = rng(stream);
    let d = context.algebra_dim();
    let mut coords: Vec<Rational> = Vec::with_capacity(d * d);
    for _ in 0..d * d {
        coords.push(int((r.next_u32() % 11) as i64 - 5));
    }
    context.quadratic_from_coords(&coords).expect("valid coords")
}
