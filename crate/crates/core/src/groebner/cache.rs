use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, OnceLock, RwLock};

use super::{GroebnerBasis, IdealGens};
use crate::budget::Budget;
use crate::error::Result;

/// Process-wide map from (generators, order, tracking) to a computed basis.
///
/// Readers never block each other; a miss computes outside the lock and the
/// first writer wins, so concurrent misses still return identical bases.
#[derive(Default)]
pub struct BasisCache {
    map: RwLock<HashMap<String, Arc<GroebnerBasis>>>,
}

impl BasisCache {
    pub fn global() -> &'static BasisCache {
        static CACHE: OnceLock<BasisCache> = OnceLock::new();
        CACHE.get_or_init(BasisCache::default)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().expect("cache lock").clear();
    }

    fn get(&self, key: &str) -> Option<Arc<GroebnerBasis>> {
        self.map.read().expect("cache lock").get(key).cloned()
    }

    fn insert(&self, key: String, gb: GroebnerBasis) -> Arc<GroebnerBasis> {
        let mut map = self.map.write().expect("cache lock");
        map.entry(key).or_insert_with(|| Arc::new(gb)).clone()
    }
}

/// [`GroebnerBasis::compute_with`] through the global cache.
pub fn cached_buchberger(
    ideal: &IdealGens,
    track: bool,
    known_gb: Range<usize>,
    budget: &Budget,
) -> Result<Arc<GroebnerBasis>> {
    let cache = BasisCache::global();
    let key = ideal.cache_key(track);
    if let Some(gb) = cache.get(&key) {
        return Ok(gb);
    }
    let gb = GroebnerBasis::compute_with(ideal, track, known_gb, budget)?;
    Ok(cache.insert(key, gb))
}
