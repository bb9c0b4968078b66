use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use givental_core::quad::{CacheKey, CachedWave, WaveCache};

/// Thread-safe bounded cache for inner wave functions.
#[derive(Debug)]
pub struct SharedCache {
    map: RwLock<HashMap<CacheKey, CachedWave>>,
    bound: usize,
    rejected: AtomicUsize,
}

impl SharedCache {
    pub fn new(bound: usize) -> Self {
        SharedCache { map: RwLock::new(HashMap::new()), bound, rejected: AtomicUsize::new(0) }
    }

    pub fn rejected(&self) -> usize {
        self.rejected.load(Ordering::Relaxed)
    }
}

impl WaveCache for SharedCache {
    fn get(&self, key: &CacheKey) -> Option<CachedWave> {
        self.map.read().expect("cache lock poisoned").get(key).copied()
    }

    fn insert(&self, key: CacheKey, value: CachedWave) -> bool {
        let mut m = self.map.write().expect("cache lock poisoned");
        if m.len() >= self.bound && !m.contains_key(&key) {
            self.rejected.fetch_add(1, Ordering::Relaxed);
            return false;
        }
        m.insert(key, value);
        true
    }

    fn len(&self) -> usize {
        self.map.read().expect("cache lock poisoned").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use givental_core::quad::{QuadConfig, RecursiveEvaluator};
    use rayon::prelude::*;

    #[test]
    fn parallel_results_match_serial() {
        let cache = SharedCache::new(usize::MAX);
        let cfg = QuadConfig { panel_width: 2.0, max_halvings: 1, ..Default::default() };
        let ev = RecursiveEvaluator::new(cfg.clone(), &cache);
        let xs: Vec<[f64; 3]> = (0..3).map(|k| [0.1 * k as f64, 0.0, -0.1]).collect();
        let par: Vec<_> = xs.par_iter().map(|x| ev.evaluate(&[0.3, -0.2, 0.1], x).unwrap().value).collect();
        let local = givental_core::quad::LocalCache::new();
        let serial = RecursiveEvaluator::new(cfg, &local);
        for (x, v) in xs.iter().zip(par) {
            assert_eq!(serial.evaluate(&[0.3, -0.2, 0.1], x).unwrap().value, v);
        }
        assert!(cache.len() > 0 && cache.rejected() == 0);
    }
}
