use dashmap::DashMap;

/// Bounded cache of dimensional route lengths between servers of one small
/// substructure.
///
/// Every copy of a level-`h` structure is labelled identically, so the key is
/// `(h, local src, local dst)` and one entry serves all copies. Only levels
/// `1..=max_level` are cached; once `capacity` entries exist new lengths are
/// computed but not stored. Concurrent writers of the same key store the same
/// value, so the last write wins harmlessly.
#[derive(Debug)]
pub struct DimMemo {
    max_level: usize,
    capacity: usize,
    map: DashMap<(usize, u64, u64), u64>,
}

impl DimMemo {
    pub fn new(max_level: usize, capacity: usize) -> Self {
        DimMemo { max_level, capacity, map: DashMap::new() }
    }

    /// Caches level `k-2` and below, the sizes small enough to tabulate.
    pub fn for_levels_below_top(k: usize, capacity: usize) -> Self {
        Self::new(k.saturating_sub(2), capacity)
    }

    #[inline]
    pub(crate) fn covers(&self, level: usize) -> bool {
        level >= 1 && level <= self.max_level
    }

    #[inline]
    pub(crate) fn get(&self, key: (usize, u64, u64)) -> Option<u64> {
        self.map.get(&key).map(|v| *v)
    }

    #[inline]
    pub(crate) fn put(&self, key: (usize, u64, u64), len: u64) {
        if self.map.len() < self.capacity {
            self.map.insert(key, len);
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
