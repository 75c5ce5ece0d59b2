use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::time::SimTime;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub evictions: u64,
    pub expirations: u64,
}

#[derive(Debug, Clone)]
struct Entry<V> {
    value: V,
    expires_at: SimTime,
    last_used: u64,
}

/// Capacity-bounded cache with per-entry TTL and LRU eviction.
#[derive(Debug, Clone)]
pub struct CacheStore<K, V> {
    capacity: usize,
    entries: HashMap<K, Entry<V>>,
    recency: BTreeMap<u64, K>,
    seq: u64,
    stats: CacheStats,
}

impl<K: Eq + Hash + Clone, V: Clone> CacheStore<K, V> {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "cache capacity must be positive");
        CacheStore {
            capacity,
            entries: HashMap::new(),
            recency: BTreeMap::new(),
            seq: 0,
            stats: CacheStats::default(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }

    /// Stores `value` until `now + ttl`. Expired entries are dropped before
    /// the least recently used live entry is evicted to make room.
    pub fn put(&mut self, key: K, value: V, ttl: SimTime, now: SimTime) {
        debug_assert!(ttl > SimTime::ZERO, "ttl must be positive");
        let seq = self.next_seq();
        if let Some(old) = self.entries.get_mut(&key) {
            self.recency.remove(&old.last_used);
            old.value = value;
            old.expires_at = now + ttl;
            old.last_used = seq;
            self.recency.insert(seq, key);
            return;
        }
        if self.entries.len() >= self.capacity {
            self.purge_expired(now);
        }
        if self.entries.len() >= self.capacity {
            if let Some((_, lru)) = self.recency.pop_first() {
                self.entries.remove(&lru);
                self.stats.evictions += 1;
            }
        }
        self.entries.insert(
            key.clone(),
            Entry {
                value,
                expires_at: now + ttl,
                last_used: seq,
            },
        );
        self.recency.insert(seq, key);
    }

    /// Live value for `key`; counts a hit or a miss.
    pub fn get(&mut self, key: &K, now: SimTime) -> Option<V> {
        let seq = self.next_seq();
        match self.entries.get_mut(key) {
            Some(e) if now < e.expires_at => {
                self.recency.remove(&e.last_used);
                e.last_used = seq;
                self.recency.insert(seq, key.clone());
                self.stats.hits += 1;
                Some(e.value.clone())
            }
            Some(_) => {
                let e = self.entries.remove(key).unwrap();
                self.recency.remove(&e.last_used);
                self.stats.expirations += 1;
                self.stats.misses += 1;
                None
            }
            None => {
                self.stats.misses += 1;
                None
            }
        }
    }

    fn purge_expired(&mut self, now: SimTime) {
        let dead: Vec<(u64, K)> = self
            .recency
            .iter()
            .filter(|(_, k)| self.entries[*k].expires_at <= now)
            .map(|(s, k)| (*s, k.clone()))
            .collect();
        for (s, k) in dead {
            self.recency.remove(&s);
            self.entries.remove(&k);
            self.stats.expirations += 1;
        }
    }

    fn next_seq(&mut self) -> u64 {
        self.seq += 1;
        self.seq
    }
}
