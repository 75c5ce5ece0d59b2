//! In-process stand-ins for the scaling infrastructure: service registry
//! with heartbeats, load balancer, TTL/LRU cache, a discrete-event clock
//! and a per-link latency model.
//!
//! The simulation loop drives these single-threaded. [`SharedRegistry`] and
//! [`SharedCache`] wrap the same types behind a lock for multi-threaded use;
//! each call is applied atomically.

pub mod balancer;
pub mod cache;
pub mod clock;
pub mod latency;
pub mod registry;

use std::hash::Hash;
use std::sync::Arc;

use parking_lot::Mutex;

pub use balancer::{LoadBalancer, Strategy};
pub use cache::{CacheStats, CacheStore};
pub use clock::{Fired, SimClock};
pub use latency::{LatencyModel, LogNormalParams};
pub use registry::{Registry, ServiceInstance};

use crate::error::Result;
use crate::time::SimTime;

#[derive(Debug, Clone)]
pub struct SharedRegistry(Arc<Mutex<Registry>>);

impl SharedRegistry {
    pub fn new(registry: Registry) -> Self {
        SharedRegistry(Arc::new(Mutex::new(registry)))
    }

    pub fn register(&self, name: &str, id: &str, now: SimTime) -> Result<()> {
        self.0.lock().register(name, id, now)
    }

    pub fn heartbeat(&self, name: &str, id: &str, now: SimTime) -> Result<()> {
        self.0.lock().heartbeat(name, id, now)
    }

    pub fn resolve(&self, name: &str, now: SimTime) -> Vec<ServiceInstance> {
        self.0.lock().resolve(name, now)
    }
}

#[derive(Debug)]
pub struct SharedCache<K, V>(Arc<Mutex<CacheStore<K, V>>>);

impl<K, V> Clone for SharedCache<K, V> {
    fn clone(&self) -> Self {
        SharedCache(Arc::clone(&self.0))
    }
}

impl<K: Eq + Hash + Clone, V: Clone> SharedCache<K, V> {
    pub fn new(capacity: usize) -> Self {
        SharedCache(Arc::new(Mutex::new(CacheStore::new(capacity))))
    }

    pub fn put(&self, key: K, value: V, ttl: SimTime, now: SimTime) {
        self.0.lock().put(key, value, ttl, now)
    }

    pub fn get(&self, key: &K, now: SimTime) -> Option<V> {
        self.0.lock().get(key, now)
    }

    pub fn stats(&self) -> CacheStats {
        self.0.lock().stats()
    }

    pub fn len(&self) -> usize {
        self.0.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.lock().is_empty()
    }
}
