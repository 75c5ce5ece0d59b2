use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fabric::registry::ServiceInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    RoundRobin,
    LeastLoaded,
}

/// Picks an instance per request. Round-robin keeps one counter per service.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadBalancer {
    strategy: Strategy,
    counters: BTreeMap<String, usize>,
}

impl LoadBalancer {
    pub fn new(strategy: Strategy) -> Self {
        LoadBalancer {
            strategy,
            counters: BTreeMap::new(),
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Index into `instances` of the chosen target.
    pub fn route(&mut self, service: &str, instances: &[ServiceInstance]) -> Result<usize> {
        if instances.is_empty() {
            return Err(Error::NoInstanceAvailable(service.to_string()));
        }
        let idx = match self.strategy {
            Strategy::RoundRobin => {
                let counter = self.counters.entry(service.to_string()).or_insert(0);
                let idx = *counter % instances.len();
                *counter = counter.wrapping_add(1);
                idx
            }
            Strategy::LeastLoaded => instances
                .iter()
                .enumerate()
                .min_by_key(|(i, inst)| (inst.in_flight, *i))
                .map(|(i, _)| i)
                .unwrap(),
        };
        Ok(idx)
    }
}
