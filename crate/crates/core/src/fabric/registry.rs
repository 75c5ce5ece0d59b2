use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::time::SimTime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServiceInstance {
    pub service_name: String,
    pub instance_id: String,
    pub registered_at: SimTime,
    pub last_heartbeat: SimTime,
    pub in_flight: u32,
}

impl ServiceInstance {
    pub fn is_healthy(&self, now: SimTime, ttl: SimTime) -> bool {
        now.saturating_sub(self.last_heartbeat) <= ttl
    }
}

/// Service discovery with heartbeat-based health.
///
/// An instance is healthy while `now - last_heartbeat <= heartbeat_ttl`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registry {
    instances: BTreeMap<String, Vec<ServiceInstance>>,
    heartbeat_ttl: SimTime,
}

impl Registry {
    pub fn new(heartbeat_ttl: SimTime) -> Self {
        Registry {
            instances: BTreeMap::new(),
            heartbeat_ttl,
        }
    }

    pub fn heartbeat_ttl(&self) -> SimTime {
        self.heartbeat_ttl
    }

    pub fn register(&mut self, name: &str, id: &str, now: SimTime) -> Result<()> {
        let list = self.instances.entry(name.to_string()).or_default();
        if list.iter().any(|i| i.instance_id == id) {
            return Err(Error::AlreadyRegistered {
                service: name.into(),
                id: id.into(),
            });
        }
        list.push(ServiceInstance {
            service_name: name.into(),
            instance_id: id.into(),
            registered_at: now,
            last_heartbeat: now,
            in_flight: 0,
        });
        Ok(())
    }

    pub fn heartbeat(&mut self, name: &str, id: &str, now: SimTime) -> Result<()> {
        let inst = self.instance_mut(name, id)?;
        inst.last_heartbeat = inst.last_heartbeat.max(now);
        Ok(())
    }

    /// Healthy instances of `name`, in registration order.
    pub fn resolve(&self, name: &str, now: SimTime) -> Vec<ServiceInstance> {
        self.instances
            .get(name)
            .map(|list| {
                list.iter()
                    .filter(|i| i.is_healthy(now, self.heartbeat_ttl))
                    .cloned()
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn instances(&self, name: &str) -> &[ServiceInstance] {
        self.instances.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn begin_request(&mut self, name: &str, id: &str) -> Result<()> {
        self.instance_mut(name, id)?.in_flight += 1;
        Ok(())
    }

    pub fn end_request(&mut self, name: &str, id: &str) -> Result<()> {
        let inst = self.instance_mut(name, id)?;
        inst.in_flight = inst.in_flight.saturating_sub(1);
        Ok(())
    }

    fn instance_mut(&mut self, name: &str, id: &str) -> Result<&mut ServiceInstance> {
        self.instances
            .get_mut(name)
            .and_then(|list| list.iter_mut().find(|i| i.instance_id == id))
            .ok_or_else(|| Error::NotFound {
                service: name.into(),
                id: id.into(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TTL: SimTime = SimTime::from_secs(30);

    #[test]
    fn register_and_resolve() {
        let mut r = Registry::new(TTL);
        r.register("pricing", "p1", SimTime::ZERO).unwrap();
        r.register("demand", "d1", SimTime::ZERO).unwrap();
        let ids: Vec<_> = r.resolve("pricing", SimTime::ZERO).into_iter().map(|i| i.instance_id).collect();
        assert_eq!(ids, ["p1"]);
        assert_eq!(r.resolve("demand", SimTime::ZERO).len(), 1);
        assert!(matches!(
            r.register("pricing", "p1", SimTime::ZERO),
            Err(Error::AlreadyRegistered { .. })
        ));
    }

    #[test]
    fn ttl_boundary_inclusive() {
        let mut r = Registry::new(TTL);
        r.register("pricing", "p1", SimTime::ZERO).unwrap();
        let now = SimTime::from_secs(10);
        r.heartbeat("pricing", "p1", now).unwrap();
        assert_eq!(r.resolve("pricing", now + TTL).len(), 1);
        assert!(r.resolve("pricing", now + TTL + SimTime(1)).is_empty());
    }

    #[test]
    fn unknown_lookups() {
        let mut r = Registry::new(TTL);
        assert!(r.resolve("unknown", SimTime::ZERO).is_empty());
        assert!(matches!(r.heartbeat("x", "y", SimTime::ZERO), Err(Error::NotFound { .. })));
    }

    #[test]
    fn registration_order_preserved() {
        let mut r = Registry::new(TTL);
        for id in ["c", "a", "b"] {
            r.register("svc", id, SimTime::ZERO).unwrap();
        }
        let ids: Vec<_> = r.resolve("svc", SimTime::ZERO).into_iter().map(|i| i.instance_id).collect();
        assert_eq!(ids, ["c", "a", "b"]);
    }
}
