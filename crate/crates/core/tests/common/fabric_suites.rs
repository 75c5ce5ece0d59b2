//! Randomised operation suites for the service fabric. Each returns the
//! first violated property as an error message.

#![allow(dead_code)]

use std::collections::BTreeMap;

use fare_core::fabric::{CacheStore, LoadBalancer, Registry, SimClock, Strategy};
use fare_core::SimTime;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<(), String>;

/// Round-robin over a fixed pool: per-instance counts never differ by
/// more than one, and are equal after every full cycle.
pub fn round_robin_suite(seed: u64, ops: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reg = Registry::new(SimTime::from_secs(30));
    let services = ["pricing", "demand"];
    let mut pools = BTreeMap::new();
    for (s, n) in services.iter().zip([rng.random_range(1..8), rng.random_range(1..8)]) {
        for i in 0..n {
            reg.register(s, &format!("{s}-{i}"), SimTime::ZERO).map_err(|e| e.to_string())?;
        }
        pools.insert(*s, vec![0u64; n]);
    }
    let mut lb = LoadBalancer::new(Strategy::RoundRobin);
    for op in 0..ops {
        let s = services[rng.random_range(0..services.len())];
        let healthy = reg.resolve(s, SimTime::ZERO);
        let i = lb.route(s, &healthy).map_err(|e| e.to_string())?;
        let counts = pools.get_mut(s).unwrap();
        counts[i] += 1;
        let (lo, hi) = (*counts.iter().min().unwrap(), *counts.iter().max().unwrap());
        if hi - lo > 1 {
            return Err(format!("op {op}: {s} counts {counts:?}"));
        }
        let total: u64 = counts.iter().sum();
        if total.is_multiple_of(counts.len() as u64) && hi != lo {
            return Err(format!("op {op}: uneven after full cycle {counts:?}"));
        }
    }
    Ok(())
}

/// Least-loaded always picks the lowest in-flight count, earliest
/// registration on ties.
pub fn least_loaded_suite(seed: u64, ops: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reg = Registry::new(SimTime::from_secs(30));
    let n = rng.random_range(1..8);
    for i in 0..n {
        reg.register("svc", &format!("i{i}"), SimTime::ZERO).map_err(|e| e.to_string())?;
    }
    let mut lb = LoadBalancer::new(Strategy::LeastLoaded);
    for op in 0..ops {
        let healthy = reg.resolve("svc", SimTime::ZERO);
        if rng.random_bool(0.6) {
            let i = lb.route("svc", &healthy).map_err(|e| e.to_string())?;
            let min = healthy.iter().map(|s| s.in_flight).min().unwrap();
            let want = healthy.iter().position(|s| s.in_flight == min).unwrap();
            if i != want {
                return Err(format!("op {op}: picked {i}, expected {want}"));
            }
            reg.begin_request("svc", &healthy[i].instance_id).map_err(|e| e.to_string())?;
        } else if let Some(busy) = healthy.iter().find(|s| s.in_flight > 0) {
            reg.end_request("svc", &busy.instance_id).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

#[derive(Clone)]
struct ModelEntry {
    value: u64,
    expires_at: SimTime,
    last_used: u64,
}

/// Cache against a straightforward reference model: same hits, misses and
/// contents; nothing returned at or after its expiry; size within capacity.
pub fn cache_suite(seed: u64, ops: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let capacity = rng.random_range(1..12);
    let mut cache: CacheStore<u32, u64> = CacheStore::new(capacity);
    let mut model: BTreeMap<u32, ModelEntry> = BTreeMap::new();
    let (mut hits, mut misses, mut gets) = (0u64, 0u64, 0u64);
    let mut now = SimTime::ZERO;
    let mut tick = 0u64;

    for op in 0..ops {
        now = now + SimTime::from_secs(rng.random_range(0..4));
        tick += 1;
        let key = rng.random_range(0..20u32);
        if rng.random_bool(0.45) {
            let ttl = SimTime::from_secs(rng.random_range(1..15));
            let value = op as u64;
            cache.put(key, value, ttl, now);
            if let Some(e) = model.get_mut(&key) {
                *e = ModelEntry { value, expires_at: now + ttl, last_used: tick };
            } else {
                if model.len() >= capacity {
                    model.retain(|_, e| e.expires_at > now);
                }
                if model.len() >= capacity {
                    let lru = *model.iter().min_by_key(|(_, e)| e.last_used).unwrap().0;
                    model.remove(&lru);
                }
                model.insert(key, ModelEntry { value, expires_at: now + ttl, last_used: tick });
            }
        } else {
            gets += 1;
            let got = cache.get(&key, now);
            let want = match model.get_mut(&key) {
                Some(e) if now < e.expires_at => {
                    e.last_used = tick;
                    hits += 1;
                    Some(e.value)
                }
                Some(_) => {
                    model.remove(&key);
                    misses += 1;
                    None
                }
                None => {
                    misses += 1;
                    None
                }
            };
            if got != want {
                return Err(format!("op {op}: get({key}) at {now} returned {got:?}, expected {want:?}"));
            }
        }
        let stats = cache.stats();
        if stats.hits + stats.misses != gets || stats.hits != hits || stats.misses != misses {
            return Err(format!("op {op}: stats {stats:?} vs hits {hits} misses {misses}"));
        }
        if cache.len() > capacity || cache.len() != model.len() {
            return Err(format!("op {op}: len {} model {} capacity {capacity}", cache.len(), model.len()));
        }
    }
    Ok(())
}

/// Registry health follows `now - last_heartbeat <= ttl` exactly,
/// including the boundary, with results in registration order.
pub fn registry_suite(seed: u64, ops: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ttl = SimTime::from_secs(rng.random_range(1..20));
    let mut reg = Registry::new(ttl);
    let mut beats: BTreeMap<String, Vec<(String, SimTime)>> = BTreeMap::new();
    let mut now = SimTime::ZERO;
    for op in 0..ops {
        let svc = format!("s{}", rng.random_range(0..3));
        match rng.random_range(0..10) {
            0 => {
                let id = format!("i{}", rng.random_range(0..6));
                let exists = beats.get(&svc).is_some_and(|v| v.iter().any(|(i, _)| *i == id));
                match (reg.register(&svc, &id, now), exists) {
                    (Ok(()), false) => beats.entry(svc).or_default().push((id, now)),
                    (Err(_), true) => {}
                    (r, e) => return Err(format!("op {op}: register {r:?} with existing={e}")),
                }
            }
            1..=3 => {
                let id = format!("i{}", rng.random_range(0..6));
                let slot = beats.get_mut(&svc).and_then(|v| v.iter_mut().find(|(i, _)| *i == id));
                match (reg.heartbeat(&svc, &id, now), slot) {
                    (Ok(()), Some(s)) => s.1 = now,
                    (Err(_), None) => {}
                    (r, _) => return Err(format!("op {op}: heartbeat {r:?}")),
                }
            }
            4..=6 => {
                // probe exactly at and just past the boundary now and then
                let probe = match rng.random_range(0..4) {
                    0 => beats.get(&svc).and_then(|v| v.first()).map(|(_, t)| *t + ttl),
                    1 => beats.get(&svc).and_then(|v| v.first()).map(|(_, t)| *t + ttl + SimTime(1)),
                    _ => None,
                };
                let at = probe.filter(|&p| p >= now).unwrap_or(now);
                let got: Vec<String> = reg.resolve(&svc, at).into_iter().map(|s| s.instance_id).collect();
                let want: Vec<String> = beats
                    .get(&svc)
                    .map(|v| v.iter().filter(|(_, t)| at.saturating_sub(*t) <= ttl).map(|(i, _)| i.clone()).collect())
                    .unwrap_or_default();
                if got != want {
                    return Err(format!("op {op}: resolve({svc}, {at}) = {got:?}, expected {want:?}"));
                }
            }
            _ => now = now + SimTime(rng.random_range(0..3_000_000)),
        }
    }
    Ok(())
}

/// Clock: fire times never decrease, equal times keep insertion order,
/// and the same schedule replays to the same trace.
pub fn clock_suite(seed: u64, ops: usize) -> Outcome {
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut clock: SimClock<u32> = SimClock::new(seed);
        for i in 0..ops as u32 / 2 {
            clock.schedule(SimTime(rng.random_range(0..50)), i);
        }
        let mut extra = ops as u32;
        let mut spawned = 0;
        clock.run_until_idle(|c, fired| {
            if fired.event % 3 == 0 && spawned < ops / 2 {
                spawned += 1;
                extra += 1;
                c.schedule(SimTime(fired.event as u64 % 7), extra);
            }
        })
    };
    let a = run();
    if a != run() {
        return Err("traces differ under the same seed".into());
    }
    for w in a.windows(2) {
        if w[1].0 < w[0].0 || (w[1].0 == w[0].0 && w[1].1 < w[0].1) {
            return Err(format!("out of order: {:?} then {:?}", w[0], w[1]));
        }
    }
    Ok(())
}
