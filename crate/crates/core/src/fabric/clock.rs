use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::time::SimTime;

/// An executed event: when it fired and its insertion sequence number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fired<E> {
    pub at: SimTime,
    pub seq: u64,
    pub event: E,
}

struct Pending<E> {
    at: SimTime,
    seq: u64,
    event: E,
}

impl<E> PartialEq for Pending<E> {
    fn eq(&self, other: &Self) -> bool {
        (self.at, self.seq) == (other.at, other.seq)
    }
}

impl<E> Eq for Pending<E> {}

impl<E> PartialOrd for Pending<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E> Ord for Pending<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.at, self.seq).cmp(&(other.at, other.seq))
    }
}

/// Discrete-event clock. Events fire in `(fire_time, insertion_seq)` order
/// and `now` never moves backwards.
pub struct SimClock<E> {
    now: SimTime,
    queue: BinaryHeap<Reverse<Pending<E>>>,
    next_seq: u64,
    rng_seed: u64,
}

impl<E> SimClock<E> {
    pub fn new(rng_seed: u64) -> Self {
        SimClock {
            now: SimTime::ZERO,
            queue: BinaryHeap::new(),
            next_seq: 0,
            rng_seed,
        }
    }

    pub fn now(&self) -> SimTime {
        self.now
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    pub fn pending(&self) -> usize {
        self.queue.len()
    }

    /// Queues `event` to fire `delay` after now; returns its sequence number.
    pub fn schedule(&mut self, delay: SimTime, event: E) -> u64 {
        let at = self.now + delay;
        self.push(at, event)
    }

    /// Queues `event` at an absolute time, which may not lie in the past.
    pub fn schedule_at(&mut self, at: SimTime, event: E) -> Result<u64> {
        if at < self.now {
            return Err(Error::invalid(format!(
                "negative delay: {at} is before now {}",
                self.now
            )));
        }
        Ok(self.push(at, event))
    }

    fn push(&mut self, at: SimTime, event: E) -> u64 {
        let seq = self.next_seq;
        self.next_seq += 1;
        self.queue.push(Reverse(Pending { at, seq, event }));
        seq
    }

    /// Removes the next event and moves the clock to its fire time.
    pub fn pop(&mut self) -> Option<Fired<E>> {
        let Reverse(p) = self.queue.pop()?;
        self.now = self.now.max(p.at);
        Some(Fired {
            at: p.at,
            seq: p.seq,
            event: p.event,
        })
    }

    /// Fires every queued event; nothing new can be scheduled meanwhile.
    pub fn advance_until_idle(&mut self) -> Vec<Fired<E>> {
        std::iter::from_fn(|| self.pop()).collect()
    }

    /// Fires events through `handler`, which may schedule more. Returns the
    /// `(fire_time, seq)` trace of everything executed.
    pub fn run_until_idle<F>(&mut self, mut handler: F) -> Vec<(SimTime, u64)>
    where
        F: FnMut(&mut SimClock<E>, Fired<E>),
    {
        let mut trace = Vec::new();
        while let Some(f) = self.pop() {
            trace.push((f.at, f.seq));
            handler(self, f);
        }
        trace
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_time_keeps_insertion_order() {
        let mut c = SimClock::new(0);
        c.schedule(SimTime(10), "b");
        c.schedule(SimTime(5), "a");
        c.schedule(SimTime(10), "c");
        let order: Vec<_> = c.advance_until_idle().into_iter().map(|f| f.event).collect();
        assert_eq!(order, ["a", "b", "c"]);
        assert_eq!(c.now(), SimTime(10));
    }

    #[test]
    fn empty_advance() {
        let mut c: SimClock<u8> = SimClock::new(0);
        assert!(c.advance_until_idle().is_empty());
        assert_eq!(c.now(), SimTime::ZERO);
    }

    #[test]
    fn past_schedule_rejected() {
        let mut c = SimClock::new(0);
        c.schedule(SimTime(10), 1);
        c.pop();
        assert!(c.schedule_at(SimTime(9), 2).is_err());
        assert!(c.schedule_at(SimTime(10), 2).is_ok());
    }

    #[test]
    fn handler_can_reschedule() {
        let mut c = SimClock::new(0);
        c.schedule(SimTime(1), 3u32);
        let mut seen = Vec::new();
        let trace = c.run_until_idle(|clock, f| {
            seen.push((f.at, f.event));
            if f.event > 0 {
                clock.schedule(SimTime(2), f.event - 1);
            }
        });
        assert_eq!(trace.len(), 4);
        assert_eq!(seen.last().unwrap(), &(SimTime(7), 0));
    }
}
