//! Activation policies over the look/commit event model.
//!
//! The engine computes the enabled event set and asks the policy which event
//! fires next. Compute is folded into look (the decision is a deterministic
//! function of the snapshot), so only commit timing is adversarial. All
//! policies are fully deterministic for a fixed seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

pub type RobotId = usize;

/// A schedulable step: a robot takes a snapshot, or applies its pending
/// decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EventKind {
    Look { robot: RobotId },
    Commit { robot: RobotId },
}

impl EventKind {
    pub fn robot(&self) -> RobotId {
        match *self {
            EventKind::Look { robot } | EventKind::Commit { robot } => robot,
        }
    }

    pub fn is_look(&self) -> bool {
        matches!(self, EventKind::Look { .. })
    }
}

/// Scheduling policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Policy {
    /// Lockstep rounds: every idle robot looks, then every one commits.
    Fsync,
    /// Per round, each idle robot is activated with probability `p`.
    Ssync { p: f64 },
    /// Uniform choice over enabled events with a bounded-unfairness aging
    /// rule: an event continuously enabled for `k` selections is served
    /// before any random pick.
    AsyncRandom {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        k: u32,
    },
    /// Replay of a fixed event list.
    Script { events: Vec<EventKind> },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchedulerError {
    #[error("scripted event {0:?} is not enabled")]
    IllegalScriptEvent(EventKind),
    #[error("activation probability {0} outside (0, 1]")]
    BadProbability(f64),
    #[error("aging bound must be at least 1")]
    BadAgingBound,
}

enum Inner {
    Fsync {
        queue: VecDeque<EventKind>,
    },
    Ssync {
        p: f64,
        rng: ChaCha8Rng,
        queue: VecDeque<EventKind>,
    },
    AsyncRandom {
        k: u32,
        rng: ChaCha8Rng,
        ages: BTreeMap<EventKind, u32>,
    },
    Script {
        events: VecDeque<EventKind>,
    },
}

/// Instantiated policy with private state. `run_seed` feeds the policy RNG
/// unless the policy carries its own seed.
pub struct Scheduler {
    inner: Inner,
}

impl Scheduler {
    pub fn new(policy: &Policy, run_seed: u64) -> Result<Scheduler, SchedulerError> {
        let inner = match policy {
            Policy::Fsync => Inner::Fsync {
                queue: VecDeque::new(),
            },
            Policy::Ssync { p } => {
                if !(*p > 0.0 && *p <= 1.0) {
                    return Err(SchedulerError::BadProbability(*p));
                }
                Inner::Ssync {
                    p: *p,
                    rng: ChaCha8Rng::seed_from_u64(run_seed),
                    queue: VecDeque::new(),
                }
            }
            Policy::AsyncRandom { seed, k } => {
                if *k < 1 {
                    return Err(SchedulerError::BadAgingBound);
                }
                Inner::AsyncRandom {
                    k: *k,
                    rng: ChaCha8Rng::seed_from_u64(seed.unwrap_or(run_seed)),
                    ages: BTreeMap::new(),
                }
            }
            Policy::Script { events } => Inner::Script {
                events: events.iter().copied().collect(),
            },
        };
        Ok(Scheduler { inner })
    }

    /// Picks the next event among `enabled` (sorted by robot id), or `None`
    /// when the run is quiescent. `enabled` must be the engine-computed
    /// enabled set for the current state.
    pub fn next_event(
        &mut self,
        enabled: &[EventKind],
    ) -> Result<Option<EventKind>, SchedulerError> {
        if enabled.is_empty() {
            return Ok(None);
        }
        match &mut self.inner {
            Inner::Fsync { queue } => {
                if queue.is_empty() {
                    let looks: Vec<EventKind> =
                        enabled.iter().copied().filter(EventKind::is_look).collect();
                    for e in &looks {
                        queue.push_back(*e);
                    }
                    for e in &looks {
                        queue.push_back(EventKind::Commit { robot: e.robot() });
                    }
                }
                Ok(queue.pop_front())
            }
            Inner::Ssync { p, rng, queue } => {
                if queue.is_empty() {
                    let looks: Vec<EventKind> =
                        enabled.iter().copied().filter(EventKind::is_look).collect();
                    let mut picked = Vec::new();
                    while picked.is_empty() {
                        picked = looks
                            .iter()
                            .copied()
                            .filter(|_| rng.gen::<f64>() < *p)
                            .collect();
                    }
                    for e in &picked {
                        queue.push_back(*e);
                    }
                    for e in &picked {
                        queue.push_back(EventKind::Commit { robot: e.robot() });
                    }
                }
                Ok(queue.pop_front())
            }
            Inner::AsyncRandom { k, rng, ages } => {
                ages.retain(|e, _| enabled.contains(e));
                for e in enabled {
                    *ages.entry(*e).or_insert(0) += 1;
                }
                let overdue = ages
                    .iter()
                    .filter(|&(_, &age)| age >= *k)
                    .max_by_key(|&(e, &age)| (age, std::cmp::Reverse(*e)))
                    .map(|(e, _)| *e);
                let choice = match overdue {
                    Some(e) => e,
                    None => enabled[rng.gen_range(0..enabled.len())],
                };
                ages.remove(&choice);
                Ok(Some(choice))
            }
            Inner::Script { events } => match events.pop_front() {
                None => Ok(None),
                Some(e) if enabled.contains(&e) => Ok(Some(e)),
                Some(e) => Err(SchedulerError::IllegalScriptEvent(e)),
            },
        }
    }
}

/// Structural legality of an event sequence: every commit is preceded by a
/// matching look, and no robot holds two outstanding looks.
pub fn validate_event_order(events: &[EventKind]) -> bool {
    let mut outstanding = std::collections::HashSet::new();
    for e in events {
        match e {
            EventKind::Look { robot } => {
                if !outstanding.insert(*robot) {
                    return false;
                }
            }
            EventKind::Commit { robot } => {
                if !outstanding.remove(robot) {
                    return false;
                }
            }
        }
    }
    true
}

/// Round structure required of synchronous traces: blocks of looks over a
/// robot set, each immediately followed by the commits of exactly that set.
pub fn validate_ssync_rounds(events: &[EventKind]) -> bool {
    let mut i = 0;
    while i < events.len() {
        let mut looked = Vec::new();
        while i < events.len() && events[i].is_look() {
            looked.push(events[i].robot());
            i += 1;
        }
        if looked.is_empty() {
            return false;
        }
        for robot in looked {
            match events.get(i) {
                Some(EventKind::Commit { robot: r }) if *r == robot => i += 1,
                _ => return false,
            }
        }
    }
    true
}

/// Replays the aging rule against the recorded enabled sets: whenever some
/// event has been continuously enabled for `k` selections, the emitted event
/// must be one of the overdue ones.
pub fn validate_aging(enabled_seq: &[Vec<EventKind>], events: &[EventKind], k: u32) -> bool {
    if enabled_seq.len() != events.len() {
        return false;
    }
    let mut ages: BTreeMap<EventKind, u32> = BTreeMap::new();
    for (enabled, emitted) in enabled_seq.iter().zip(events) {
        if !enabled.contains(emitted) {
            return false;
        }
        ages.retain(|e, _| enabled.contains(e));
        for e in enabled {
            *ages.entry(*e).or_insert(0) += 1;
        }
        if ages.values().any(|&age| age >= k) && ages.get(emitted).map_or(true, |&a| a < k) {
            return false;
        }
        ages.remove(emitted);
    }
    true
}

/// Full schedule validation for a trace: structural order always, round
/// structure for the synchronous policies, the aging bound for the random
/// asynchronous policy, and exact replay for scripts.
pub fn validate_schedule(
    events: &[EventKind],
    enabled_seq: &[Vec<EventKind>],
    policy: &Policy,
) -> bool {
    if !validate_event_order(events) {
        return false;
    }
    match policy {
        Policy::Fsync | Policy::Ssync { .. } => validate_ssync_rounds(events),
        Policy::AsyncRandom { k, .. } => validate_aging(enabled_seq, events, *k),
        Policy::Script { events: script } => events == script.as_slice(),
    }
}
