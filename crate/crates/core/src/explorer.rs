//! Bounded exhaustive exploration of scheduler interleavings.
//!
//! Every enabled look and commit branches; states are deduplicated under
//! translation (the decision function depends only on relative offsets), and
//! pending decisions are part of the state because a stale pending move is
//! exactly what distinguishes an asynchronous adversary from a synchronous
//! one. Safety checks run in every reachable state, the circle predicate in
//! every quiescent one, and each violation carries a replayable event path.

use crate::engine::{
    check_injective, check_lscc1_outer, check_moving1_discipline, check_no_chord_with_moving1,
    check_terminated_on_target, final_circle_check, EngineError, InitConfig, WorldState,
};
use crate::protocol::{Color, Decision};
use crate::scheduler::EventKind;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

/// Canonical encoding of a state: positions translated so the minimum x and
/// y are zero, plus lights, pending decisions, and termination flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateKey {
    positions: Vec<(i64, i64)>,
    colors: Vec<Color>,
    pending: Vec<Option<Decision>>,
    terminated: Vec<bool>,
}

impl StateKey {
    pub fn of(state: &WorldState) -> StateKey {
        let min_x = state.positions().iter().map(|p| p.x).min().unwrap_or(0);
        let min_y = state.positions().iter().map(|p| p.y).min().unwrap_or(0);
        StateKey {
            positions: state
                .positions()
                .iter()
                .map(|p| (p.x - min_x, p.y - min_y))
                .collect(),
            colors: state.colors().to_vec(),
            pending: state.pending().iter().map(|p| p.map(|p| p.decision)).collect(),
            terminated: state.terminated().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreOpts {
    pub max_states: usize,
    pub max_depth: u32,
}

impl Default for ExploreOpts {
    fn default() -> Self {
        ExploreOpts {
            max_states: 1_000_000,
            max_depth: u32::MAX,
        }
    }
}

/// A safety violation with a scheduler script reproducing it from the
/// initial configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub monitor: String,
    pub detail: String,
    pub path: Vec<EventKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationReport {
    pub states_visited: usize,
    pub exhaustive: bool,
    pub max_depth_reached: u32,
    pub terminal_states: usize,
    pub terminal_circle_failures: usize,
    pub violations: Vec<Violation>,
}

impl ExplorationReport {
    pub fn clean_and_exhaustive(&self) -> bool {
        self.exhaustive && self.violations.is_empty() && self.terminal_circle_failures == 0
    }
}

struct Node {
    parent: u32,
    event: Option<EventKind>,
    depth: u32,
}

struct Explorer {
    visited: HashMap<StateKey, u32>,
    nodes: Vec<Node>,
    queue: VecDeque<(u32, WorldState)>,
    report: ExplorationReport,
    violation_cap: usize,
}

impl Explorer {
    fn path_to(&self, mut idx: u32) -> Vec<EventKind> {
        let mut path = Vec::new();
        while let Some(e) = self.nodes[idx as usize].event {
            path.push(e);
            idx = self.nodes[idx as usize].parent;
        }
        path.reverse();
        path
    }

    fn violate(&mut self, idx: u32, monitor: &str, detail: String) {
        if self.report.violations.len() < self.violation_cap {
            self.report.violations.push(Violation {
                monitor: monitor.to_string(),
                detail,
                path: self.path_to(idx),
            });
        }
    }

    fn check_state(&mut self, idx: u32, state: &WorldState) {
        let v = state.view();
        if let Some(d) = check_injective(v) {
            self.violate(idx, "m1_injective_positions", d);
        }
        if let Some(d) = check_moving1_discipline(v) {
            self.violate(idx, "m4_moving1_discipline", d);
        }
        if let Some(d) = check_terminated_on_target(v) {
            self.violate(idx, "m7_terminate_on_target", d);
        }
        if let Some(d) = check_lscc1_outer(v) {
            self.violate(idx, "m8_outer_movers_on_target", d);
        }
        if let Some(d) = check_no_chord_with_moving1(v) {
            self.violate(idx, "m10_no_chord_with_moving1", d);
        }
        if state.enabled_events().is_empty() {
            self.report.terminal_states += 1;
            if let Err(d) = final_circle_check(v) {
                self.report.terminal_circle_failures += 1;
                self.violate(idx, "m9_final_circle", d);
            }
        }
    }
}

/// Breadth-first exploration of every legal interleaving, deduplicating
/// states under translation. Stable tie-breaking (events in robot-id order)
/// keeps counterexample paths minimal and reproducible.
pub fn explore(config: &InitConfig, opts: &ExploreOpts) -> Result<ExplorationReport, EngineError> {
    let initial = WorldState::init(config)?;
    let mut ex = Explorer {
        visited: HashMap::new(),
        nodes: Vec::new(),
        queue: VecDeque::new(),
        report: ExplorationReport {
            states_visited: 0,
            exhaustive: true,
            max_depth_reached: 0,
            terminal_states: 0,
            terminal_circle_failures: 0,
            violations: Vec::new(),
        },
        violation_cap: 16,
    };

    ex.visited.insert(StateKey::of(&initial), 0);
    ex.nodes.push(Node {
        parent: 0,
        event: None,
        depth: 0,
    });
    ex.report.states_visited = 1;
    ex.check_state(0, &initial);
    ex.queue.push_back((0, initial));

    while let Some((idx, state)) = ex.queue.pop_front() {
        let depth = ex.nodes[idx as usize].depth;
        ex.report.max_depth_reached = ex.report.max_depth_reached.max(depth);
        if depth >= opts.max_depth {
            if !state.enabled_events().is_empty() {
                ex.report.exhaustive = false;
            }
            continue;
        }
        for event in state.enabled_events() {
            let mut next = state.clone();
            let stepped = match event {
                EventKind::Look { robot } => next.step_look(robot).map(|_| ()),
                EventKind::Commit { robot } => next.step_commit(robot).map(|_| ()),
            };
            match stepped {
                Ok(()) => {}
                Err(e @ EngineError::CollisionFault { .. }) => {
                    let mut path = ex.path_to(idx);
                    path.push(event);
                    if ex.report.violations.len() < ex.violation_cap {
                        ex.report.violations.push(Violation {
                            monitor: "m1_injective_positions".into(),
                            detail: e.to_string(),
                            path,
                        });
                    }
                    continue;
                }
                Err(e @ EngineError::Protocol(_)) => {
                    let mut path = ex.path_to(idx);
                    path.push(event);
                    if ex.report.violations.len() < ex.violation_cap {
                        ex.report.violations.push(Violation {
                            monitor: "protocol_totality".into(),
                            detail: e.to_string(),
                            path,
                        });
                    }
                    continue;
                }
                Err(other) => return Err(other),
            }
            let key = StateKey::of(&next);
            if ex.visited.contains_key(&key) {
                continue;
            }
            if ex.report.states_visited >= opts.max_states {
                ex.report.exhaustive = false;
                continue;
            }
            let next_idx = ex.nodes.len() as u32;
            ex.visited.insert(key, next_idx);
            ex.nodes.push(Node {
                parent: idx,
                event: Some(event),
                depth: depth + 1,
            });
            ex.report.states_visited += 1;
            ex.check_state(next_idx, &next);
            ex.queue.push_back((next_idx, next));
        }
    }
    Ok(ex.report)
}
