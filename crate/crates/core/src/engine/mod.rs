//! World state, look/commit execution, and trace-producing simulation runs.
//!
//! A look snapshots the world through the occlusion model, computes the
//! robot's decision, and holds it pending; a commit applies the pending
//! color change and one-hop move atomically, however stale the snapshot has
//! become. That staleness is the adversarial power of the asynchronous
//! scheduler.

mod monitors;
mod trace;

pub use monitors::{
    agreed_circle, check_injective, check_lscc1_outer, check_moving1_discipline,
    check_no_chord_with_moving1, check_terminated_on_target, final_circle_check, is_p1fc,
    lscc_index, monitors, replay_enabled_sequence, Milestones, MonitorReport, MonitorResult,
    MonitorVerdict, StateView,
};
pub use trace::{read_jsonl, write_jsonl, Kind, TraceEvent};

use crate::lattice::{circle_from_diameter, grid_circumference, Circle, GridPoint};
use crate::occlusion::{visible_set, DiskScene, OcclusionError};
use crate::protocol::{decide, Color, Decision, LocalView, Move, ProtocolError, ViewRobot};
use crate::scheduler::{EventKind, Policy, RobotId, Scheduler, SchedulerError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("TooFewRobots: need at least 4 robots, got {0}")]
    TooFewRobots(usize),
    #[error("DuplicateVertex: two robots start on ({0}, {1})")]
    DuplicateVertex(i64, i64),
    #[error("BadRadius: {0} outside (0, 1/2]")]
    BadRadius(f64),
    #[error("BadFlips: expected {expected} flip bits, got {got}")]
    BadFlips { expected: usize, got: usize },
    #[error("robot {robot} has no enabled {kind} step")]
    NotEnabled { robot: RobotId, kind: &'static str },
    #[error("CollisionFault: robot {robot} commits onto occupied vertex ({x}, {y})")]
    CollisionFault { robot: RobotId, x: i64, y: i64 },
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Occlusion(#[from] OcclusionError),
    #[error(transparent)]
    Scheduler(#[from] SchedulerError),
}

/// Initial configuration of a run: distinct start vertices, the common disk
/// radius, per-robot y orientation bits (seeded when absent), and the run
/// seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitConfig {
    pub robots: Vec<GridPoint>,
    pub radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flips: Option<Vec<bool>>,
    #[serde(default)]
    pub seed: u64,
}

/// A decision waiting for its commit, with the clock value of its look.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pending {
    pub decision: Decision,
    pub look_t: u64,
}

/// Global configuration plus per-robot LCM bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    positions: Vec<GridPoint>,
    colors: Vec<Color>,
    pending: Vec<Option<Pending>>,
    terminated: Vec<bool>,
    flips: Vec<bool>,
    radius: f64,
    clock: u64,
    move_epoch: u64,
}

impl WorldState {
    /// Validates and builds the initial state: all lights off, everyone idle.
    pub fn init(config: &InitConfig) -> Result<WorldState, EngineError> {
        let k = config.robots.len();
        if k < 4 {
            return Err(EngineError::TooFewRobots(k));
        }
        if !(config.radius > 0.0 && config.radius <= 0.5) {
            return Err(EngineError::BadRadius(config.radius));
        }
        let mut seen = std::collections::HashSet::new();
        for p in &config.robots {
            if !seen.insert((p.x, p.y)) {
                return Err(EngineError::DuplicateVertex(p.x, p.y));
            }
        }
        let flips = match &config.flips {
            Some(f) => {
                if f.len() != k {
                    return Err(EngineError::BadFlips {
                        expected: k,
                        got: f.len(),
                    });
                }
                f.clone()
            }
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xF11F_5EED);
                (0..k).map(|_| rng.gen()).collect()
            }
        };
        Ok(WorldState {
            positions: config.robots.clone(),
            colors: vec![Color::Off; k],
            pending: vec![None; k],
            terminated: vec![false; k],
            flips,
            radius: config.radius,
            clock: 0,
            move_epoch: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[GridPoint] {
        &self.positions
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn terminated(&self) -> &[bool] {
        &self.terminated
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn pending(&self) -> &[Option<Pending>] {
        &self.pending
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    /// Bumped whenever some robot changes position; visibility caches key on
    /// it.
    pub fn move_epoch(&self) -> u64 {
        self.move_epoch
    }

    pub fn view(&self) -> StateView<'_> {
        StateView {
            positions: &self.positions,
            colors: &self.colors,
            terminated: &self.terminated,
        }
    }

    pub fn all_terminated(&self) -> bool {
        self.terminated.iter().all(|&t| t)
    }

    /// Enabled events, ordered by robot id. A non-terminated robot always
    /// has exactly one: look while idle, commit while holding a decision.
    pub fn enabled_events(&self) -> Vec<EventKind> {
        (0..self.len())
            .filter(|&r| !self.terminated[r])
            .map(|r| {
                if self.pending[r].is_some() {
                    EventKind::Commit { robot: r }
                } else {
                    EventKind::Look { robot: r }
                }
            })
            .collect()
    }

    pub fn scene(&self) -> DiskScene {
        DiskScene::new(self.positions.clone(), self.radius)
            .expect("world invariants imply a valid scene")
    }

    /// The robot's private-frame snapshot, given the visible robot ids.
    fn view_from(&self, r: RobotId, visible: &[RobotId]) -> LocalView {
        let origin = self.positions[r];
        let flip = self.flips[r];
        let robots = visible
            .iter()
            .map(|&j| {
                let dy = self.positions[j].y - origin.y;
                ViewRobot {
                    dx: self.positions[j].x - origin.x,
                    dy: if flip { -dy } else { dy },
                    color: self.colors[j],
                }
            })
            .collect();
        LocalView::new(self.colors[r], robots)
    }

    /// Look with a precomputed visible set (cache-friendly path).
    pub fn step_look_with(
        &mut self,
        r: RobotId,
        visible: &[RobotId],
    ) -> Result<TraceEvent, EngineError> {
        if r >= self.len() || self.terminated[r] || self.pending[r].is_some() {
            return Err(EngineError::NotEnabled { robot: r, kind: "look" });
        }
        let view = self.view_from(r, visible);
        let decision = decide(&view)?;
        let t = self.clock;
        self.clock += 1;
        self.pending[r] = Some(Pending {
            decision,
            look_t: t,
        });
        Ok(TraceEvent {
            t,
            kind: Kind::Look,
            robot: r,
            pos: self.positions[r],
            color: self.colors[r],
            decision: Some(decision),
            digest: trace::view_digest(&view),
        })
    }

    /// Snapshot the surroundings and hold the computed decision pending.
    pub fn step_look(&mut self, r: RobotId) -> Result<TraceEvent, EngineError> {
        if r >= self.len() || self.terminated[r] || self.pending[r].is_some() {
            return Err(EngineError::NotEnabled { robot: r, kind: "look" });
        }
        let visible = visible_set(&self.scene(), r)?;
        self.step_look_with(r, &visible)
    }

    /// Destination vertex of the pending move, unflipped to the world frame.
    pub fn commit_destination(&self, r: RobotId) -> Option<GridPoint> {
        let p = self.pending[r]?;
        let pos = self.positions[r];
        let up = if self.flips[r] { -1 } else { 1 };
        Some(match p.decision.mv {
            Move::Stay => pos,
            Move::Left => GridPoint::new(pos.x - 1, pos.y),
            Move::Right => GridPoint::new(pos.x + 1, pos.y),
            Move::Up => GridPoint::new(pos.x, pos.y + up),
            Move::Down => GridPoint::new(pos.x, pos.y - up),
        })
    }

    /// Atomically apply the pending color and move; terminate if flagged.
    /// A move onto an occupied vertex is a protocol fault, not physics: the
    /// state is left untouched and the caller records the violation.
    pub fn step_commit(&mut self, r: RobotId) -> Result<TraceEvent, EngineError> {
        if r >= self.len() || self.pending[r].is_none() {
            return Err(EngineError::NotEnabled {
                robot: r,
                kind: "commit",
            });
        }
        let dest = self.commit_destination(r).unwrap();
        if dest != self.positions[r]
            && self
                .positions
                .iter()
                .enumerate()
                .any(|(k, q)| k != r && *q == dest)
        {
            return Err(EngineError::CollisionFault {
                robot: r,
                x: dest.x,
                y: dest.y,
            });
        }
        let p = self.pending[r].take().unwrap();
        if dest != self.positions[r] {
            self.move_epoch += 1;
        }
        self.positions[r] = dest;
        self.colors[r] = p.decision.color;
        if p.decision.terminate {
            self.terminated[r] = true;
        }
        let t = self.clock;
        self.clock += 1;
        Ok(TraceEvent {
            t,
            kind: Kind::Commit,
            robot: r,
            pos: dest,
            color: p.decision.color,
            decision: None,
            digest: 0,
        })
    }

    /// The commit trace record that `step_commit` would produce, for logging
    /// a collision fault without applying it.
    fn faulting_commit_event(&self, r: RobotId) -> TraceEvent {
        TraceEvent {
            t: self.clock,
            kind: Kind::Commit,
            robot: r,
            pos: self.commit_destination(r).unwrap(),
            color: self.pending[r].unwrap().decision.color,
            decision: None,
            digest: 0,
        }
    }
}

/// Budget for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunLimits {
    pub max_events: u64,
}

/// Summary of a run, written alongside the trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub terminated: bool,
    pub events: u64,
    pub budget_exceeded: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_circle: Option<Circle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_on_circumference: Option<bool>,
    pub final_positions: Vec<GridPoint>,
    pub final_colors: Vec<Color>,
}

/// A trace plus its run summary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub events: Vec<TraceEvent>,
    pub report: RunReport,
}

/// A stepping simulation: state, policy, and the trace so far. Visible sets
/// are cached per move epoch, so the many no-op looks between actual moves
/// reuse one occlusion computation.
pub struct Simulation {
    state: WorldState,
    scheduler: Scheduler,
    events: Vec<TraceEvent>,
    fault: Option<String>,
    vis_epoch: u64,
    vis_rows: Vec<Option<Vec<RobotId>>>,
}

impl Simulation {
    pub fn new(config: &InitConfig, policy: &Policy) -> Result<Simulation, EngineError> {
        let state = WorldState::init(config)?;
        let scheduler = Scheduler::new(policy, config.seed)?;
        let k = state.len();
        Ok(Simulation {
            state,
            scheduler,
            events: Vec::new(),
            fault: None,
            vis_epoch: 0,
            vis_rows: vec![None; k],
        })
    }

    pub fn state(&self) -> &WorldState {
        &self.state
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    fn visible_row(&mut self, r: RobotId) -> Result<Vec<RobotId>, EngineError> {
        if self.vis_epoch != self.state.move_epoch() {
            self.vis_epoch = self.state.move_epoch();
            self.vis_rows.iter_mut().for_each(|row| *row = None);
        }
        if self.vis_rows[r].is_none() {
            self.vis_rows[r] = Some(visible_set(&self.state.scene(), r)?);
        }
        Ok(self.vis_rows[r].clone().unwrap())
    }

    /// Executes one scheduled event. Returns false when quiescent, a fault
    /// has been recorded, or the script ran out.
    pub fn step(&mut self) -> Result<bool, EngineError> {
        if self.fault.is_some() {
            return Ok(false);
        }
        let enabled = self.state.enabled_events();
        let Some(event) = self.scheduler.next_event(&enabled)? else {
            return Ok(false);
        };
        match event {
            EventKind::Look { robot } => {
                let visible = self.visible_row(robot)?;
                let ev = self.state.step_look_with(robot, &visible)?;
                self.events.push(ev);
            }
            EventKind::Commit { robot } => match self.state.step_commit(robot) {
                Ok(ev) => self.events.push(ev),
                Err(e @ EngineError::CollisionFault { .. }) => {
                    self.events.push(self.state.faulting_commit_event(robot));
                    self.fault = Some(e.to_string());
                }
                Err(other) => return Err(other),
            },
        }
        Ok(true)
    }

    pub fn into_outcome(self, limits: &RunLimits) -> RunOutcome {
        let state = &self.state;
        let diameters: Vec<usize> = (0..state.len())
            .filter(|&r| state.colors[r] == Color::Diameter)
            .collect();
        let final_circle = match diameters.as_slice() {
            [a, b] => circle_from_diameter(state.positions[*a], state.positions[*b]).ok(),
            _ => None,
        };
        let all_on_circumference = final_circle.as_ref().map(|c| {
            grid_circumference(c)
                .map(|pts| state.positions.iter().all(|p| pts.contains(p)))
                .unwrap_or(false)
        });
        let report = RunReport {
            terminated: state.all_terminated(),
            events: self.events.len() as u64,
            budget_exceeded: self.events.len() as u64 >= limits.max_events
                && !state.all_terminated(),
            fault: self.fault,
            final_circle,
            all_on_circumference,
            final_positions: state.positions.clone(),
            final_colors: state.colors.clone(),
        };
        RunOutcome {
            events: self.events,
            report,
        }
    }
}

/// Drives the simulation to quiescence or the event budget and summarizes.
pub fn run(
    config: &InitConfig,
    policy: &Policy,
    limits: &RunLimits,
) -> Result<RunOutcome, EngineError> {
    let mut sim = Simulation::new(config, policy)?;
    while (sim.events.len() as u64) < limits.max_events {
        if !sim.step()? {
            break;
        }
    }
    Ok(sim.into_outcome(limits))
}
