//! Core library: exact grid geometry, fat-disk occlusion, the per-robot
//! circle-formation protocol, schedulers, the simulation engine with its
//! trace monitors, and a bounded explorer over scheduler interleavings.

pub mod lattice;
pub mod occlusion;
pub mod protocol;
pub mod scheduler;
pub mod engine;
pub mod explorer;

pub use lattice::{Circle, GridPoint, PositionClass, Side};
pub use occlusion::DiskScene;
pub use protocol::{Color, Decision, LocalView, Move, Phase, ViewRobot};
pub use scheduler::{EventKind, Policy, RobotId, Scheduler};
pub use engine::{InitConfig, MonitorReport, RunLimits, RunOutcome, RunReport, TraceEvent, WorldState};
pub use explorer::{ExplorationReport, ExploreOpts, StateKey};
