//! Trace monitors: every safety and progress property the protocol is
//! supposed to maintain, evaluated over a replayed trace, plus the per-state
//! predicates the interleaving explorer shares.
//!
//! A violated verdict carries the event index and a short witness. Progress
//! monitors distinguish "not reached" (trace truncated before the milestone)
//! from a genuine violation.

use super::trace::{Kind, TraceEvent};
use super::InitConfig;
use crate::lattice::{
    circle_from_diameter, classify_position, grid_circumference, terminating_point, Circle,
    GridPoint, PositionClass, Side,
};
use crate::protocol::{Color, Decision};
use crate::scheduler::EventKind;
use serde::{Deserialize, Serialize};

/// Borrowed view of the global configuration fields the predicates need.
#[derive(Debug, Clone, Copy)]
pub struct StateView<'a> {
    pub positions: &'a [GridPoint],
    pub colors: &'a [Color],
    pub terminated: &'a [bool],
}

impl<'a> StateView<'a> {
    fn len(&self) -> usize {
        self.positions.len()
    }

    fn indices_with(&self, color: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&r| self.colors[r] == color)
    }
}

/// No two robots on one vertex.
pub fn check_injective(v: StateView<'_>) -> Option<String> {
    let mut seen = std::collections::HashMap::new();
    for (r, p) in v.positions.iter().enumerate() {
        if let Some(prev) = seen.insert((p.x, p.y), r) {
            return Some(format!(
                "robots {} and {} share vertex ({}, {})",
                prev, r, p.x, p.y
            ));
        }
    }
    None
}

/// The two diameter-colored robots, bottom then top, when exactly two exist
/// on a common column.
pub fn diameter_pair(v: StateView<'_>) -> Option<(usize, usize)> {
    let mut it = v.indices_with(Color::Diameter);
    let a = it.next()?;
    let b = it.next()?;
    if it.next().is_some() || v.positions[a].x != v.positions[b].x {
        return None;
    }
    if v.positions[a].y <= v.positions[b].y {
        Some((a, b))
    } else {
        Some((b, a))
    }
}

/// The circle the swarm agreed on, reconstructed from the diameter marks.
pub fn agreed_circle(v: StateView<'_>) -> Option<Circle> {
    let (a, b) = diameter_pair(v)?;
    circle_from_diameter(v.positions[a], v.positions[b]).ok()
}

/// No robot above and below on its own column (global, not view-based).
fn terminal_in_state(v: StateView<'_>, r: usize) -> bool {
    let p = v.positions[r];
    let above = (0..v.len()).any(|k| k != r && v.positions[k].x == p.x && v.positions[k].y > p.y);
    let below = (0..v.len()).any(|k| k != r && v.positions[k].x == p.x && v.positions[k].y < p.y);
    !(above && below)
}

/// While no diameter mark exists: at most two moving1 robots off the
/// leftmost occupied column, and every moving1 on it is terminal there.
pub fn check_moving1_discipline(v: StateView<'_>) -> Option<String> {
    if v.indices_with(Color::Diameter).next().is_some() {
        return None;
    }
    let l1 = v.positions.iter().map(|p| p.x).min()?;
    let off_l1 = v
        .indices_with(Color::Moving1)
        .filter(|&r| v.positions[r].x != l1)
        .count();
    if off_l1 > 2 {
        return Some(format!("{} moving1 robots off the leftmost line", off_l1));
    }
    for r in v.indices_with(Color::Moving1) {
        if v.positions[r].x != l1 || terminal_in_state(v, r) {
            continue;
        }
        // Concurrent looks can land a second mover above the first on an
        // already-marked line; it recolors to chord on its next activation.
        // Only a non-terminal mover with no chord mate is an anomaly.
        let chord_mate = v
            .indices_with(Color::Chord)
            .any(|k| v.positions[k].x == l1);
        if !chord_mate {
            return Some(format!("moving1 robot {} not terminal on the leftmost line", r));
        }
    }
    None
}

/// The Phase-1 final shape: the two diameter marks alone on the second
/// occupied column, everyone else chord on the first or third, strictly
/// between the diameter rows.
pub fn is_p1fc(v: StateView<'_>) -> bool {
    let Some((bot, top)) = diameter_pair(v) else {
        return false;
    };
    let v0 = v.positions[bot].x;
    let mut cols: Vec<i64> = v.positions.iter().map(|p| p.x).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.len() < 2 || cols.len() > 3 || cols[1] != v0 {
        return false;
    }
    let (y_bot, y_top) = (v.positions[bot].y, v.positions[top].y);
    for r in 0..v.len() {
        if r == bot || r == top {
            continue;
        }
        let p = v.positions[r];
        if p.x == v0 || v.colors[r] != Color::Chord {
            return false;
        }
        if !(p.y > y_bot && p.y < y_top) {
            return false;
        }
    }
    true
}

/// If the given side is a left/right sub-circle configuration, its column
/// index `j` (distance from the diameter column).
pub fn lscc_index(v: StateView<'_>, side: Side) -> Option<i64> {
    let (bot, top) = diameter_pair(v)?;
    let v0 = v.positions[bot].x;
    let (y_bot, y_top) = (v.positions[bot].y, v.positions[top].y);
    let on_side = |p: GridPoint| match side {
        Side::Left => p.x < v0,
        Side::Right => p.x > v0,
    };
    let side_robots: Vec<usize> = (0..v.len())
        .filter(|&r| r != bot && r != top && on_side(v.positions[r]))
        .collect();
    let movers: Vec<usize> = side_robots
        .iter()
        .copied()
        .filter(|&r| v.colors[r] == Color::Moving1)
        .collect();
    if movers.is_empty() {
        return None;
    }
    let col = v.positions[movers[0]].x;
    if movers.iter().any(|&r| v.positions[r].x != col) {
        return None;
    }
    let j = (v0 - col).abs();
    debug_assert!(j >= 1);
    let outward = |x: i64| match side {
        Side::Left => x < col,
        Side::Right => x > col,
    };
    let between = |x: i64| match side {
        Side::Left => x > col && x < v0,
        Side::Right => x < col && x > v0,
    };
    let mut rows = std::collections::HashSet::new();
    for &r in &side_robots {
        let p = v.positions[r];
        if between(p.x) {
            return None; // something still strictly between the movers and the diameter
        }
        if p.x == col && v.colors[r] != Color::Moving1 {
            return None; // movers must be alone on their column
        }
        if outward(p.x) && v.colors[r] != Color::Done {
            return None;
        }
        if !(p.y > y_bot && p.y < y_top) || !rows.insert(p.y) {
            return None;
        }
    }
    Some(j)
}

/// In a 1-LSCC, every mover not strictly inside must already stand on its
/// terminating point.
pub fn check_lscc1_outer(v: StateView<'_>) -> Option<String> {
    let circle = agreed_circle(v)?;
    let v0 = circle.center2.0 / 2;
    for side in [Side::Left, Side::Right] {
        if lscc_index(v, side) != Some(1) {
            continue;
        }
        for r in v.indices_with(Color::Moving1) {
            let p = v.positions[r];
            let on_side = match side {
                Side::Left => p.x < v0,
                Side::Right => p.x > v0,
            };
            if !on_side {
                continue;
            }
            if classify_position(&circle, p, side) == PositionClass::OutsideBand {
                return Some(format!(
                    "mover {} at ({}, {}) outside its terminating point in a 1-step side configuration",
                    r, p.x, p.y
                ));
            }
        }
    }
    None
}

/// Once two diameter marks exist, chord and moving1 lights never coexist.
pub fn check_no_chord_with_moving1(v: StateView<'_>) -> Option<String> {
    if diameter_pair(v).is_some()
        && v.indices_with(Color::Chord).next().is_some()
        && v.indices_with(Color::Moving1).next().is_some()
    {
        return Some("chord and moving1 robots coexist".into());
    }
    None
}

/// Every terminated robot off the diameter column must rest exactly on its
/// row's terminating point.
pub fn check_terminated_on_target(v: StateView<'_>) -> Option<String> {
    let Some(circle) = agreed_circle(v) else {
        return None;
    };
    let v0 = circle.center2.0 / 2;
    for r in 0..v.len() {
        if !v.terminated[r] || v.colors[r] == Color::Diameter {
            continue;
        }
        let p = v.positions[r];
        if p.x == v0 {
            continue;
        }
        let side = if p.x < v0 { Side::Left } else { Side::Right };
        match terminating_point(&circle, p.y, side) {
            Ok(t) if t == p => {}
            _ => {
                return Some(format!(
                    "robot {} terminated at ({}, {}), not its terminating point",
                    r, p.x, p.y
                ))
            }
        }
    }
    None
}

/// Terminal-state acceptance: everyone terminated, exactly two diameter
/// marks at the circle's vertical extremes, everyone else done, and every
/// robot on the grid circumference.
pub fn final_circle_check(v: StateView<'_>) -> Result<Circle, String> {
    if let Some(r) = (0..v.len()).find(|&r| !v.terminated[r]) {
        return Err(format!("robot {} never terminated", r));
    }
    let diameters = v.indices_with(Color::Diameter).count();
    if diameters != 2 {
        return Err(format!("{} diameter-colored robots, expected 2", diameters));
    }
    let Some(circle) = agreed_circle(v) else {
        return Err("diameter robots do not span a vertical diameter".into());
    };
    for r in 0..v.len() {
        if v.colors[r] != Color::Diameter && v.colors[r] != Color::Done {
            return Err(format!("robot {} finished with color {:?}", r, v.colors[r]));
        }
    }
    let pts = grid_circumference(&circle).map_err(|e| e.to_string())?;
    for (r, p) in v.positions.iter().enumerate() {
        if !pts.contains(p) {
            return Err(format!(
                "robot {} at ({}, {}) is off the grid circumference",
                r, p.x, p.y
            ));
        }
    }
    Ok(circle)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MonitorVerdict {
    Holds,
    Violated { at_event: u64, detail: String },
    NotReached,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonitorResult {
    pub id: String,
    #[serde(flatten)]
    pub verdict: MonitorVerdict,
}

/// Recorded protocol milestones (event indices).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Milestones {
    pub first_move: Option<u64>,
    pub last_leftmost_shift: Option<u64>,
    pub phase2_begin: Option<u64>,
    pub first_p1fc: Option<u64>,
    pub first_done: Option<u64>,
    pub lscc_left: Vec<(i64, u64)>,
    pub lscc_right: Vec<(i64, u64)>,
    pub termination: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonitorReport {
    pub monitors: Vec<MonitorResult>,
    pub milestones: Milestones,
}

impl MonitorReport {
    pub fn all_hold(&self) -> bool {
        self.monitors
            .iter()
            .all(|m| m.verdict == MonitorVerdict::Holds)
    }

    pub fn verdict(&self, id: &str) -> Option<&MonitorVerdict> {
        self.monitors.iter().find(|m| m.id == id).map(|m| &m.verdict)
    }
}

pub(crate) struct ReplayState {
    pub positions: Vec<GridPoint>,
    pub colors: Vec<Color>,
    pub pending: Vec<Option<Decision>>,
    pub terminated: Vec<bool>,
}

impl ReplayState {
    pub fn new(config: &InitConfig) -> ReplayState {
        let k = config.robots.len();
        ReplayState {
            positions: config.robots.clone(),
            colors: vec![Color::Off; k],
            pending: vec![None; k],
            terminated: vec![false; k],
        }
    }

    pub fn view(&self) -> StateView<'_> {
        StateView {
            positions: &self.positions,
            colors: &self.colors,
            terminated: &self.terminated,
        }
    }

    /// Applies a recorded event verbatim; no protocol recomputation, so
    /// synthetic and faulting traces replay too.
    pub fn apply(&mut self, e: &TraceEvent) {
        let r = e.robot;
        match e.kind {
            Kind::Look => self.pending[r] = e.decision,
            Kind::Commit => {
                self.positions[r] = e.pos;
                self.colors[r] = e.color;
                if let Some(d) = self.pending[r].take() {
                    if d.terminate {
                        self.terminated[r] = true;
                    }
                }
            }
        }
    }

    pub fn enabled_events(&self) -> Vec<EventKind> {
        (0..self.positions.len())
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
}

/// Enabled sets before each event of a replayed trace, for schedule
/// validation.
pub fn replay_enabled_sequence(config: &InitConfig, events: &[TraceEvent]) -> Vec<Vec<EventKind>> {
    let mut st = ReplayState::new(config);
    let mut out = Vec::with_capacity(events.len());
    for e in events {
        out.push(st.enabled_events());
        st.apply(e);
    }
    out
}

/// Ceiling of d/2.
fn half_up(d: i64) -> i64 {
    (d + 1).div_euclid(2)
}

struct Tracker {
    verdict: MonitorVerdict,
}

impl Tracker {
    fn new() -> Tracker {
        Tracker {
            verdict: MonitorVerdict::Holds,
        }
    }

    fn reached(init: bool) -> Tracker {
        Tracker {
            verdict: if init {
                MonitorVerdict::Holds
            } else {
                MonitorVerdict::NotReached
            },
        }
    }

    fn violate(&mut self, at_event: u64, detail: String) {
        if self.verdict == MonitorVerdict::Holds || self.verdict == MonitorVerdict::NotReached {
            self.verdict = MonitorVerdict::Violated { at_event, detail };
        }
    }

    fn reach(&mut self) {
        if self.verdict == MonitorVerdict::NotReached {
            self.verdict = MonitorVerdict::Holds;
        }
    }
}

/// Evaluates every monitor over a trace replayed from the initial
/// configuration. Pure: neither the config nor the trace is mutated.
pub fn monitors(config: &InitConfig, events: &[TraceEvent]) -> MonitorReport {
    let mut st = ReplayState::new(config);
    let mut ms = Milestones::default();

    let mut m1 = Tracker::new();
    let m2 = Tracker::new(); // colors are typed; decoding already enforces the set
    let mut m3 = Tracker::new();
    let mut m4 = Tracker::new();
    let mut m5 = Tracker::reached(false);
    let mut m6 = Tracker::new();
    let mut m7 = Tracker::new();
    let mut m8 = Tracker::new();
    let mut m9 = Tracker::reached(false);
    let mut m10 = Tracker::new();
    let m11 = Tracker::new();

    let mut leftmost = st.positions.iter().map(|p| p.x).min();
    let mut last_lscc = [None::<i64>, None::<i64>];

    if let Some(d) = check_injective(st.view()) {
        m1.violate(0, d);
    }

    for (idx, e) in events.iter().enumerate() {
        let at = idx as u64;
        let pre_color = st.colors[e.robot];
        let pre_pos = st.positions[e.robot];
        let pre_decision = st.pending[e.robot];
        st.apply(e);
        if e.kind == Kind::Look {
            continue;
        }
        let v = st.view();

        // m3: diameter and done robots are frozen
        if matches!(pre_color, Color::Diameter | Color::Done)
            && (pre_pos != e.pos || pre_color != e.color)
        {
            m3.violate(at, format!("{:?} robot {} changed", pre_color, e.robot));
        }

        // milestones around movement
        if pre_pos != e.pos && ms.first_move.is_none() {
            ms.first_move = Some(at);
        }
        let new_leftmost = v.positions.iter().map(|p| p.x).min();
        if new_leftmost < leftmost {
            ms.last_leftmost_shift = Some(at);
        }
        leftmost = new_leftmost;

        if let Some(d) = check_injective(v) {
            m1.violate(at, d);
        }
        if let Some(d) = check_moving1_discipline(v) {
            m4.violate(at, d);
        }

        let phase2 = diameter_pair(v).is_some();
        if phase2 && ms.phase2_begin.is_none() {
            ms.phase2_begin = Some(at);
        }
        if is_p1fc(v) {
            m5.reach();
            if ms.first_p1fc.is_none() {
                ms.first_p1fc = Some(at);
            }
        }
        if e.color == Color::Done && ms.first_done.is_none() {
            ms.first_done = Some(at);
        }

        if phase2 {
            if let Some(d) = check_no_chord_with_moving1(v) {
                m10.violate(at, d);
            }
            for (s, side) in [(0, Side::Left), (1, Side::Right)] {
                if let Some(j) = lscc_index(v, side) {
                    if last_lscc[s] != Some(j) {
                        if let Some(prev) = last_lscc[s] {
                            if j >= prev {
                                m6.violate(
                                    at,
                                    format!("{:?} side revisited column index {} after {}", side, j, prev),
                                );
                            }
                        }
                        last_lscc[s] = Some(j);
                        let seq = match side {
                            Side::Left => &mut ms.lscc_left,
                            Side::Right => &mut ms.lscc_right,
                        };
                        if seq.last().map(|&(pj, _)| pj) != Some(j) {
                            seq.push((j, at));
                        }
                    }
                }
            }
            if let Some(d) = check_lscc1_outer(v) {
                m8.violate(at, d);
            }
            // m7 at the moment of termination
            if pre_decision.map_or(false, |d| d.terminate) {
                if let Some(d) = check_terminated_on_target(v) {
                    m7.violate(at, d);
                }
            }
        }

        if v.terminated.iter().all(|&t| t) && ms.termination.is_none() {
            ms.termination = Some(at);
        }
    }

    let v = st.view();
    let finished = v.terminated.iter().all(|&t| t);
    if finished {
        match final_circle_check(v) {
            Ok(_) => m9.reach(),
            Err(d) => m9.violate(events.len().saturating_sub(1) as u64, d),
        }
        // Each populated side must sweep a contiguous descending prefix
        // starting at half the diameter minus one. The sweep ends early in
        // the vacuous sense when every mover of the side has settled.
        if let Some(circle) = agreed_circle(v) {
            let v0 = circle.center2.0 / 2;
            let start = half_up(circle.d) - 1;
            for (side, seq, populated) in [
                (
                    Side::Left,
                    &ms.lscc_left,
                    v.positions.iter().any(|p| p.x < v0),
                ),
                (
                    Side::Right,
                    &ms.lscc_right,
                    v.positions.iter().any(|p| p.x > v0),
                ),
            ] {
                if !populated {
                    continue;
                }
                let got: Vec<i64> = seq.iter().map(|&(j, _)| j).collect();
                let prefix_ok = !got.is_empty()
                    && got[0] == start
                    && got.windows(2).all(|w| w[1] == w[0] - 1);
                if !prefix_ok {
                    m6.violate(
                        events.len().saturating_sub(1) as u64,
                        format!(
                            "{:?} side visited column indices {:?}, expected a contiguous descent from {}",
                            side, got, start
                        ),
                    );
                }
            }
        }
    } else if m6.verdict == MonitorVerdict::Holds && ms.first_p1fc.is_none() {
        m6.verdict = MonitorVerdict::NotReached;
    }

    let ids = [
        "m1_injective_positions",
        "m2_color_set",
        "m3_terminated_frozen",
        "m4_moving1_discipline",
        "m5_p1fc_reached",
        "m6_side_sweep_order",
        "m7_terminate_on_target",
        "m8_outer_movers_on_target",
        "m9_final_circle",
        "m10_no_chord_with_moving1",
        "m11_leftmost_line_fixed",
    ];
    let verdicts = [
        m1.verdict, m2.verdict, m3.verdict, m4.verdict, m5.verdict, m6.verdict, m7.verdict,
        m8.verdict, m9.verdict, m10.verdict, m11.verdict,
    ];
    MonitorReport {
        monitors: ids
            .iter()
            .zip(verdicts)
            .map(|(id, verdict)| MonitorResult {
                id: (*id).to_string(),
                verdict,
            })
            .collect(),
        milestones: ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mkview<'a>(
        positions: &'a [GridPoint],
        colors: &'a [Color],
        terminated: &'a [bool],
    ) -> StateView<'a> {
        StateView {
            positions,
            colors,
            terminated,
        }
    }

    #[test]
    fn p1fc_detection() {
        // diameter marks on the middle column, chords split on both sides
        let positions: Vec<GridPoint> = [(0, 1), (0, 2), (-1, 0), (-1, 3)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        let colors = vec![Color::Chord, Color::Chord, Color::Diameter, Color::Diameter];
        let term = vec![false, false, true, true];
        // here the diameter column is -1 and the chords sit right of it: the
        // diameter marks are on the first occupied column, so not a P1FC
        assert!(!is_p1fc(mkview(&positions, &colors, &term)));

        let positions: Vec<GridPoint> = [(-3, 1), (-3, 2), (-2, 0), (-2, 3)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        assert!(is_p1fc(mkview(&positions, &colors, &term)));

        // a chord on the diameter column breaks it
        let positions: Vec<GridPoint> = [(-3, 1), (-2, 2), (-2, 0), (-2, 3)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        assert!(!is_p1fc(mkview(&positions, &colors, &term)));
    }

    #[test]
    fn lscc_detection() {
        // diameter rows 0 and 5 on column 0 (d = 5), movers on column -2
        let positions: Vec<GridPoint> = [(0, 0), (0, 5), (-2, 2), (-2, 3)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        let colors = vec![
            Color::Diameter,
            Color::Diameter,
            Color::Moving1,
            Color::Moving1,
        ];
        let term = vec![true, true, false, false];
        assert_eq!(lscc_index(mkview(&positions, &colors, &term), Side::Left), Some(2));
        assert_eq!(lscc_index(mkview(&positions, &colors, &term), Side::Right), None);

        // a robot strictly between the movers and the diameter column
        let positions2: Vec<GridPoint> = [(0, 0), (0, 5), (-2, 2), (-1, 3)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        assert_eq!(lscc_index(mkview(&positions2, &colors, &term), Side::Left), None);

        // done robots outward are fine
        let positions3: Vec<GridPoint> = [(0, 0), (0, 5), (-2, 2), (-3, 3)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        let colors3 = vec![
            Color::Diameter,
            Color::Diameter,
            Color::Moving1,
            Color::Done,
        ];
        assert_eq!(
            lscc_index(mkview(&positions3, &colors3, &term), Side::Left),
            Some(2)
        );
    }

    #[test]
    fn injectivity_and_discipline() {
        let positions: Vec<GridPoint> = [(0, 0), (0, 0)].iter().map(|&(x, y)| GridPoint::new(x, y)).collect();
        let colors = vec![Color::Off, Color::Off];
        let term = vec![false, false];
        assert!(check_injective(mkview(&positions, &colors, &term)).is_some());

        // three moving1 robots off the leftmost line
        let positions: Vec<GridPoint> = [(0, 0), (1, 0), (1, 2), (2, 4)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        let colors = vec![Color::Off, Color::Moving1, Color::Moving1, Color::Moving1];
        let term = vec![false; 4];
        assert!(check_moving1_discipline(mkview(&positions, &colors, &term)).is_some());
    }

    #[test]
    fn synthetic_done_mover_violates_m3() {
        let config = InitConfig {
            robots: vec![
                GridPoint::new(0, 0),
                GridPoint::new(0, 1),
                GridPoint::new(0, 2),
                GridPoint::new(0, 3),
            ],
            radius: 0.5,
            flips: Some(vec![false; 4]),
            seed: 0,
        };
        let done_look = TraceEvent {
            t: 0,
            kind: Kind::Look,
            robot: 0,
            pos: GridPoint::new(0, 0),
            color: Color::Off,
            decision: Some(Decision {
                color: Color::Done,
                mv: crate::protocol::Move::Stay,
                terminate: false,
            }),
            digest: 0,
        };
        let done_commit = TraceEvent {
            t: 1,
            kind: Kind::Commit,
            robot: 0,
            pos: GridPoint::new(0, 0),
            color: Color::Done,
            decision: None,
            digest: 0,
        };
        // now the done robot moves: monitor m3 must flag it
        let bad_look = TraceEvent {
            t: 2,
            decision: Some(Decision {
                color: Color::Done,
                mv: crate::protocol::Move::Left,
                terminate: false,
            }),
            color: Color::Done,
            ..done_look
        };
        let bad_commit = TraceEvent {
            t: 3,
            pos: GridPoint::new(-1, 0),
            ..done_commit
        };
        let report = monitors(&config, &[done_look, done_commit, bad_look, bad_commit]);
        assert!(matches!(
            report.verdict("m3_terminated_frozen"),
            Some(MonitorVerdict::Violated { .. })
        ));
        // truncated run: progress milestones not reached, not violated
        assert_eq!(
            report.verdict("m5_p1fc_reached"),
            Some(&MonitorVerdict::NotReached)
        );
        assert_eq!(
            report.verdict("m9_final_circle"),
            Some(&MonitorVerdict::NotReached)
        );
    }

    #[test]
    fn final_circle_check_rejects_offsets() {
        let positions: Vec<GridPoint> = [(0, 0), (0, 3), (-2, 1), (-2, 2)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        let colors = vec![Color::Diameter, Color::Diameter, Color::Done, Color::Done];
        let term = vec![true; 4];
        assert!(final_circle_check(mkview(&positions, &colors, &term)).is_ok());

        let positions_bad: Vec<GridPoint> = [(0, 0), (0, 3), (-3, 1), (-2, 2)]
            .iter()
            .map(|&(x, y)| GridPoint::new(x, y))
            .collect();
        assert!(final_circle_check(mkview(&positions_bad, &colors, &term)).is_err());
    }
}
