//! The pure per-robot decision function of the circle formation protocol.
//!
//! A robot sees a `LocalView`: the positions and light colors of visible
//! robots relative to itself, in its private frame (x agreed by all robots,
//! y possibly flipped). `decide` returns the new light color, a one-hop move
//! in that frame, and whether the robot terminates.
//!
//! Phase 1 gathers all robots onto one vertical line, marks its two ends
//! `diameter`, and disperses the rest one hop left or right (`ChordMove`).
//! Phase 2 marches each side out to half the diameter, then sweeps back
//! toward it, dropping every robot on the grid point of its row that lies
//! within one unit outward of the agreed circle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The five light colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Off,
    Chord,
    Moving1,
    Diameter,
    Done,
}

/// A one-hop move in the robot's private frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    Left,
    Right,
    Up,
    Down,
    Stay,
}

impl Move {
    pub fn flipped_y(self) -> Move {
        match self {
            Move::Up => Move::Down,
            Move::Down => Move::Up,
            other => other,
        }
    }

    pub fn mirrored_x(self) -> Move {
        match self {
            Move::Left => Move::Right,
            Move::Right => Move::Left,
            other => other,
        }
    }
}

/// Output of one compute step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decision {
    pub color: Color,
    #[serde(rename = "move")]
    pub mv: Move,
    pub terminate: bool,
}

impl Decision {
    fn new(color: Color, mv: Move) -> Decision {
        Decision {
            color,
            mv,
            terminate: false,
        }
    }

    fn terminal(color: Color) -> Decision {
        Decision {
            color,
            mv: Move::Stay,
            terminate: true,
        }
    }

    fn noop(color: Color) -> Decision {
        Decision::new(color, Move::Stay)
    }

    pub fn flipped_y(self) -> Decision {
        Decision {
            mv: self.mv.flipped_y(),
            ..self
        }
    }

    pub fn mirrored_x(self) -> Decision {
        Decision {
            mv: self.mv.mirrored_x(),
            ..self
        }
    }
}

/// One visible robot, relative to the observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ViewRobot {
    pub dx: i64,
    pub dy: i64,
    pub color: Color,
}

/// Snapshot of the observer's surroundings in its private frame.
///
/// The origin (the observer) never appears among `robots`, and positions are
/// pairwise distinct. Entries are kept sorted so equal views compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalView {
    pub self_color: Color,
    robots: Vec<ViewRobot>,
}

impl LocalView {
    pub fn new(self_color: Color, mut robots: Vec<ViewRobot>) -> LocalView {
        robots.sort();
        debug_assert!(robots.iter().all(|r| (r.dx, r.dy) != (0, 0)));
        debug_assert!(robots.windows(2).all(|w| (w[0].dx, w[0].dy) != (w[1].dx, w[1].dy)));
        LocalView { self_color, robots }
    }

    pub fn robots(&self) -> &[ViewRobot] {
        &self.robots
    }

    pub fn flipped_y(&self) -> LocalView {
        LocalView::new(
            self.self_color,
            self.robots
                .iter()
                .map(|r| ViewRobot {
                    dx: r.dx,
                    dy: -r.dy,
                    color: r.color,
                })
                .collect(),
        )
    }

    pub fn mirrored_x(&self) -> LocalView {
        LocalView::new(
            self.self_color,
            self.robots
                .iter()
                .map(|r| ViewRobot {
                    dx: -r.dx,
                    dy: r.dy,
                    color: r.color,
                })
                .collect(),
        )
    }

    fn diameters(&self) -> impl Iterator<Item = &ViewRobot> {
        self.robots.iter().filter(|r| r.color == Color::Diameter)
    }

    fn own_column(&self) -> impl Iterator<Item = &ViewRobot> {
        self.robots.iter().filter(|r| r.dx == 0)
    }

    fn left_open_empty(&self) -> bool {
        !self.robots.iter().any(|r| r.dx < 0)
    }

    fn right_open_empty(&self) -> bool {
        !self.robots.iter().any(|r| r.dx > 0)
    }

    /// Nearest visible occupied column strictly to the left: its (negative)
    /// offset and the visible robots on it.
    fn left_immediate(&self) -> Option<(i64, Vec<&ViewRobot>)> {
        let dx = self.robots.iter().filter(|r| r.dx < 0).map(|r| r.dx).max()?;
        Some((dx, self.robots.iter().filter(|r| r.dx == dx).collect()))
    }

    /// Nearest visible occupied column strictly to the right.
    fn right_immediate(&self) -> Option<(i64, Vec<&ViewRobot>)> {
        let dx = self.robots.iter().filter(|r| r.dx > 0).map(|r| r.dx).min()?;
        Some((dx, self.robots.iter().filter(|r| r.dx == dx).collect()))
    }
}

/// Which handler the robot runs, derived from the visible diameter robots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Phase1,
    Phase2Left,
    Phase2Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("visible diameter robots on both open halves")]
    MixedSides,
    #[error("no diameter-colored robot on the observer's column")]
    NoDiameterOnColumn,
    #[error("no decision rule matched the view")]
    UnknownBranch,
}

/// True iff the observer has no visible robot above it or none below it on
/// its own column.
pub fn is_terminal(view: &LocalView) -> bool {
    let above = view.own_column().any(|r| r.dy > 0);
    let below = view.own_column().any(|r| r.dy < 0);
    !(above && below)
}

/// Distinguishes Phase 1 from the two sides of Phase 2.
///
/// Diameter robots on the observer's own column mean the line of Phase 1 is
/// still being dismantled; diameter robots strictly on one open half mean
/// the observer is on the opposite side of the agreed diameter.
pub fn detect_phase(view: &LocalView) -> Result<Phase, ProtocolError> {
    let mut any = false;
    let mut on_column = false;
    let mut left = false;
    let mut right = false;
    for d in view.diameters() {
        any = true;
        match d.dx.cmp(&0) {
            std::cmp::Ordering::Equal => on_column = true,
            std::cmp::Ordering::Less => left = true,
            std::cmp::Ordering::Greater => right = true,
        }
    }
    if !any {
        return Ok(Phase::Phase1);
    }
    match view.self_color {
        Color::Moving1 | Color::Chord if on_column => Ok(Phase::Phase1),
        _ => {
            if on_column || (left && right) {
                Err(ProtocolError::MixedSides)
            } else if right {
                Ok(Phase::Phase2Left)
            } else {
                Ok(Phase::Phase2Right)
            }
        }
    }
}

/// Direction a non-terminal line robot disperses in, from the strip between
/// its row and each visible diameter robot on its column.
pub fn chord_move_direction(view: &LocalView) -> Result<Move, ProtocolError> {
    let diameters: Vec<&ViewRobot> = view.diameters().filter(|d| d.dx == 0).collect();
    if diameters.is_empty() {
        return Err(ProtocolError::NoDiameterOnColumn);
    }
    let mut directions = Vec::new();
    for d in &diameters {
        let (lo, hi) = if d.dy > 0 { (0, d.dy) } else { (d.dy, 0) };
        let strip: Vec<&ViewRobot> = view
            .robots
            .iter()
            .filter(|r| r.dy > lo && r.dy < hi)
            .collect();
        let dir = match strip
            .iter()
            .min_by_key(|r| (r.dx * r.dx + r.dy * r.dy, r.dx))
        {
            None => Move::Left,
            Some(nearest) if nearest.dx < 0 => Move::Right,
            Some(_) => Move::Left,
        };
        directions.push(dir);
    }
    if directions.iter().all(|&d| d == directions[0]) {
        Ok(directions[0])
    } else {
        Ok(Move::Left)
    }
}

/// Ceiling of `d / 2` for positive `d`.
fn half_up(d: i64) -> i64 {
    (d + 1).div_euclid(2)
}

/// The full decision table. Pure and deterministic; terminated robots are
/// never asked again, so a `diameter` self color is a caller bug.
pub fn decide(view: &LocalView) -> Result<Decision, ProtocolError> {
    let decision = match view.self_color {
        Color::Done => Ok(Decision::terminal(Color::Done)),
        Color::Diameter => Err(ProtocolError::UnknownBranch),
        Color::Off | Color::Chord | Color::Moving1 => match detect_phase(view)? {
            Phase::Phase1 => decide_phase1(view),
            Phase::Phase2Left => decide_phase2_left(view),
            Phase::Phase2Right => Ok(decide_phase2_left(&view.mirrored_x())?.mirrored_x()),
        },
    }?;
    // Never step onto a visibly occupied vertex; hold and re-decide on the
    // next activation instead.
    let target = match decision.mv {
        Move::Stay => return Ok(decision),
        Move::Left => (-1, 0),
        Move::Right => (1, 0),
        Move::Up => (0, 1),
        Move::Down => (0, -1),
    };
    if view.robots.iter().any(|r| (r.dx, r.dy) == target) {
        return Ok(Decision::noop(view.self_color));
    }
    Ok(decision)
}

fn decide_phase1(view: &LocalView) -> Result<Decision, ProtocolError> {
    match view.self_color {
        Color::Off => Ok(decide_phase1_off(view)),
        Color::Moving1 => Ok(decide_phase1_moving1(view)),
        Color::Chord => decide_phase1_chord(view),
        _ => Err(ProtocolError::UnknownBranch),
    }
}

fn decide_phase1_off(view: &LocalView) -> Decision {
    if view.left_open_empty() && is_terminal(view) {
        return Decision::new(Color::Moving1, Move::Left);
    }
    if let Some((dx, on_li)) = view.left_immediate() {
        if dx <= -2 && on_li.iter().all(|r| r.color == Color::Chord) && is_terminal(view) {
            return Decision::new(Color::Moving1, Move::Stay);
        }
    }
    Decision::noop(Color::Off)
}

fn decide_phase1_moving1(view: &LocalView) -> Decision {
    if view.diameters().any(|d| d.dx == 0) {
        // Only a line end takes the second diameter mark. A mover caught in
        // the interior (possible after a stale landing) is a chord robot.
        return if is_terminal(view) {
            Decision::terminal(Color::Diameter)
        } else {
            Decision::new(Color::Chord, Move::Stay)
        };
    }
    let li = view.left_immediate();
    let chord_on_column = view.own_column().any(|r| r.color == Color::Chord);

    if let Some((li_dx, on_li)) = &li {
        if on_li.iter().all(|r| r.color == Color::Chord) && !chord_on_column {
            let upper = on_li.iter().any(|r| r.dy >= 0);
            let lower = on_li.iter().any(|r| r.dy <= 0);
            if upper && lower {
                // walk along the column past the nearer end of the chord
                // line, away from the column mate when one exists
                let mate = view.own_column().min_by_key(|r| (r.dy.abs(), r.dy));
                let mv = match mate {
                    Some(m) if m.dy > 0 => Move::Down,
                    Some(_) => Move::Up,
                    None => {
                        let top = on_li.iter().map(|r| r.dy).max().unwrap();
                        let bot = on_li.iter().map(|r| r.dy).min().unwrap();
                        if top + bot > 0 {
                            Move::Down
                        } else {
                            Move::Up
                        }
                    }
                };
                return Decision::new(Color::Moving1, mv);
            }
            // the final hop onto the line yields to a same-row robot
            // rejoining the line from beyond it
            if *li_dx == -1
                && view
                    .robots
                    .iter()
                    .any(|r| r.dx <= -2 && r.dy == 0 && r.color == Color::Moving1)
            {
                return Decision::noop(Color::Moving1);
            }
            return Decision::new(Color::Moving1, Move::Left);
        }
    }

    let singleton = view.own_column().next().is_none();
    let li_all_moving1 = li
        .as_ref()
        .map(|(_, on_li)| on_li.iter().all(|r| r.color == Color::Moving1))
        .unwrap_or(false);
    let ri = view.right_immediate();
    let ri_off_at = |want: &dyn Fn(i64) -> bool| {
        ri.as_ref()
            .map(|(dx, on_ri)| want(*dx) && on_ri.iter().any(|r| r.color == Color::Off))
            .unwrap_or(false)
    };
    if (singleton && li_all_moving1) || (ri_off_at(&|dx| dx == 1) && view.left_open_empty()) {
        // A mover diagonally adjacent to the target cell may be walking
        // along a chord line further left and step into the target; it has
        // right of way. Without such a line it cannot be walking.
        let diag_mover = view
            .robots
            .iter()
            .any(|r| r.dx == -1 && r.dy.abs() == 1 && r.color == Color::Moving1)
            && view
                .robots
                .iter()
                .any(|r| r.dx <= -2 && r.color == Color::Chord);
        if diag_mover {
            return Decision::noop(Color::Moving1);
        }
        return Decision::new(Color::Moving1, Move::Left);
    }

    // A mover sharing its column with a chord robot has arrived, whether or
    // not dispersal has already pushed chord robots past it on the left.
    if chord_on_column {
        return Decision::new(Color::Chord, Move::Stay);
    }

    if view.left_open_empty() {
        if ri_off_at(&|dx| dx >= 2) {
            return Decision::new(Color::Chord, Move::Stay);
        }
        // A stale pending can carry a robot one column past the line after
        // its mates have already marked it. Step back onto the marked column
        // once the own-row slot is free; robots landing on the line from the
        // other side yield to this move. If the slot was taken meanwhile,
        // walk to the nearest free row beyond the occupied span.
        if let Some((dx, on_ri)) = &ri {
            if *dx == 1
                && on_ri.iter().any(|r| r.color == Color::Chord)
                && !on_ri.iter().any(|r| r.color == Color::Off)
            {
                if !view.robots.iter().any(|r| (r.dx, r.dy) == (1, 0)) {
                    return Decision::new(Color::Moving1, Move::Right);
                }
                let top = on_ri.iter().map(|r| r.dy).max().unwrap();
                let bot = on_ri.iter().map(|r| r.dy).min().unwrap();
                let prefer = if 1 - bot < top + 1 { Move::Down } else { Move::Up };
                // a fellow rejoiner hunting on this column has right of way
                // in its direction; turn around instead of meeting it
                let crowded = |mv: Move| {
                    view.robots.iter().any(|r| {
                        r.dx == 0
                            && r.color == Color::Moving1
                            && match mv {
                                Move::Down => (-2..0).contains(&r.dy),
                                Move::Up => (1..=2).contains(&r.dy),
                                _ => false,
                            }
                    })
                };
                let mv = match prefer {
                    mv if !crowded(mv) => mv,
                    Move::Down if !crowded(Move::Up) => Move::Up,
                    Move::Up if !crowded(Move::Down) => Move::Down,
                    _ => Move::Stay,
                };
                return Decision::new(Color::Moving1, mv);
            }
        }
    }
    Decision::noop(Color::Moving1)
}

fn decide_phase1_chord(view: &LocalView) -> Result<Decision, ProtocolError> {
    let diameter_visible = view.diameters().next().is_some();
    if !diameter_visible {
        let chord_on_column = view.own_column().any(|r| r.color == Color::Chord);
        let upper_closed_empty = !view.robots.iter().any(|r| r.dy >= 0);
        let lower_closed_empty = !view.robots.iter().any(|r| r.dy <= 0);
        if chord_on_column
            && view.left_open_empty()
            && view.right_open_empty()
            && (upper_closed_empty || lower_closed_empty)
        {
            return Ok(Decision::terminal(Color::Diameter));
        }
        return Ok(Decision::noop(Color::Chord));
    }
    // Phase 1 with a diameter visible means it is on the observer's column.
    if is_terminal(view) {
        Ok(Decision::terminal(Color::Diameter))
    } else if view.own_column().any(|r| r.color == Color::Moving1) {
        // dispersal waits until every mover on the line has converted,
        // otherwise a mover left behind loses the line and strands itself
        Ok(Decision::noop(Color::Chord))
    } else {
        Ok(Decision::new(Color::Chord, chord_move_direction(view)?))
    }
}

/// The circle agreed from the two visible diameter robots, in view
/// coordinates: doubled center and diameter length.
struct AgreedCircle {
    center2: (i64, i64),
    d: i64,
}

impl AgreedCircle {
    fn from_pair(col: i64, a: &ViewRobot, b: &ViewRobot) -> AgreedCircle {
        AgreedCircle {
            center2: (2 * col, a.dy + b.dy),
            d: (a.dy - b.dy).abs(),
        }
    }

    /// Exact strict-interior test for the observer at the view origin.
    fn origin_strictly_inside(&self) -> bool {
        let dx = self.center2.0 as i128;
        let dy = self.center2.1 as i128;
        let d = self.d as i128;
        dx * dx + dy * dy < d * d
    }

    /// The observer is weakly nearest to the circle center along its column,
    /// among itself and the visible robots there.
    fn origin_nearest_to_center(&self, view: &LocalView) -> bool {
        let own = self.center2.1.abs();
        view.own_column()
            .all(|r| own <= (2 * r.dy - self.center2.1).abs())
    }
}

/// The nearest right column holds exactly the two diameter robots and
/// nothing else visible.
fn right_immediate_is_diameter_pair<'a>(
    view: &'a LocalView,
) -> Option<(i64, &'a ViewRobot, &'a ViewRobot)> {
    let (dx, on_ri) = view.right_immediate()?;
    match on_ri.as_slice() {
        [a, b] if a.color == Color::Diameter && b.color == Color::Diameter => Some((dx, a, b)),
        _ => None,
    }
}

/// Phase 2 for a robot on the left of the agreed diameter. The right side
/// runs the same logic on a mirrored view.
fn decide_phase2_left(view: &LocalView) -> Result<Decision, ProtocolError> {
    match view.self_color {
        Color::Chord => {
            if let Some((dist, a, b)) = right_immediate_is_diameter_pair(view) {
                if is_terminal(view) {
                    let d = (a.dy - b.dy).abs();
                    if dist == half_up(d) - 1 {
                        return Ok(Decision::new(Color::Off, Move::Left));
                    }
                    if dist >= half_up(d) {
                        // unreachable for admissible swarms; keeps the rule total
                        return Ok(Decision::new(Color::Off, Move::Stay));
                    }
                    return Ok(Decision::new(Color::Chord, Move::Left));
                }
            }
            Ok(Decision::noop(Color::Chord))
        }
        Color::Off => {
            // The move back toward the diameter must not start while any
            // robot is still dispersing outward on either side.
            if view.robots.iter().any(|r| r.color == Color::Chord) {
                return Ok(Decision::noop(Color::Off));
            }
            if let Some((dist, a, b)) = right_immediate_is_diameter_pair(view) {
                let circle = AgreedCircle::from_pair(dist, a, b);
                if circle.origin_nearest_to_center(view) {
                    return Ok(Decision::new(Color::Moving1, Move::Right));
                }
            } else if let Some((_, on_ri)) = view.right_immediate() {
                // serialize the cascade among this side's robots only;
                // settled robots beyond the diameter column do not count
                let v0_dx = view.diameters().map(|d| d.dx).next().unwrap_or(i64::MAX);
                for leader in on_ri.iter().filter(|r| r.color == Color::Moving1) {
                    let (lo, hi) = if leader.dy > 0 { (0, leader.dy) } else { (leader.dy, 0) };
                    let strip_empty = !view
                        .robots
                        .iter()
                        .any(|r| r.dx < v0_dx && r.dy > lo && r.dy < hi);
                    if strip_empty {
                        return Ok(Decision::new(Color::Moving1, Move::Right));
                    }
                }
            }
            Ok(Decision::noop(Color::Off))
        }
        Color::Moving1 => {
            if let Some((dist, a, b)) = right_immediate_is_diameter_pair(view) {
                let circle = AgreedCircle::from_pair(dist, a, b);
                let li_clear = view
                    .left_immediate()
                    .map(|(_, on_li)| {
                        !on_li
                            .iter()
                            .any(|r| matches!(r.color, Color::Off | Color::Moving1))
                    })
                    .unwrap_or(true);
                if circle.origin_nearest_to_center(view) && li_clear {
                    return Ok(if circle.origin_strictly_inside() {
                        Decision::new(Color::Done, Move::Left)
                    } else if dist > 1 {
                        Decision::new(Color::Moving1, Move::Right)
                    } else {
                        Decision::new(Color::Done, Move::Stay)
                    });
                }
                return Ok(Decision::noop(Color::Moving1));
            }
            if let Some((rdx, on_ri)) = view.right_immediate() {
                for peer in on_ri.iter().filter(|r| r.color == Color::Moving1) {
                    let (lo, hi) = if peer.dy > 0 { (0, peer.dy) } else { (peer.dy, 0) };
                    let rect_clear = !view.robots.iter().any(|r| {
                        (r.dx, r.dy) != (peer.dx, peer.dy)
                            && r.dx >= 0
                            && r.dx <= rdx
                            && r.dy >= lo
                            && r.dy <= hi
                    });
                    if rect_clear {
                        return Ok(Decision::new(Color::Moving1, Move::Right));
                    }
                }
            }
            Ok(Decision::noop(Color::Moving1))
        }
        _ => Err(ProtocolError::UnknownBranch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn view(self_color: Color, robots: &[(i64, i64, Color)]) -> LocalView {
        LocalView::new(
            self_color,
            robots
                .iter()
                .map(|&(dx, dy, color)| ViewRobot { dx, dy, color })
                .collect(),
        )
    }

    #[test]
    fn terminal_checks() {
        assert!(!is_terminal(&view(
            Color::Off,
            &[(0, 1, Color::Off), (0, -1, Color::Off)]
        )));
        assert!(is_terminal(&view(Color::Off, &[(0, 3, Color::Chord)])));
        assert!(is_terminal(&view(Color::Off, &[])));
    }

    #[test]
    fn phase_detection() {
        assert_eq!(
            detect_phase(&view(Color::Off, &[(1, 0, Color::Off)])).unwrap(),
            Phase::Phase1
        );
        assert_eq!(
            detect_phase(&view(Color::Moving1, &[(0, 3, Color::Diameter)])).unwrap(),
            Phase::Phase1
        );
        assert_eq!(
            detect_phase(&view(
                Color::Chord,
                &[(2, 1, Color::Diameter), (2, -2, Color::Diameter)]
            ))
            .unwrap(),
            Phase::Phase2Left
        );
        assert_eq!(
            detect_phase(&view(
                Color::Off,
                &[(-3, 1, Color::Diameter), (-3, -2, Color::Diameter)]
            ))
            .unwrap(),
            Phase::Phase2Right
        );
        assert_eq!(
            detect_phase(&view(
                Color::Off,
                &[(2, 0, Color::Diameter), (-2, 0, Color::Diameter)]
            )),
            Err(ProtocolError::MixedSides)
        );
    }

    #[test]
    fn chord_move_cases() {
        // empty strip: move left
        assert_eq!(
            chord_move_direction(&view(Color::Chord, &[(0, 4, Color::Diameter)])).unwrap(),
            Move::Left
        );
        // nearest strip robot on the left open half: move right
        assert_eq!(
            chord_move_direction(&view(
                Color::Chord,
                &[(0, 4, Color::Diameter), (-1, 2, Color::Chord)]
            ))
            .unwrap(),
            Move::Right
        );
        // nearest strip robot on the own column: move left
        assert_eq!(
            chord_move_direction(&view(
                Color::Chord,
                &[(0, 4, Color::Diameter), (0, 2, Color::Chord)]
            ))
            .unwrap(),
            Move::Left
        );
        assert_eq!(
            chord_move_direction(&view(Color::Chord, &[(1, 4, Color::Diameter)])),
            Err(ProtocolError::NoDiameterOnColumn)
        );
    }

    #[test]
    fn chord_move_disagreement_goes_left() {
        // upper strip verdict right, lower strip verdict left
        let v = view(
            Color::Chord,
            &[
                (0, 4, Color::Diameter),
                (0, -3, Color::Diameter),
                (-1, 2, Color::Chord),
                (0, -1, Color::Chord),
            ],
        );
        assert_eq!(chord_move_direction(&v).unwrap(), Move::Left);
    }

    #[test]
    fn phase1_off_rules() {
        let v = view(Color::Off, &[(2, 0, Color::Off)]);
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Left)
        );
        // left immediate column of chords two hops away: recolor in place
        let v = view(Color::Off, &[(-2, 0, Color::Chord), (-2, 3, Color::Chord)]);
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Stay)
        );
        // neighbors above and below: not terminal, no-op
        let v = view(
            Color::Off,
            &[(0, 1, Color::Off), (0, -1, Color::Off), (2, 0, Color::Off)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::noop(Color::Off));
    }

    #[test]
    fn phase1_moving1_terminates_on_diameter_column() {
        let v = view(
            Color::Moving1,
            &[(0, 5, Color::Diameter), (1, 1, Color::Chord)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::terminal(Color::Diameter));
        // caught in the line interior: recolor to chord instead
        let v = view(
            Color::Moving1,
            &[(0, -2, Color::Diameter), (0, 1, Color::Moving1)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Chord, Move::Stay));
    }

    #[test]
    fn phase1_moving1_walks_past_the_line() {
        // chords above and below on the left immediate column, mate above:
        // walk down, away from the mate
        let v = view(
            Color::Moving1,
            &[
                (-2, -1, Color::Chord),
                (-2, 2, Color::Chord),
                (0, 1, Color::Moving1),
            ],
        );
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Down)
        );
        // alone on the column: escape past the nearer end of the line
        let v = view(
            Color::Moving1,
            &[(-2, -1, Color::Chord), (-2, 2, Color::Chord)],
        );
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Down)
        );
        // alone and equidistant from both ends: private positive y
        let v = view(
            Color::Moving1,
            &[(-2, -2, Color::Chord), (-2, 2, Color::Chord)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Moving1, Move::Up));
        // one closed half clear: move left
        let v = view(
            Color::Moving1,
            &[(-2, 1, Color::Chord), (-2, 4, Color::Chord)],
        );
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Left)
        );
    }

    #[test]
    fn phase1_moving1_color_changes() {
        // chord on own column: become chord
        let v = view(Color::Moving1, &[(0, 2, Color::Chord)]);
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Chord, Move::Stay));
        // off robot on the right immediate column at distance two
        let v = view(Color::Moving1, &[(2, 1, Color::Off)]);
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Chord, Move::Stay));
        // off robot one hop right with empty left half: shift the line left
        let v = view(Color::Moving1, &[(1, 1, Color::Off), (0, 3, Color::Moving1)]);
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Left)
        );
    }

    #[test]
    fn phase1_moving1_rejoins_marked_line_after_overshoot() {
        // stranded one column left of an already-marked line: step back right
        let v = view(
            Color::Moving1,
            &[(1, 2, Color::Chord), (1, 7, Color::Moving1)],
        );
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Right)
        );
        // own-row slot taken: walk to the nearest free row beyond the span
        let v = view(
            Color::Moving1,
            &[(1, 0, Color::Chord), (1, 1, Color::Chord), (1, 2, Color::Chord)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Moving1, Move::Down));
        // a final hop onto the line yields to a same-row rejoiner beyond it
        let v = view(
            Color::Moving1,
            &[(-1, 2, Color::Chord), (-3, 0, Color::Moving1)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::noop(Color::Moving1));
    }

    #[test]
    fn phase1_chord_rules() {
        // line end with empty halves: become the diameter mark
        let v = view(Color::Chord, &[(0, 1, Color::Chord), (0, 4, Color::Chord)]);
        assert_eq!(decide(&v).unwrap(), Decision::terminal(Color::Diameter));
        // something on the right open half: wait
        let v = view(
            Color::Chord,
            &[(0, 1, Color::Chord), (2, 0, Color::Off)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::noop(Color::Chord));
        // diameter on own column, terminal: become diameter
        let v = view(Color::Chord, &[(0, -3, Color::Diameter), (0, -1, Color::Chord)]);
        assert_eq!(decide(&v).unwrap(), Decision::terminal(Color::Diameter));
        // diameter on own column, not terminal: disperse
        let v = view(
            Color::Chord,
            &[(0, 3, Color::Diameter), (0, -2, Color::Diameter), (0, 1, Color::Chord)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Chord, Move::Left));
    }

    #[test]
    fn phase2_chord_marching() {
        // distance matches the recoloring threshold for d = 3: off and out
        let v = view(
            Color::Chord,
            &[(1, 2, Color::Diameter), (1, -1, Color::Diameter)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Off, Move::Left));
        // farther than the half-diameter: total-rule patch recolors in place
        let v = view(
            Color::Chord,
            &[(3, 2, Color::Diameter), (3, -1, Color::Diameter)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Off, Move::Stay));
        // d = 5 at distance 1: keep the chord color and keep going
        let v = view(
            Color::Chord,
            &[(1, 3, Color::Diameter), (1, -2, Color::Diameter)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Chord, Move::Left));
        // mirrored side
        let v = view(
            Color::Chord,
            &[(-1, 2, Color::Diameter), (-1, -1, Color::Diameter)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Off, Move::Right));
        // still-waiting chord robots on the diameter column: hold position
        let v = view(
            Color::Chord,
            &[
                (1, 2, Color::Diameter),
                (1, -1, Color::Diameter),
                (1, 0, Color::Chord),
            ],
        );
        assert_eq!(decide(&v).unwrap(), Decision::noop(Color::Chord));
    }

    #[test]
    fn phase2_off_rules() {
        // nearest to the center: start moving back
        let v = view(
            Color::Off,
            &[
                (2, 2, Color::Diameter),
                (2, -1, Color::Diameter),
                (0, 2, Color::Off),
            ],
        );
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Right)
        );
        // not nearest: wait
        let v = view(
            Color::Off,
            &[
                (2, 4, Color::Diameter),
                (2, -1, Color::Diameter),
                (0, 1, Color::Off),
            ],
        );
        assert_eq!(decide(&v).unwrap(), Decision::noop(Color::Off));
        // follow a mover one column ahead when the strip between rows is empty
        let v = view(
            Color::Off,
            &[
                (1, 1, Color::Moving1),
                (0, 2, Color::Off),
                (3, 3, Color::Diameter),
                (3, -2, Color::Diameter),
            ],
        );
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Right)
        );
        // a dispersing robot is still visible anywhere: hold
        let v = view(
            Color::Off,
            &[
                (2, 2, Color::Diameter),
                (2, -1, Color::Diameter),
                (5, 1, Color::Chord),
            ],
        );
        assert_eq!(decide(&v).unwrap(), Decision::noop(Color::Off));
    }

    #[test]
    fn phase2_moving1_rules() {
        // strictly inside at distance > 1: settle outward
        let v = view(
            Color::Moving1,
            &[(2, 2, Color::Diameter), (2, -3, Color::Diameter)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Done, Move::Left));
        // on the circle at distance > 1: keep moving toward the diameter
        let v = view(
            Color::Moving1,
            &[(2, 2, Color::Diameter), (2, -2, Color::Diameter)],
        );
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Right)
        );
        // one hop away and not strictly inside: settle in place
        let v = view(
            Color::Moving1,
            &[(1, 1, Color::Diameter), (1, -1, Color::Diameter)],
        );
        assert_eq!(decide(&v).unwrap(), Decision::new(Color::Done, Move::Stay));
        // waiting robots on the left immediate column: hold
        let v = view(
            Color::Moving1,
            &[
                (2, 2, Color::Diameter),
                (2, -3, Color::Diameter),
                (-1, 1, Color::Off),
            ],
        );
        assert_eq!(decide(&v).unwrap(), Decision::noop(Color::Moving1));
        // zipper: follow the peer ahead when the shared rectangle is clear
        let v = view(
            Color::Moving1,
            &[
                (1, 2, Color::Moving1),
                (3, 3, Color::Diameter),
                (3, -2, Color::Diameter),
            ],
        );
        assert_eq!(
            decide(&v).unwrap(),
            Decision::new(Color::Moving1, Move::Right)
        );
        let v = view(
            Color::Moving1,
            &[
                (1, 2, Color::Moving1),
                (0, 1, Color::Moving1),
                (3, 3, Color::Diameter),
                (3, -2, Color::Diameter),
            ],
        );
        assert_eq!(decide(&v).unwrap(), Decision::noop(Color::Moving1));
    }

    #[test]
    fn done_terminates() {
        let v = view(Color::Done, &[(1, 1, Color::Moving1)]);
        assert_eq!(decide(&v).unwrap(), Decision::terminal(Color::Done));
    }

    #[test]
    fn decide_is_deterministic() {
        let v = view(
            Color::Moving1,
            &[(2, 2, Color::Diameter), (2, -2, Color::Diameter)],
        );
        assert_eq!(decide(&v).unwrap(), decide(&v).unwrap());
    }
}
