//! Exact integer geometry for the grid: points, the agreed circle in a
//! doubled-center encoding, terminating points, and the grid circumference.
//!
//! Every inside/on/outside decision here is a pure integer comparison. The
//! doubled-center encoding keeps half-integer circle centers exact, and row
//! intersections are resolved through integer square roots, so no caller can
//! be bitten by floating-point rounding.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// A vertex of the infinite grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }
}

impl From<(i64, i64)> for GridPoint {
    fn from((x, y): (i64, i64)) -> Self {
        GridPoint { x, y }
    }
}

impl From<GridPoint> for (i64, i64) {
    fn from(p: GridPoint) -> Self {
        (p.x, p.y)
    }
}

/// A circle whose diameter is a vertical lattice segment.
///
/// `center2` stores the doubled center coordinates so that odd-diameter
/// circles (half-integer centers) stay exact; `d` is the diameter in grid
/// units. `center2.0` is always even (the diameter lies on a grid column)
/// and `center2.1` has the parity of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circle {
    pub center2: (i64, i64),
    pub d: i64,
}

/// Which side of the diameter column a query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn mirrored(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Classification of a grid point against a circle and a side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionClass {
    StrictlyInside,
    OnCircle,
    OutsideBand,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("diameter endpoints lie on different columns: x={0} vs x={1}")]
    DifferentColumns(i64, i64),
    #[error("diameter endpoints coincide or d = 0")]
    ZeroDiameter,
    #[error("row y={0} does not intersect the circle")]
    RowOutsideCircle(i64),
}

/// Builds the circle whose diameter is the vertical segment `p1`–`p2`.
pub fn circle_from_diameter(p1: GridPoint, p2: GridPoint) -> Result<Circle, LatticeError> {
    if p1.x != p2.x {
        return Err(LatticeError::DifferentColumns(p1.x, p2.x));
    }
    if p1.y == p2.y {
        return Err(LatticeError::ZeroDiameter);
    }
    Ok(Circle {
        center2: (2 * p1.x, p1.y + p2.y),
        d: (p1.y - p2.y).abs(),
    })
}

impl Circle {
    /// Squared half-chord width at row `y`, times 4: `d^2 - (2y - cy2)^2`.
    /// Negative when the row misses the circle.
    fn chord_discriminant(&self, y: i64) -> i128 {
        let d = self.d as i128;
        let dy = 2 * y as i128 - self.center2.1 as i128;
        d * d - dy * dy
    }

    /// Inclusive row range touched by the circle.
    pub fn row_range(&self) -> (i64, i64) {
        let lo = (self.center2.1 - self.d).div_euclid(2) + (self.center2.1 - self.d).rem_euclid(2);
        let hi = (self.center2.1 + self.d).div_euclid(2);
        (lo, hi)
    }
}

/// Real x-coordinates where row `y` crosses the circle, left then right.
///
/// Returns `None` when the row misses the circle. These values are for
/// display and test oracles only; protocol decisions go through the exact
/// integer predicates below.
pub fn row_intersections(c: &Circle, y: i64) -> Option<(f64, f64)> {
    let disc = c.chord_discriminant(y);
    if disc < 0 {
        return None;
    }
    let half_width = (disc as f64).sqrt();
    let cx2 = c.center2.0 as f64;
    Some(((cx2 - half_width) / 2.0, (cx2 + half_width) / 2.0))
}

/// The unique grid point on row `y` that is weakly outward of the circle
/// intersection on the given side, by strictly less than one unit.
///
/// Exact: the intersection is rounded outward (floor on the left, ceil on
/// the right) via an integer square root, never through floating point.
pub fn terminating_point(c: &Circle, y: i64, s: Side) -> Result<GridPoint, LatticeError> {
    let disc = c.chord_discriminant(y);
    if disc < 0 {
        return Err(LatticeError::RowOutsideCircle(y));
    }
    let root = (disc as u128).isqrt() as i128;
    let exact = root * root == disc;
    let cx2 = c.center2.0 as i128;
    let x = match s {
        Side::Left => {
            let u = cx2 - root;
            if exact && u % 2 == 0 {
                u / 2
            } else {
                // floor of an open interval (u-1, u) / 2
                (u - 1).div_euclid(2)
            }
        }
        Side::Right => {
            let u = cx2 + root;
            if exact && u % 2 == 0 {
                u / 2
            } else if u.rem_euclid(2) == 1 {
                (u + 1).div_euclid(2)
            } else {
                u / 2 + 1
            }
        }
    };
    Ok(GridPoint::new(x as i64, y))
}

/// All adopted circle points: both terminating points of every intersecting
/// row (they coincide on tangent rows).
pub fn grid_circumference(c: &Circle) -> Result<BTreeSet<GridPoint>, LatticeError> {
    if c.d < 1 {
        return Err(LatticeError::ZeroDiameter);
    }
    let (lo, hi) = c.row_range();
    let mut points = BTreeSet::new();
    for y in lo..=hi {
        points.insert(terminating_point(c, y, Side::Left)?);
        points.insert(terminating_point(c, y, Side::Right)?);
    }
    Ok(points)
}

/// Exact strict-interior test: `(2x - cx2)^2 + (2y - cy2)^2 < d^2`.
pub fn strictly_inside(c: &Circle, p: GridPoint) -> bool {
    let dx = 2 * p.x as i128 - c.center2.0 as i128;
    let dy = 2 * p.y as i128 - c.center2.1 as i128;
    let d = c.d as i128;
    dx * dx + dy * dy < d * d
}

/// Partitions a grid point into strictly inside, on the adopted circle
/// (i.e. the side's terminating point of its row), or outside that band.
pub fn classify_position(c: &Circle, p: GridPoint, s: Side) -> PositionClass {
    if strictly_inside(c, p) {
        return PositionClass::StrictlyInside;
    }
    match terminating_point(c, p.y, s) {
        Ok(t) if t == p => PositionClass::OnCircle,
        _ => PositionClass::OutsideBand,
    }
}
