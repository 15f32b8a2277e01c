//! Visibility between equal-radius opaque disks centered on lattice points.
//!
//! Two disks see each other iff some segment between their perimeters avoids
//! the closed disk of every third robot. The decision procedure enumerates
//! candidate segments (the center line plus the common tangents of every
//! relevant disk pair, each nudged by small normal offsets) and accepts if
//! any candidate clears all blockers. A brute-force perimeter-sampling
//! oracle cross-validates it in tests.

use crate::lattice::GridPoint;
use thiserror::Error;

/// Tangency tolerance for the real-arithmetic comparisons. Ties resolve as
/// blocked.
pub const EPS_VIS: f64 = 1e-9;
/// Normal offset used to perturb candidate lines past open/closed boundary
/// cases.
pub const EPS_PERTURB: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OcclusionError {
    #[error("disk index {index} out of range for scene of {len} disks")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("visibility query needs two distinct disks, got index {0} twice")]
    SameIndex(usize),
    #[error("duplicate disk center at ({0}, {1})")]
    DuplicateCenter(i64, i64),
    #[error("radius {0} outside (0, 1/2]")]
    BadRadius(f64),
}

/// An immutable snapshot of robot disks: centers (index = robot identity)
/// and the common radius.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskScene {
    centers: Vec<GridPoint>,
    radius: f64,
}

impl DiskScene {
    pub fn new(centers: Vec<GridPoint>, radius: f64) -> Result<Self, OcclusionError> {
        if !(radius > 0.0 && radius <= 0.5) {
            return Err(OcclusionError::BadRadius(radius));
        }
        let mut seen = std::collections::HashSet::new();
        for c in &centers {
            if !seen.insert((c.x, c.y)) {
                return Err(OcclusionError::DuplicateCenter(c.x, c.y));
            }
        }
        Ok(DiskScene { centers, radius })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self, i: usize) -> GridPoint {
        self.centers[i]
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(), OcclusionError> {
        let len = self.centers.len();
        for idx in [i, j] {
            if idx >= len {
                return Err(OcclusionError::IndexOutOfRange { index: idx, len });
            }
        }
        if i == j {
            return Err(OcclusionError::SameIndex(i));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct V2 {
    x: f64,
    y: f64,
}

impl V2 {
    fn from_grid(p: GridPoint) -> V2 {
        V2 {
            x: p.x as f64,
            y: p.y as f64,
        }
    }
    fn sub(self, o: V2) -> V2 {
        V2 {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }
    fn add(self, o: V2) -> V2 {
        V2 {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
    fn scale(self, s: f64) -> V2 {
        V2 {
            x: self.x * s,
            y: self.y * s,
        }
    }
    fn dot(self, o: V2) -> f64 {
        self.x * o.x + self.y * o.y
    }
    fn cross(self, o: V2) -> f64 {
        self.x * o.y - self.y * o.x
    }
    fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
    fn perp(self) -> V2 {
        V2 {
            x: -self.y,
            y: self.x,
        }
    }
    fn unit(self) -> V2 {
        let n = self.norm();
        self.scale(1.0 / n)
    }
}

fn point_segment_dist(p: V2, a: V2, b: V2) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.dot(ab);
    if len2 <= 1e-18 {
        return p.sub(a).norm();
    }
    let t = (p.sub(a).dot(ab) / len2).clamp(0.0, 1.0);
    p.sub(a.add(ab.scale(t))).norm()
}

/// A candidate line of sight: origin plus unit direction.
#[derive(Debug, Clone, Copy)]
struct Line {
    origin: V2,
    dir: V2,
}

/// Common tangent lines of two equal-radius disks: the two outer tangents
/// and, when the disks do not overlap, the two inner tangents through the
/// midpoint.
fn common_tangents(a: V2, b: V2, rad: f64, out: &mut Vec<Line>) {
    let ab = b.sub(a);
    let dist = ab.norm();
    if dist <= 1e-12 {
        return;
    }
    let u = ab.scale(1.0 / dist);
    let n = u.perp();
    out.push(Line {
        origin: a.add(n.scale(rad)),
        dir: u,
    });
    out.push(Line {
        origin: a.add(n.scale(-rad)),
        dir: u,
    });
    let sin = 2.0 * rad / dist;
    if sin <= 1.0 + 1e-12 {
        let sin = sin.min(1.0);
        let cos = (1.0 - sin * sin).max(0.0).sqrt();
        let mid = a.add(ab.scale(0.5));
        for s in [sin, -sin] {
            out.push(Line {
                origin: mid,
                dir: V2 {
                    x: u.x * cos - u.y * s,
                    y: u.y * cos + u.x * s,
                },
            });
        }
    }
}

/// Trims `line` (shifted by `offset` along its normal) to the gap between
/// the perimeters of the disks at `ci` and `cj`, then requires strict
/// clearance beyond `rad` from every blocker center.
fn candidate_clears(
    line: Line,
    offset: f64,
    ci: V2,
    cj: V2,
    rad: f64,
    blockers: &[V2],
) -> Option<f64> {
    let o = line.origin.add(line.dir.perp().scale(offset));
    let mut dir = line.dir;
    if cj.sub(ci).dot(dir) < 0.0 {
        dir = dir.scale(-1.0);
    }
    let di = dir.cross(ci.sub(o)).abs();
    let dj = dir.cross(cj.sub(o)).abs();
    if di > rad + 1e-12 || dj > rad + 1e-12 {
        return None;
    }
    let wi = (rad * rad - di * di).max(0.0).sqrt();
    let wj = (rad * rad - dj * dj).max(0.0).sqrt();
    let ti = ci.sub(o).dot(dir);
    let tj = cj.sub(o).dot(dir);
    let mut start = ti + wi;
    let mut end = tj - wj;
    if start > end {
        if start - end > 1e-9 {
            return None;
        }
        let mid = 0.5 * (start + end);
        start = mid;
        end = mid;
    }
    let pa = o.add(dir.scale(start));
    let pb = o.add(dir.scale(end));
    let clearance = blockers
        .iter()
        .map(|&c| point_segment_dist(c, pa, pb) - rad)
        .fold(f64::INFINITY, f64::min);
    Some(clearance)
}

/// Blockers that could touch any perimeter-to-perimeter segment between
/// disks `i` and `j`. Every such segment lies in the convex hull of the two
/// disks, a capsule of radius `rad` around the center segment, so only
/// centers within `2*rad` of that segment matter.
fn relevant_blockers(scene: &DiskScene, i: usize, j: usize) -> Vec<V2> {
    let ci = V2::from_grid(scene.centers[i]);
    let cj = V2::from_grid(scene.centers[j]);
    let bound = 2.0 * scene.radius + 1e-6;
    let mut near: Vec<(f64, V2)> = scene
        .centers
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, &c)| {
            let v = V2::from_grid(c);
            (point_segment_dist(v, ci, cj), v)
        })
        .filter(|&(d, _)| d <= bound)
        .collect();
    near.sort_by(|a, b| a.0.total_cmp(&b.0));
    near.into_iter().map(|(_, v)| v).collect()
}

fn candidate_lines(ci: V2, cj: V2, blockers: &[V2], rad: f64) -> Vec<Line> {
    let mut lines = Vec::new();
    let axis = cj.sub(ci);
    if axis.norm() > 1e-12 {
        lines.push(Line {
            origin: ci,
            dir: axis.unit(),
        });
    }
    let mut disks = Vec::with_capacity(blockers.len() + 2);
    disks.push(ci);
    disks.push(cj);
    disks.extend_from_slice(blockers);
    for a in 0..disks.len() {
        for b in (a + 1)..disks.len() {
            common_tangents(disks[a], disks[b], rad, &mut lines);
        }
    }
    lines
}

/// Best clearance over all candidate segments: positive means some candidate
/// clears every blocker by that much, negative means even the best candidate
/// comes up short. Infinite when no blocker is near the corridor.
pub fn visibility_margin(scene: &DiskScene, i: usize, j: usize) -> Result<f64, OcclusionError> {
    scene.check_pair(i, j)?;
    let (i, j) = (i.min(j), i.max(j));
    let blockers = relevant_blockers(scene, i, j);
    if blockers.is_empty() {
        return Ok(f64::INFINITY);
    }
    let ci = V2::from_grid(scene.centers[i]);
    let cj = V2::from_grid(scene.centers[j]);
    let rad = scene.radius;
    let mut best = f64::NEG_INFINITY;
    for line in candidate_lines(ci, cj, &blockers, rad) {
        for offset in [0.0, EPS_PERTURB, -EPS_PERTURB] {
            if let Some(c) = candidate_clears(line, offset, ci, cj, rad, &blockers) {
                best = best.max(c);
            }
        }
    }
    Ok(best)
}

/// True iff disks `i` and `j` can see each other around every other robot.
/// Deterministic and symmetric in `i`, `j`.
pub fn visible(scene: &DiskScene, i: usize, j: usize) -> Result<bool, OcclusionError> {
    scene.check_pair(i, j)?;
    let (i, j) = (i.min(j), i.max(j));
    let blockers = relevant_blockers(scene, i, j);
    if blockers.is_empty() {
        return Ok(true);
    }
    let ci = V2::from_grid(scene.centers[i]);
    let cj = V2::from_grid(scene.centers[j]);
    let rad = scene.radius;
    for line in candidate_lines(ci, cj, &blockers, rad) {
        for offset in [0.0, EPS_PERTURB, -EPS_PERTURB] {
            if let Some(c) = candidate_clears(line, offset, ci, cj, rad, &blockers) {
                if c > EPS_VIS {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Indices of every robot disk `i` can see.
pub fn visible_set(scene: &DiskScene, i: usize) -> Result<Vec<usize>, OcclusionError> {
    if i >= scene.len() {
        return Err(OcclusionError::IndexOutOfRange {
            index: i,
            len: scene.len(),
        });
    }
    let mut out = Vec::new();
    for j in 0..scene.len() {
        if j != i && visible(scene, i, j)? {
            out.push(j);
        }
    }
    Ok(out)
}

/// Sampling oracle: places `m` equally spaced points on each perimeter and
/// tests all `m^2` segments against the closed blocker disks. Monotone in
/// `m` for multiples (the sample sets nest). Test use only.
pub fn visible_sampled(
    scene: &DiskScene,
    i: usize,
    j: usize,
    m: usize,
) -> Result<bool, OcclusionError> {
    scene.check_pair(i, j)?;
    debug_assert!(m >= 8);
    let blockers = relevant_blockers(scene, i, j);
    if blockers.is_empty() {
        return Ok(true);
    }
    let rad = scene.radius;
    let perimeter = |c: GridPoint| -> Vec<V2> {
        let center = V2::from_grid(c);
        (0..m)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                center.add(V2 {
                    x: rad * a.cos(),
                    y: rad * a.sin(),
                })
            })
            .collect()
    };
    let pts_i = perimeter(scene.centers[i]);
    let pts_j = perimeter(scene.centers[j]);
    // ties resolve as blocked, same tolerance as the exact path
    let clear_of_all = |p: V2| blockers.iter().all(|&c| p.sub(c).norm() > rad + EPS_VIS);
    for &p in &pts_i {
        if !clear_of_all(p) {
            continue;
        }
        for &q in &pts_j {
            if blockers
                .iter()
                .all(|&c| point_segment_dist(c, p, q) > rad + EPS_VIS)
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
