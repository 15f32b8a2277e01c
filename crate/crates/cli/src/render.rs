//! Trace rendering: ASCII boards on standard output, or one SVG per
//! requested snapshot with the disks colored by light and the agreed circle
//! overlaid once both diameter marks exist.

use circlefg_core::engine::{Kind, TraceEvent};
use circlefg_core::lattice::{circle_from_diameter, Circle, GridPoint};
use circlefg_core::protocol::Color;
use std::collections::BTreeMap;
use std::io::Write;

/// Positions and colors reconstructed from a trace. A robot's first event
/// records its starting vertex; every commit updates it.
pub struct Board {
    pub robots: BTreeMap<usize, (GridPoint, Color)>,
}

impl Board {
    pub fn initial(events: &[TraceEvent]) -> Board {
        let mut robots = BTreeMap::new();
        for e in events {
            robots.entry(e.robot).or_insert((e.pos, Color::Off));
        }
        Board { robots }
    }

    pub fn apply(&mut self, e: &TraceEvent) {
        if e.kind == Kind::Commit {
            self.robots.insert(e.robot, (e.pos, e.color));
        }
    }

    fn agreed_circle(&self) -> Option<Circle> {
        let diameters: Vec<GridPoint> = self
            .robots
            .values()
            .filter(|(_, c)| *c == Color::Diameter)
            .map(|(p, _)| *p)
            .collect();
        match diameters.as_slice() {
            [a, b] => circle_from_diameter(*a, *b).ok(),
            _ => None,
        }
    }

    fn bounds(&self) -> (i64, i64, i64, i64) {
        let xs: Vec<i64> = self.robots.values().map(|(p, _)| p.x).collect();
        let ys: Vec<i64> = self.robots.values().map(|(p, _)| p.y).collect();
        let (min_x, max_x) = (xs.iter().min().unwrap(), xs.iter().max().unwrap());
        let (min_y, max_y) = (ys.iter().min().unwrap(), ys.iter().max().unwrap());
        (min_x - 1, max_x + 1, min_y - 1, max_y + 1)
    }

    pub fn ascii(&self, t: u64) -> String {
        if self.robots.is_empty() {
            return String::new();
        }
        let (min_x, max_x, min_y, max_y) = self.bounds();
        let mut out = format!("t={}\n", t);
        for y in (min_y..=max_y).rev() {
            for x in min_x..=max_x {
                let c = self
                    .robots
                    .values()
                    .find(|(p, _)| p.x == x && p.y == y)
                    .map(|(_, c)| match c {
                        Color::Off => 'o',
                        Color::Chord => 'c',
                        Color::Moving1 => 'm',
                        Color::Diameter => 'D',
                        Color::Done => 'd',
                    })
                    .unwrap_or('.');
                out.push(c);
            }
            out.push('\n');
        }
        out
    }

    pub fn svg(&self, t: u64, radius: f64) -> String {
        const UNIT: f64 = 24.0;
        let (min_x, max_x, min_y, max_y) = self.bounds();
        let w = (max_x - min_x + 1) as f64 * UNIT;
        let h = (max_y - min_y + 1) as f64 * UNIT;
        let px = |x: i64| (x - min_x) as f64 * UNIT + UNIT / 2.0;
        let py = |y: i64| (max_y - y) as f64 * UNIT + UNIT / 2.0;
        let mut s = String::new();
        s.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
        ));
        s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        for x in min_x..=max_x {
            s.push_str(&format!(
                "<line x1=\"{0}\" y1=\"0\" x2=\"{0}\" y2=\"{h}\" stroke=\"#eee\"/>\n",
                px(x)
            ));
        }
        for y in min_y..=max_y {
            s.push_str(&format!(
                "<line x1=\"0\" y1=\"{0}\" x2=\"{w}\" y2=\"{0}\" stroke=\"#eee\"/>\n",
                py(y)
            ));
        }
        if let Some(c) = self.agreed_circle() {
            s.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n",
                (c.center2.0 as f64 / 2.0 - min_x as f64) * UNIT + UNIT / 2.0,
                (max_y as f64 - c.center2.1 as f64 / 2.0) * UNIT + UNIT / 2.0,
                c.d as f64 / 2.0 * UNIT
            ));
        }
        for (id, (p, color)) in &self.robots {
            let fill = match color {
                Color::Off => "#9e9e9e",
                Color::Chord => "#ff9800",
                Color::Moving1 => "#2196f3",
                Color::Diameter => "#e53935",
                Color::Done => "#43a047",
            };
            s.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
                px(p.x),
                py(p.y),
                radius * UNIT,
                fill
            ));
            s.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"8\" text-anchor=\"middle\" fill=\"white\">{}</text>\n",
                px(p.x),
                py(p.y) + 3.0,
                id
            ));
        }
        s.push_str(&format!(
            "<text x=\"4\" y=\"12\" font-size=\"10\" fill=\"#444\">t={}</text>\n</svg>\n",
            t
        ));
        s
    }
}

pub enum RenderTarget {
    Ascii,
    SvgDir(std::path::PathBuf),
}

/// Replays a trace and emits a snapshot every `every` events plus the final
/// state. Returns the number of snapshots written.
pub fn render(
    events: &[TraceEvent],
    target: &RenderTarget,
    every: Option<u64>,
    radius: f64,
) -> std::io::Result<usize> {
    if events.is_empty() {
        return Ok(0);
    }
    let mut board = Board::initial(events);
    let mut snapshots = 0usize;
    let emit = |board: &Board, t: u64, idx: usize| -> std::io::Result<()> {
        match target {
            RenderTarget::Ascii => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(board.ascii(t).as_bytes())?;
                stdout.write_all(b"\n")?;
            }
            RenderTarget::SvgDir(dir) => {
                std::fs::create_dir_all(dir)?;
                let path = dir.join(format!("snap_{:06}.svg", idx));
                std::fs::write(path, board.svg(t, radius))?;
            }
        }
        Ok(())
    };
    for (i, e) in events.iter().enumerate() {
        board.apply(e);
        if let Some(k) = every {
            if k > 0 && (i as u64 + 1) % k == 0 && i + 1 != events.len() {
                emit(&board, e.t, snapshots)?;
                snapshots += 1;
            }
        }
    }
    emit(&board, events.last().unwrap().t, snapshots)?;
    Ok(snapshots + 1)
}
