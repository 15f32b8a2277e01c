//! Append-only trace records and their JSONL wire format.
//!
//! One JSON object per line: `{t, kind, robot, pos:[x,y], color, decision?}`.
//! A look records the robot's position and color at snapshot time plus the
//! decision it computed; a commit records the new position and color. The
//! serialization is bit-exact across runs for a fixed seed.

use crate::lattice::GridPoint;
use crate::protocol::{Color, Decision, LocalView};
use crate::scheduler::{EventKind, RobotId};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Look,
    Commit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub t: u64,
    pub kind: Kind,
    pub robot: RobotId,
    pub pos: GridPoint,
    pub color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decision: Option<Decision>,
    /// Stable hash of the snapshot a look decided on; not serialized.
    #[serde(skip)]
    pub digest: u64,
}

impl TraceEvent {
    pub fn event_kind(&self) -> EventKind {
        match self.kind {
            Kind::Look => EventKind::Look { robot: self.robot },
            Kind::Commit => EventKind::Commit { robot: self.robot },
        }
    }
}

/// FNV-1a over the canonical view encoding. Stable across runs and
/// platforms, unlike the default hasher.
pub(crate) fn view_digest(view: &LocalView) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x1000_0000_01b3;
    let mut h = OFFSET;
    let mut eat = |v: i64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    eat(view.self_color as i64);
    for r in view.robots() {
        eat(r.dx);
        eat(r.dy);
        eat(r.color as i64);
    }
    h
}

pub fn write_jsonl<W: Write>(events: &[TraceEvent], mut w: W) -> std::io::Result<()> {
    for e in events {
        serde_json::to_writer(&mut w, e)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> std::io::Result<Vec<TraceEvent>> {
    let mut events = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let e: TraceEvent = serde_json::from_str(&line)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
        events.push(e);
    }
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{Move, ViewRobot};

    #[test]
    fn jsonl_round_trip_is_exact() {
        let events = vec![
            TraceEvent {
                t: 0,
                kind: Kind::Look,
                robot: 1,
                pos: GridPoint::new(3, -2),
                color: Color::Off,
                decision: Some(Decision {
                    color: Color::Moving1,
                    mv: Move::Left,
                    terminate: false,
                }),
                digest: 7,
            },
            TraceEvent {
                t: 1,
                kind: Kind::Commit,
                robot: 1,
                pos: GridPoint::new(2, -2),
                color: Color::Moving1,
                decision: None,
                digest: 0,
            },
        ];
        let mut buf = Vec::new();
        write_jsonl(&events, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            r#"{"t":0,"kind":"look","robot":1,"pos":[3,-2],"color":"off","decision":{"color":"moving1","move":"left","terminate":false}}"#
        );
        assert_eq!(
            text.lines().nth(1).unwrap(),
            r#"{"t":1,"kind":"commit","robot":1,"pos":[2,-2],"color":"moving1"}"#
        );
        let back = read_jsonl(&buf[..]).unwrap();
        // digest is not serialized
        assert_eq!(back[0].t, events[0].t);
        assert_eq!(back[0].decision, events[0].decision);
        assert_eq!(back[1], TraceEvent { digest: 0, ..events[1] });
        let mut buf2 = Vec::new();
        write_jsonl(&back, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn malformed_line_is_rejected() {
        let text = "{\"t\":0, truncated";
        assert!(read_jsonl(text.as_bytes()).is_err());
    }

    #[test]
    fn digest_distinguishes_views() {
        let v1 = LocalView::new(
            Color::Off,
            vec![ViewRobot {
                dx: 1,
                dy: 0,
                color: Color::Off,
            }],
        );
        let v2 = LocalView::new(
            Color::Off,
            vec![ViewRobot {
                dx: 1,
                dy: 1,
                color: Color::Off,
            }],
        );
        assert_ne!(view_digest(&v1), view_digest(&v2));
        assert_eq!(view_digest(&v1), view_digest(&v1.clone()));
    }
}
