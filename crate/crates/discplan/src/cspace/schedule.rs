use super::{pair_conflict, position_valid};
use crate::geom::{v, Domain, Vec2};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Piecewise-linear paths over the common time axis `[0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Per robot: `(time, position)` breakpoints.
    pub paths: Vec<Vec<(f64, Vec2)>>,
}

impl Schedule {
    /// Every robot stays put.
    pub fn stationary(c: &[Vec2]) -> Self {
        Schedule { paths: c.iter().map(|&p| vec![(0.0, p), (1.0, p)]).collect() }
    }

    /// Robots visit `frames` in order, each leg taking equal time and all
    /// robots moving in straight lines at once.
    pub fn from_frames(frames: &[Vec<Vec2>]) -> Self {
        let n = frames.len();
        let k = frames[0].len();
        let t = |i: usize| if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
        let mut paths: Vec<Vec<(f64, Vec2)>> = (0..k).map(|r| frames.iter().enumerate().map(|(i, f)| (t(i), f[r])).collect()).collect();
        if n == 1 {
            for p in &mut paths {
                p.push((1.0, p[0].1));
            }
        }
        Schedule { paths }
    }

    pub fn at(&self, robot: usize, t: f64) -> Vec2 {
        let p = &self.paths[robot];
        let i = p.partition_point(|(s, _)| *s <= t);
        if i == 0 {
            return p[0].1;
        }
        if i == p.len() {
            return p[p.len() - 1].1;
        }
        let (t0, a) = p[i - 1];
        let (t1, b) = p[i];
        a + (b - a) * ((t - t0) / (t1 - t0))
    }

    /// Speed of `robot` on the segment containing `(t0, t1)`.
    fn speed(&self, robot: usize, t0: f64, t1: f64) -> f64 {
        let a = self.at(robot, t0);
        let b = self.at(robot, t1);
        if t1 > t0 {
            a.dist(b) / (t1 - t0)
        } else {
            0.0
        }
    }

    pub fn check_shape(&self) -> Result<(), ScheduleError> {
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() < 2 {
                return Err(ScheduleError::Malformed(format!("robot {i} needs at least two breakpoints")));
            }
            if p[0].0 != 0.0 || p[p.len() - 1].0 != 1.0 {
                return Err(ScheduleError::Malformed(format!("robot {i} does not span [0, 1]")));
            }
            if p.windows(2).any(|w| w[1].0 <= w[0].0) {
                return Err(ScheduleError::Malformed(format!("robot {i} has non-increasing times")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Obstacle { robot: usize, clearance: f64 },
    Pair { a: usize, b: usize, distance: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Obstacle { robot, clearance } => write!(f, "robot {robot} leaves free space (clearance {clearance:.6})"),
            Violation::Pair { a, b, distance } => write!(f, "robots {a} and {b} overlap (distance {distance:.6})"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("malformed schedule: {0}")]
    Malformed(String),
    #[error("t = {time:.6}: {violation}")]
    Invalid { time: f64, violation: Violation },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleReport {
    pub samples: usize,
    /// Sampled margins exceed the travel bound between every pair of
    /// samples, so validity holds at all times, not just at samples.
    pub certified: bool,
}

/// Check validity at every breakpoint and at samples no more than `dt`
/// apart. `slack` loosens every inequality by that amount.
pub fn validate_schedule(dom: &Domain, radii: &[f64], s: &Schedule, dt: f64, slack: f64) -> Result<ScheduleReport, ScheduleError> {
    if !(dt > 0.0) {
        return Err(ScheduleError::Malformed(format!("dt must be positive, got {dt}")));
    }
    if s.paths.len() != radii.len() {
        return Err(ScheduleError::Malformed(format!("{} paths for {} robots", s.paths.len(), radii.len())));
    }
    s.check_shape()?;
    let mut times: Vec<f64> = s.paths.iter().flatten().map(|(t, _)| *t).collect();
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    times.dedup();
    let mut samples = Vec::new();
    for w in times.windows(2) {
        let k = ((w[1] - w[0]) / dt).ceil().max(1.0) as usize;
        for j in 0..k {
            samples.push(w[0] + (w[1] - w[0]) * j as f64 / k as f64);
        }
    }
    samples.push(1.0);
    let n = radii.len();
    let moving: Vec<bool> = s.paths.iter().map(|p| p.windows(2).any(|w| !w[0].1.close(w[1].1, 0.0))).collect();
    // parked robots only need one obstacle check
    for i in (0..n).filter(|&i| !moving[i]) {
        let p = s.paths[i][0].1;
        if !position_valid(dom, p, radii[i], slack) {
            return Err(ScheduleError::Invalid { time: 0.0, violation: Violation::Obstacle { robot: i, clearance: dom.clearance(p) } });
        }
    }
    let mut certified = true;
    for (k, &t) in samples.iter().enumerate() {
        let c: Vec<Vec2> = (0..n).map(|i| s.at(i, t)).collect();
        let next = samples.get(k + 1).copied().unwrap_or(t);
        let travel: Vec<f64> = (0..n).map(|i| if moving[i] { s.speed(i, t, next) * (next - t) } else { 0.0 }).collect();
        for i in (0..n).filter(|&i| moving[i]) {
            if !position_valid(dom, c[i], radii[i], slack) {
                return Err(ScheduleError::Invalid { time: t, violation: Violation::Obstacle { robot: i, clearance: dom.clearance(c[i]) } });
            }
            if dom.clearance(c[i]) - radii[i] < travel[i] {
                certified = false;
            }
        }
        if let Some(v) = pair_conflict(radii, &c, slack) {
            return Err(ScheduleError::Invalid { time: t, violation: v });
        }
        if certified {
            'pairs: for i in 0..n {
                for j in i + 1..n {
                    if (moving[i] || moving[j]) && c[i].dist(c[j]) - radii[i] - radii[j] < travel[i] + travel[j] {
                        certified = false;
                        break 'pairs;
                    }
                }
            }
        }
    }
    Ok(ScheduleReport { samples: samples.len(), certified })
}

pub fn write_schedule(s: &Schedule) -> String {
    let mut out = String::new();
    for (i, p) in s.paths.iter().enumerate() {
        out.push_str(&format!("path {i}"));
        for (t, q) in p {
            out.push_str(&format!(" {t} {} {}", q.x, q.y));
        }
        out.push('\n');
    }
    out
}

pub fn read_schedule(text: &str) -> Result<Schedule, ScheduleError> {
    let mut paths: Vec<Option<Vec<(f64, Vec2)>>> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let bad = |m: &str| ScheduleError::Malformed(format!("line {}: {m}", ln + 1));
        if tok[0] != "path" || tok.len() < 2 {
            return Err(bad("expected `path <robot> t x y ...`"));
        }
        let i: usize = tok[1].parse().map_err(|_| bad("bad robot index"))?;
        let nums: Vec<f64> = tok[2..].iter().map(|t| t.parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad("bad number"))?;
        if nums.is_empty() || nums.len() % 3 != 0 {
            return Err(bad("breakpoints come in triples"));
        }
        if paths.len() <= i {
            paths.resize(i + 1, None);
        }
        if paths[i].is_some() {
            return Err(bad("robot listed twice"));
        }
        paths[i] = Some(nums.chunks(3).map(|c| (c[0], v(c[1], c[2]))).collect());
    }
    let paths = paths
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| ScheduleError::Malformed(format!("robot {i} has no path"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Schedule { paths })
}
