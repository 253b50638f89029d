//! Geometric ground truth: collision predicates, schedule validation,
//! single-robot motion domains and reduced-DOF reachability.

mod bfs;
mod domains;
pub mod lemmas;
mod schedule;

pub use bfs::{reachable, Assembly, Body, CspaceError, Robot, SearchResult};
pub use domains::{flood, motion_domains, permanent_occupancy, Lattice, MotionDomain};
pub use schedule::{read_schedule, validate_schedule, write_schedule, Schedule, ScheduleError, ScheduleReport, Violation};

use crate::compiler::Instance;
use crate::geom::{Domain, Vec2};
use crate::TOL;

/// Positions, one per robot, in instance order.
pub type Configuration = Vec<Vec2>;

/// Distance from `p` to the nearest obstacle boundary.
pub fn clearance(p: Vec2, dom: &Domain) -> f64 {
    dom.clearance(p)
}

/// A disc of radius `r` at `p` lies in the closed free space, up to `slack`.
pub fn position_valid(dom: &Domain, p: Vec2, r: f64, slack: f64) -> bool {
    dom.disc_fits(p, r, TOL + slack)
}

/// Radii in instance order.
pub fn radii(inst: &Instance) -> Vec<f64> {
    inst.classes.iter().flat_map(|c| std::iter::repeat(c.radius).take(c.starts.len())).collect()
}

/// First failing robot or pair, if any.
pub fn first_conflict(dom: &Domain, radii: &[f64], c: &[Vec2], slack: f64) -> Option<Violation> {
    for (i, (&p, &r)) in c.iter().zip(radii).enumerate() {
        if !position_valid(dom, p, r, slack) {
            return Some(Violation::Obstacle { robot: i, clearance: dom.clearance(p) });
        }
    }
    pair_conflict(radii, c, slack)
}

pub fn pair_conflict(radii: &[f64], c: &[Vec2], slack: f64) -> Option<Violation> {
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let d = c[i].dist(c[j]);
            if d < radii[i] + radii[j] - TOL - slack {
                return Some(Violation::Pair { a: i, b: j, distance: d });
            }
        }
    }
    None
}

/// Every disc inside the free space and no two overlapping; touching is
/// allowed.
pub fn is_valid_configuration(inst: &Instance, c: &[Vec2]) -> bool {
    let r = radii(inst);
    r.len() == c.len() && first_conflict(&inst.domain, &r, c, 0.0).is_none()
}
