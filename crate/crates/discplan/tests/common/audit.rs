//! Structural audit of a compiled instance by direct sampling of the free
//! region, independent of how the compiler assembled it.

use discplan::compiler::{misplaced_edge_robots, Compiled};
use discplan::cspace::{is_valid_configuration, motion_domains};
use discplan::gadget::{opening, port_frame, port_terminals, Dir, RobotRole, PITCH};
use discplan::geom::{v, Vec2};
use discplan::layout::{neighbor, CellPlan, CellRole};

const H: f64 = 1e-6;

fn offset(c: (i32, i32)) -> Vec2 {
    v(PITCH * c.0 as f64, PITCH * c.1 as f64)
}

/// Walls between a cell and whatever lies beyond side `d`: the strip
/// `18 < x < 19` of the east-facing frame is blocked except for a centred
/// opening `8 < y < 10` where the plan has a port on both sides.
fn wall(c: &Compiled, plan: &CellPlan, cell: (i32, i32), d: Dir, out: &mut Vec<String>) {
    let t = port_frame(d);
    let at = |x: f64, y: f64| t.apply(v(x, y)) + offset(cell);
    let free = |x: f64, y: f64| c.region.contains(at(x, y));
    let nb = neighbor(cell, d);
    let open = plan.cells[&cell].ports.contains_key(&d) && plan.cells.get(&nb).is_some_and(|i| i.ports.contains_key(&d.opposite()));
    let mut y = -0.49;
    while y < 18.5 {
        let want = open && y > 8.0 && y < 10.0;
        for x in [18.0 + H, 18.5, 19.0 - H] {
            if free(x, y) != want {
                out.push(format!("cell {cell:?} side {d}: ({x}, {y:.2}) free={} expected {want}", !want));
                return;
            }
        }
        y += 0.02;
    }
    if open {
        for (y, want) in [(8.0 - H, false), (8.0 + H, true), (10.0 - H, true), (10.0 + H, false)] {
            if free(18.5, y) != want {
                out.push(format!("cell {cell:?} side {d}: opening edge at y={y} wrong"));
            }
        }
    }
    // the passage through the wall is exactly one unit long
    if open && !(free(18.0 - H, 9.0) && free(19.0 + H, 9.0)) {
        out.push(format!("cell {cell:?} side {d}: passage does not meet both cells"));
    }
}

/// Every violated property, empty when the instance passes. Motion
/// domains are flood filled at resolution `delta`.
pub fn audit(c: &Compiled, plan: &CellPlan, delta: f64) -> Vec<String> {
    let mut out = Vec::new();
    for (&cell, info) in &plan.cells {
        if info.role == CellRole::Empty {
            continue;
        }
        for d in Dir::ALL {
            wall(c, plan, cell, d, &mut out);
        }
    }
    let starts: Vec<Vec2> = c.instance.discs().into_iter().map(|(p, _)| p).collect();
    if !is_valid_configuration(&c.instance, &starts) {
        out.push("start placement is not a valid configuration".into());
    }
    if misplaced_edge_robots(c) != 0 {
        out.push(format!("{} edge robots off their terminals", misplaced_edge_robots(c)));
    }
    // edge robots again, against terminals computed from the plan alone
    let mut terminals = Vec::new();
    for (&cell, info) in &plan.cells {
        for &d in info.ports.keys() {
            let (i, o) = port_terminals(d);
            terminals.push(i + offset(cell));
            terminals.push(o + offset(cell));
        }
    }
    for &i in c.edge_of.keys() {
        if !terminals.iter().any(|t| t.close(c.robots[i].start, 1e-9)) {
            out.push(format!("edge robot {} is not at a port terminal", c.robots[i].label));
        }
    }
    for (cell, gad) in &c.gadgets {
        let doms = motion_domains(gad, &gad.region.boundary(), delta);
        let holes: Vec<(Vec2, Vec2)> = Dir::ALL.iter().map(|&d| opening(d)).map(|(a, b)| (a + offset(*cell), b + offset(*cell))).collect();
        for (r, dom) in gad.robots.iter().zip(&doms) {
            if r.role == RobotRole::Internal && holes.iter().any(|&(a, b)| dom.touches_rect(a, b)) {
                out.push(format!("internal robot {} can reach an opening", r.label));
            }
        }
    }
    out
}
