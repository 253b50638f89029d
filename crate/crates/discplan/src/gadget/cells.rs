use super::chain::Chain;
use super::components::{par, perp, Link};
use super::*;
use std::f64::consts::{FRAC_PI_2, PI};

const AL: Link = Link::Aligned;
const PAR_L: Link = Link::Parallel { left: true };
const PAR_R: Link = Link::Parallel { left: false };
const PERP_L: Link = Link::Perp { left: true };
const PERP_R: Link = Link::Perp { left: false };

/// Width of the wall left between the threshold notch and the out corridor.
/// Tuned so a small disc wedged into the notch still needs the blocking
/// disc to drop 0.8539 before the out disc can pass.
pub const NOTCH_WALL: f64 = 0.316_303_584_396_478_54;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConnectorKind {
    Straight,
    Corner,
}

fn large(label: String, role: RobotRole, terminals: Vec<Vec2>, driver: Option<usize>) -> RobotPlacement {
    RobotPlacement { class: RobotClass::Large, role, label, start: terminals[0], terminals, driver }
}

fn small(label: String, terminals: Vec<Vec2>, driver: Option<usize>) -> RobotPlacement {
    RobotPlacement { class: RobotClass::Small, role: RobotRole::Internal, label, start: terminals[0], terminals, driver }
}

fn new_port(g: &mut GadgetGeometry, dir: Dir, role: PortRole, robot: usize) -> usize {
    let (inside, outside) = port_terminals(dir);
    g.ports.push(Port { dir, role, robot, inside, outside, opening: opening(dir) });
    g.ports.len() - 1
}

/// Add a chain whose first disc is the edge robot of port `up`, and whose
/// last disc is the edge robot of port `down` when given. Returns the
/// robot index of the last large disc.
fn add_chain(g: &mut GadgetGeometry, ch: &Chain, name: &str, up: (Dir, PortRole), down: Option<(Dir, PortRole)>) -> usize {
    g.region.extend(&ch.region);
    let driver = g.ports.len();
    let n = ch.discs.len();
    let mut last = 0;
    for i in 0..n {
        let (p, _) = ch.discs[i];
        let edge = i == 0 || (i == n - 1 && down.is_some());
        let role = if edge { RobotRole::EdgeRobot } else { RobotRole::Internal };
        let label = match (i, down) {
            (0, _) => format!("edge:{}", up.0),
            (i, Some((d, _))) if i == n - 1 => format!("edge:{d}"),
            _ => format!("{name}.{i}"),
        };
        g.robots.push(large(label, role, vec![ch.retracted(i), p], Some(driver)));
        last = g.robots.len() - 1;
        if i == 0 {
            new_port(g, up.0, up.1, last);
        }
    }
    if let Some((d, r)) = down {
        new_port(g, d, r, last);
    }
    for (k, &(a, b)) in ch.smalls.iter().enumerate() {
        g.robots.push(small(format!("{name}.s{k}"), vec![a, b], Some(driver)));
    }
    if ch.links.first() == Some(&AL) {
        for s in nudge_obstacle(up.0) {
            g.region.cut(s);
        }
    }
    if let (Some((d, _)), Some(&AL)) = (down, ch.links.last()) {
        for s in nudge_obstacle(d) {
            g.region.cut(s);
        }
    }
    last
}

/// Mirror across the horizontal line through the cell centre.
fn flip_y() -> RigidTransform {
    RigidTransform::new(2, true, v(0.0, CELL))
}

fn quarter_between(from: Dir, to: Dir) -> u8 {
    (to.quarter() + 4 - from.quarter()) % 4
}

fn rotate_ports(g: &GadgetGeometry, q: u8) -> GadgetGeometry {
    apply_transform(g, &RigidTransform::rotation_about(q, v(9.0, 9.0)))
}

/// A connector between two ports; the first one drives the chain.
pub fn connector_gadget(kind: ConnectorKind, ports: (Dir, Dir)) -> Result<GadgetGeometry, String> {
    let (p0, p1) = ports;
    let q = quarter_between(Dir::W, p0);
    let end = (PortRole::End, PortRole::End);
    match kind {
        ConnectorKind::Straight => {
            if p1 != p0.opposite() {
                return Err(format!("straight connector needs opposite ports, got {p0}{p1}"));
            }
            let mut g = GadgetGeometry::empty(GadgetKind::ConnectorStraight);
            let links = [PERP_L, PERP_R, PAR_R, PAR_R, PAR_R, AL, AL, AL, AL, AL];
            let ch = Chain::build(v(0.0, 9.0), v(1.0, 0.0), &links);
            add_chain(&mut g, &ch, "c", (Dir::W, end.0), Some((Dir::E, end.1)));
            Ok(rotate_ports(&g, q))
        }
        ConnectorKind::Corner => {
            let mut g = GadgetGeometry::empty(GadgetKind::ConnectorCorner);
            let links = [AL, AL, PAR_L, PAR_R, PERP_L, AL, AL, AL, AL];
            let ch = Chain::build(v(0.0, 9.0), v(1.0, 0.0), &links);
            if p1 == p0.cw() {
                add_chain(&mut g, &ch, "c", (Dir::W, end.0), Some((Dir::N, end.1)));
            } else if p1 == p0.ccw() {
                add_chain(&mut g, &ch.transformed(&flip_y()), "c", (Dir::W, end.0), Some((Dir::S, end.1)));
            } else {
                return Err(format!("corner connector needs perpendicular ports, got {p0}{p1}"));
            }
            Ok(rotate_ports(&g, q))
        }
    }
}

/// Input chain feeding the left blocking disc, from the west or south port.
fn left_input(from: Dir) -> Chain {
    match from {
        Dir::W => Chain::build(v(0.0, 9.0), v(1.0, 0.0), &[AL, PAR_R, PAR_R, PERP_L]),
        _ => Chain::build(v(9.0, 0.0), v(0.0, 1.0), &[AL, AL, PERP_L, PERP_R, PAR_R]),
    }
}

fn right_input(from: Dir) -> Chain {
    let src = if from == Dir::E { Dir::W } else { Dir::S };
    left_input(src).transformed(&RigidTransform::mirror_x(9.0))
}

fn validate_ports(out: Dir, in1: Dir, in2: Dir) -> Result<(), String> {
    if out == in1 || out == in2 || in1 == in2 {
        return Err(format!("ports must be distinct, got out={out} in={in1},{in2}"));
    }
    Ok(())
}

/// Shared skeleton of the AND and protected-OR gadgets, built with the
/// out port facing north and then rotated into place.
fn node_gadget(kind: GadgetKind, out: Dir, in1: Dir, in2: Dir) -> Result<GadgetGeometry, String> {
    validate_ports(out, in1, in2)?;
    let q = quarter_between(Dir::N, out);
    let back = (4 - q) % 4;
    let canon = |d: Dir| Dir::from_quarter(d.quarter() + back);
    let (c1, c2) = (canon(in1), canon(in2));
    let roles = |d: Dir| if d == c1 { PortRole::In1 } else { PortRole::In2 };
    // left input comes from W (or S when W is unused), right from E (or S)
    let left = if c1 == Dir::W || c2 == Dir::W { Dir::W } else { Dir::S };
    let right = if c1 == Dir::E || c2 == Dir::E { Dir::E } else { Dir::S };

    let mut g = GadgetGeometry::empty(kind);
    let a_chain = Chain::build(v(9.0, 18.0), v(0.0, -1.0), &[AL, AL, AL, AL]);
    add_chain(&mut g, &a_chain, "out", (Dir::N, PortRole::Out), None);
    let lp = g.ports.len();
    add_chain(&mut g, &left_input(left), "left", (left, roles(left)), None);
    let rp = g.ports.len();
    add_chain(&mut g, &right_input(right), "right", (right, roles(right)), None);

    let y = 9.5;
    let (strip, open_left, open_right) = match kind {
        GadgetKind::And => {
            add_and_closeup(&mut g.region);
            let open = [v(7.5, y), v(10.5, y)];
            ([v(8.5, y), v(9.5, y)], open, open)
        }
        _ => ([v(8.5, y), v(9.5, y)], [v(6.5, y), v(7.5, y)], [v(10.5, y), v(11.5, y)]),
    };
    let b = g.robots.len();
    g.robots.push(small("B".into(), vec![strip[0], open_left[0]], None));
    g.robots.push(small("B'".into(), vec![strip[1], open_right[1]], None));
    g.closeup = Some(CloseUp { out: 0, left: lp, right: rp, small: [b, b + 1], strip, open_left, open_right });
    // keep the port list in the caller's order: out, in1, in2
    g.ports.sort_by_key(|p| match p.role {
        PortRole::Out => 0,
        PortRole::In1 => 1,
        _ => 2,
    });
    let idx = |role: PortRole, g: &GadgetGeometry| g.ports.iter().position(|p| p.role == role).unwrap();
    let remap: Vec<usize> = [PortRole::Out, roles(left), roles(right)].iter().map(|&r| idx(r, &g)).collect();
    for r in &mut g.robots {
        r.driver = r.driver.map(|k| remap[k]);
    }
    if let Some(cu) = &mut g.closeup {
        cu.out = remap[0];
        cu.left = remap[lp];
        cu.right = remap[rp];
    }
    Ok(rotate_ports(&g, q))
}

/// The AND close-up: a fill that leaves room for one small disc above the
/// left blocking disc, a notch that sets the release threshold, and their
/// mirror images.
fn add_and_closeup(r: &mut Region) {
    let m = RigidTransform::mirror_x(9.0);
    let fill = Shape::Loop(vec![
        Piece::arc(v(7.0, 9.0), 1.0, FRAC_PI_2, PI),
        Piece::seg(v(6.0, 9.0), v(6.0, 10.0)),
        Piece::seg(v(6.0, 10.0), v(7.0, 10.0)),
    ]);
    let notch = Shape::rect(7.1, 10.0, 8.0 - NOTCH_WALL, 10.6);
    r.cut(fill.transformed(&m));
    r.cut(fill);
    r.add(notch.transformed(&m));
    r.add(notch);
}

pub fn and_gadget(out: Dir, in1: Dir, in2: Dir) -> Result<GadgetGeometry, String> {
    node_gadget(GadgetKind::And, out, in1, in2)
}

pub fn or_gadget(out: Dir, in1: Dir, in2: Dir) -> Result<GadgetGeometry, String> {
    node_gadget(GadgetKind::ProtectedOr, out, in1, in2)
}

/// The perpendicular component alone, in its own coordinates, then moved
/// by `anchor`.
pub fn perpendicular_component(anchor: &RigidTransform) -> GadgetGeometry {
    let mut g = GadgetGeometry::empty(GadgetKind::Fragment);
    g.region = perp::region();
    g.robots = vec![
        large("A".into(), RobotRole::Internal, vec![perp::t1(), perp::t2()], None),
        large("B".into(), RobotRole::Internal, vec![perp::b_top(), v(0.0, 1.0)], None),
        small("C".into(), vec![perp::c_start(), perp::c_moved()], None),
    ];
    apply_transform(&g, anchor)
}

pub fn parallel_component(anchor: &RigidTransform) -> GadgetGeometry {
    let mut g = GadgetGeometry::empty(GadgetKind::Fragment);
    g.region = par::region();
    g.robots = vec![
        large("A'".into(), RobotRole::Internal, vec![par::t1(), par::t2()], None),
        large("B'".into(), RobotRole::Internal, vec![par::b_start(), v(1.0, 0.0)], None),
        small("C'".into(), vec![par::c_start(), par::c_moved()], None),
    ];
    apply_transform(&g, anchor)
}
