//! Exact gadget geometry: signal components, connectors and the AND /
//! protected-OR gadgets, all inside one 18×18 cell.
//!
//! Cell coordinates put the interior at `[0, 18]²`. Openings are the
//! 1×2 wall slots centred on each side; the east one is `[18, 19]×[8, 10]`.

mod cells;
pub mod chain;
pub mod components;

pub use cells::{and_gadget, connector_gadget, or_gadget, parallel_component, perpendicular_component, ConnectorKind, NOTCH_WALL};

use crate::geom::{v, Piece, Region, RigidTransform, Shape, Vec2};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Boundary piece of the obstacle set.
pub type Obstacle = Piece;

pub const CELL: f64 = 18.0;
pub const PITCH: f64 = 19.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    N,
    E,
    S,
    W,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

    /// Quarter turns from east.
    pub fn quarter(self) -> u8 {
        match self {
            Dir::E => 0,
            Dir::N => 1,
            Dir::W => 2,
            Dir::S => 3,
        }
    }

    pub fn from_quarter(q: u8) -> Dir {
        [Dir::E, Dir::N, Dir::W, Dir::S][(q % 4) as usize]
    }

    pub fn vec(self) -> Vec2 {
        RigidTransform::rotation(self.quarter()).linear(v(1.0, 0.0))
    }

    pub fn from_vec(d: Vec2) -> Dir {
        (0..4).map(Dir::from_quarter).find(|x| x.vec().close(d, 1e-9)).expect("axis-aligned unit vector")
    }

    pub fn opposite(self) -> Dir {
        Dir::from_quarter(self.quarter() + 2)
    }

    pub fn ccw(self) -> Dir {
        Dir::from_quarter(self.quarter() + 1)
    }

    pub fn cw(self) -> Dir {
        Dir::from_quarter(self.quarter() + 3)
    }

    pub fn letter(self) -> char {
        match self {
            Dir::N => 'N',
            Dir::E => 'E',
            Dir::S => 'S',
            Dir::W => 'W',
        }
    }

    pub fn parse(s: &str) -> Option<Dir> {
        match s {
            "N" => Some(Dir::N),
            "E" => Some(Dir::E),
            "S" => Some(Dir::S),
            "W" => Some(Dir::W),
            _ => None,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RobotClass {
    Small,
    Large,
}

impl RobotClass {
    pub fn radius(self) -> f64 {
        match self {
            RobotClass::Small => 0.5,
            RobotClass::Large => 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RobotRole {
    EdgeRobot,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotPlacement {
    pub class: RobotClass,
    pub role: RobotRole,
    pub label: String,
    pub start: Vec2,
    /// `[retracted, pushed]` for chain discs.
    pub terminals: Vec<Vec2>,
    /// Port whose edge robot being inside pushes this disc.
    pub driver: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PortRole {
    Out,
    In1,
    In2,
    /// Connector end; the first one drives the chain.
    End,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Port {
    pub dir: Dir,
    pub role: PortRole,
    /// Index of the shared edge robot in `robots`.
    pub robot: usize,
    pub inside: Vec2,
    pub outside: Vec2,
    /// Opening rectangle `(lo, hi)`.
    pub opening: (Vec2, Vec2),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetKind {
    And,
    ProtectedOr,
    ConnectorStraight,
    ConnectorCorner,
    /// A lone signal component.
    Fragment,
}

/// Where the close-up's two small discs sit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloseUp {
    pub out: usize,
    /// Port driving the left blocking disc, then the right one.
    pub left: usize,
    pub right: usize,
    pub small: [usize; 2],
    pub strip: [Vec2; 2],
    /// Spots once the out chain is pushed, left input open.
    pub open_left: [Vec2; 2],
    pub open_right: [Vec2; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GadgetGeometry {
    pub kind: GadgetKind,
    pub region: Region,
    pub robots: Vec<RobotPlacement>,
    pub ports: Vec<Port>,
    pub closeup: Option<CloseUp>,
}

/// Port geometry obtained by rotating the east port about the cell centre.
pub fn port_frame(d: Dir) -> RigidTransform {
    RigidTransform::rotation_about(d.quarter(), v(9.0, 9.0))
}

pub fn port_terminals(d: Dir) -> (Vec2, Vec2) {
    let t = port_frame(d);
    (t.apply(v(18.0, 9.0)), t.apply(v(19.0, 9.0)))
}

pub fn opening(d: Dir) -> (Vec2, Vec2) {
    let t = port_frame(d);
    let (a, b) = (t.apply(v(18.0, 8.0)), t.apply(v(19.0, 10.0)));
    (v(a.x.min(b.x), a.y.min(b.y)), v(a.x.max(b.x), a.y.max(b.y)))
}

/// Two triangular spikes narrowing the corridor behind port `d`. Their
/// apexes sit half a unit inside the cell: a large disc on the corridor
/// axis touches them when centred at the inside terminal or one unit
/// deeper, and cannot be anywhere in between.
pub fn nudge_obstacle(d: Dir) -> Vec<Shape> {
    let h = 3f64.sqrt() / 2.0;
    let t = port_frame(d);
    let up = Shape::polygon(&[v(17.4, 10.0), v(17.5, 9.0 + h), v(17.6, 10.0)]);
    let down = Shape::polygon(&[v(17.6, 8.0), v(17.5, 9.0 - h), v(17.4, 8.0)]);
    vec![up.transformed(&t), down.transformed(&t)]
}

impl GadgetGeometry {
    pub fn empty(kind: GadgetKind) -> Self {
        GadgetGeometry { kind, region: Region::default(), robots: vec![], ports: vec![], closeup: None }
    }

    /// Boundary pieces of the free space.
    pub fn obstacles(&self) -> Vec<Obstacle> {
        self.region.boundary().pieces
    }

    pub fn port(&self, d: Dir) -> Option<&Port> {
        self.ports.iter().find(|p| p.dir == d)
    }

    /// Re-place every robot for the given port states (`true` = the edge
    /// robot sits at its inside terminal). Connectors only read the first
    /// port.
    pub fn configure(&mut self, inside: &[bool]) {
        for r in &mut self.robots {
            if let (Some(k), 2) = (r.driver, r.terminals.len()) {
                r.start = r.terminals[usize::from(inside[k])];
            }
        }
        if let Some(cu) = &self.closeup {
            let spots = if !inside[cu.out] {
                cu.strip
            } else if !inside[cu.left] {
                cu.open_left
            } else {
                cu.open_right
            };
            for (i, &k) in cu.small.iter().enumerate() {
                self.robots[k].start = spots[i];
            }
        }
    }

    /// Start positions and radii, in robot order.
    pub fn discs(&self) -> Vec<(Vec2, f64)> {
        self.robots.iter().map(|r| (r.start, r.class.radius())).collect()
    }
}

/// Apply an isometry to everything in a gadget.
pub fn apply_transform(g: &GadgetGeometry, t: &RigidTransform) -> GadgetGeometry {
    let robots = g
        .robots
        .iter()
        .map(|r| RobotPlacement {
            start: t.apply(r.start),
            terminals: r.terminals.iter().map(|p| t.apply(*p)).collect(),
            ..r.clone()
        })
        .collect();
    let ports = g
        .ports
        .iter()
        .map(|p| {
            let (a, b) = (t.apply(p.opening.0), t.apply(p.opening.1));
            Port {
                dir: Dir::from_vec(t.linear(p.dir.vec())),
                inside: t.apply(p.inside),
                outside: t.apply(p.outside),
                opening: (v(a.x.min(b.x), a.y.min(b.y)), v(a.x.max(b.x), a.y.max(b.y))),
                ..p.clone()
            }
        })
        .collect();
    let closeup = g.closeup.as_ref().map(|c| CloseUp {
        strip: c.strip.map(|p| t.apply(p)),
        open_left: c.open_left.map(|p| t.apply(p)),
        open_right: c.open_right.map(|p| t.apply(p)),
        ..c.clone()
    });
    GadgetGeometry { kind: g.kind, region: g.region.transformed(t), robots, ports, closeup }
}
