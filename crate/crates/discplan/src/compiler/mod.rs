//! Assemble a full disc-robot instance from a constraint graph, its cell
//! plan and an initial orientation.

mod approx;
mod format;
mod svg;

pub use approx::{angular_step, approximate_arcs, approximate_domain, arc_chain, max_deviation, ApproxError, ArcApproxParams};
pub use format::{read_instance, write_instance};
pub use svg::render_svg;

use crate::gadget::{
    and_gadget, apply_transform, connector_gadget, or_gadget, ConnectorKind, Dir, GadgetGeometry, RobotClass, RobotPlacement,
    RobotRole, PITCH,
};
use crate::geom::{v, Domain, Region, RigidTransform, Vec2};
use crate::layout::{neighbor, Cell, CellPlan, CellRole};
use crate::ncl::{is_protected_safe, is_valid_state, ConstraintGraph, NclError, NclState, NodeKind};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    MultiToMulti,
    MultiToSingle,
    MultiToSingleInClass,
}

impl Variant {
    pub fn keyword(self) -> &'static str {
        match self {
            Variant::MultiToMulti => "multi-to-multi",
            Variant::MultiToSingle => "multi-to-single",
            Variant::MultiToSingleInClass => "multi-to-single-in-class",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        [Variant::MultiToMulti, Variant::MultiToSingle, Variant::MultiToSingleInClass].into_iter().find(|v| v.keyword() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Targets {
    /// Target positions per class, same order as `Instance::classes`.
    Full(Vec<Vec<Vec2>>),
    /// Some robot must reach this point.
    Point(Vec2),
    /// Some robot of the given class must reach this point.
    PointInClass(Vec2, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassSet {
    pub radius: f64,
    pub starts: Vec<Vec2>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub domain: Domain,
    /// Small discs first, then large ones.
    pub classes: Vec<ClassSet>,
    pub targets: Targets,
}

impl Instance {
    pub fn variant(&self) -> Variant {
        match self.targets {
            Targets::Full(_) => Variant::MultiToMulti,
            Targets::Point(_) => Variant::MultiToSingle,
            Targets::PointInClass(..) => Variant::MultiToSingleInClass,
        }
    }

    pub fn robot_count(&self) -> usize {
        self.classes.iter().map(|c| c.starts.len()).sum()
    }

    /// All start discs as `(center, radius)`.
    pub fn discs(&self) -> Vec<(Vec2, f64)> {
        self.classes.iter().flat_map(|c| c.starts.iter().map(move |p| (*p, c.radius))).collect()
    }
}

/// What the target section asks for.
#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    /// Reach the terminal placement encoding this orientation.
    Goal(NclState),
    /// Flip the first edge robot of this edge to its other terminal.
    Edge(String),
}

#[derive(Debug, Error, PartialEq)]
pub enum CompileError {
    #[error("initial state: {0}")]
    State(#[from] NclError),
    #[error("initial state is not a valid, protected-safe orientation")]
    BadInitial,
    #[error("goal state is not a valid orientation")]
    BadGoal,
    #[error("cell ({}, {}): {msg}", cell.0, cell.1)]
    Cell { cell: Cell, msg: String },
    #[error("opening between ({}, {}) and ({}, {}) disagrees", a.0, a.1, b.0, b.1)]
    PortMismatch { a: Cell, b: Cell },
    #[error("payload does not fit the variant: {0}")]
    Payload(String),
}

/// A compiled instance with the bookkeeping needed to check it.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub instance: Instance,
    /// Placed gadgets in global coordinates.
    pub gadgets: Vec<(Cell, GadgetGeometry)>,
    /// Robots in instance order (small class first), global coordinates.
    pub robots: Vec<RobotPlacement>,
    /// Edge id carried by each shared edge robot, keyed by robot index.
    pub edge_of: BTreeMap<usize, String>,
    pub region: Region,
}

fn cell_err(cell: Cell, msg: impl Into<String>) -> CompileError {
    CompileError::Cell { cell, msg: msg.into() }
}

/// Build the gadget for one cell, in cell-local coordinates.
fn build_cell(g: &ConstraintGraph, cell: Cell, info: &crate::layout::CellInfo) -> Result<GadgetGeometry, CompileError> {
    let dir_of = |edge: &str| info.ports.iter().find(|(_, e)| e.as_str() == edge).map(|(d, _)| *d);
    match info.role {
        CellRole::AndGadget | CellRole::PorGadget => {
            let node = info.node.as_deref().ok_or_else(|| cell_err(cell, "node cell without node"))?;
            let n = g.node(node).ok_or_else(|| cell_err(cell, format!("unknown node `{node}`")))?;
            if info.ports.len() != 3 {
                return Err(cell_err(cell, format!("node `{node}` has {} ports", info.ports.len())));
            }
            let (out, ins) = match n.kind {
                NodeKind::And => {
                    let out = g.incident(node).into_iter().find(|e| e.weight == 2).ok_or_else(|| cell_err(cell, "AND without out edge"))?;
                    let ins: Vec<&str> = g.incident(node).into_iter().filter(|e| e.id != out.id).map(|e| e.id.as_str()).collect();
                    (out.id.clone(), (ins[0].to_string(), ins[1].to_string()))
                }
                NodeKind::ProtectedOr => {
                    let (a, b) = g.por_inputs.get(node).cloned().ok_or_else(|| cell_err(cell, "POR without inputs"))?;
                    let out = g.incident(node).into_iter().find(|e| e.id != a && e.id != b).ok_or_else(|| cell_err(cell, "POR without out edge"))?;
                    (out.id.clone(), (a, b))
                }
            };
            let d = |e: &str| dir_of(e).ok_or_else(|| cell_err(cell, format!("edge `{e}` has no port")));
            let (o, i1, i2) = (d(&out)?, d(&ins.0)?, d(&ins.1)?);
            let res = if n.kind == NodeKind::And { and_gadget(o, i1, i2) } else { or_gadget(o, i1, i2) };
            res.map_err(|m| cell_err(cell, m))
        }
        CellRole::ConnectorStraight | CellRole::ConnectorCorner => {
            let up = info.upstream.ok_or_else(|| cell_err(cell, "connector without upstream port"))?;
            let other = info.ports.keys().copied().find(|&p| p != up).ok_or_else(|| cell_err(cell, "connector needs two ports"))?;
            let kind = if info.role == CellRole::ConnectorStraight { ConnectorKind::Straight } else { ConnectorKind::Corner };
            connector_gadget(kind, (up, other)).map_err(|m| cell_err(cell, m))
        }
        CellRole::Empty => Err(cell_err(cell, "empty cell has no gadget")),
    }
}

/// Which ports of a cell have their edge robot inside, under `state`.
fn port_states(g: &ConstraintGraph, cell: &crate::layout::CellInfo, gad: &GadgetGeometry, state: &NclState) -> Vec<bool> {
    gad.ports
        .iter()
        .map(|p| {
            let edge = &cell.ports[&p.dir];
            let toward = state.toward.get(edge).map(String::as_str).unwrap_or("");
            match &cell.node {
                // a robot inside a node cell means the edge points away
                Some(n) => toward != n,
                // a connector's upstream port faces the edge's first endpoint
                None => {
                    let a = g.edge(edge).map(|e| e.a.as_str()).unwrap_or("");
                    let upstream = cell.upstream == Some(p.dir);
                    (toward == a) == upstream
                }
            }
        })
        .collect()
}

/// Place every gadget for `state`, in global coordinates.
fn place(g: &ConstraintGraph, plan: &CellPlan, state: &NclState) -> Result<Vec<(Cell, GadgetGeometry)>, CompileError> {
    let mut out = Vec::new();
    for (&cell, info) in &plan.cells {
        if info.role == CellRole::Empty {
            continue;
        }
        let mut gad = build_cell(g, cell, info)?;
        let s = port_states(g, info, &gad, state);
        gad.configure(&s);
        let t = RigidTransform::translation(v(PITCH * cell.0 as f64, PITCH * cell.1 as f64));
        out.push((cell, apply_transform(&gad, &t)));
    }
    Ok(out)
}

/// Merge placed gadgets: one robot per shared opening, small class first.
fn merge(placed: &[(Cell, GadgetGeometry)], plan: &CellPlan) -> Result<(Vec<RobotPlacement>, BTreeMap<usize, String>), CompileError> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut large_edge = Vec::new();
    let mut shared: BTreeMap<(Cell, Cell), Vec2> = BTreeMap::new();
    for (cell, gad) in placed {
        let edge_ports: BTreeMap<usize, Dir> = gad.ports.iter().map(|p| (p.robot, p.dir)).collect();
        for (i, r) in gad.robots.iter().enumerate() {
            if let Some(&d) = edge_ports.get(&i) {
                let nb = neighbor(*cell, d);
                let key = if *cell < nb { (*cell, nb) } else { (nb, *cell) };
                if let Some(p) = shared.get(&key) {
                    if !p.close(r.start, 1e-9) {
                        return Err(CompileError::PortMismatch { a: key.0, b: key.1 });
                    }
                    continue;
                }
                if !plan.cells.get(&nb).map(|c| c.ports.contains_key(&d.opposite())).unwrap_or(false) {
                    return Err(CompileError::PortMismatch { a: *cell, b: nb });
                }
                shared.insert(key, r.start);
                large_edge.push(Some(plan.cells[cell].ports[&d].clone()));
                large.push(r.clone());
            } else if r.class == RobotClass::Small {
                small.push(r.clone());
            } else {
                large_edge.push(None);
                large.push(r.clone());
            }
        }
    }
    let ns = small.len();
    let edge_of = large_edge.into_iter().enumerate().filter_map(|(i, e)| e.map(|e| (ns + i, e))).collect();
    small.extend(large);
    Ok((small, edge_of))
}

pub fn compile(
    g: &ConstraintGraph,
    plan: &CellPlan,
    initial: &NclState,
    variant: Variant,
    payload: &Payload,
) -> Result<Compiled, CompileError> {
    if !is_valid_state(g, initial)? || !is_protected_safe(g, initial)? {
        return Err(CompileError::BadInitial);
    }
    let placed = place(g, plan, initial)?;
    let (robots, edge_of) = merge(&placed, plan)?;
    let mut region = Region::default();
    for (_, gad) in &placed {
        region.extend(&gad.region);
    }
    let classes = classes_of(&robots);
    let targets = match (variant, payload) {
        (Variant::MultiToMulti, Payload::Goal(goal)) => {
            if !is_valid_state(g, goal)? {
                return Err(CompileError::BadGoal);
            }
            let (goal_robots, _) = merge(&place(g, plan, goal)?, plan)?;
            Targets::Full(classes_of(&goal_robots).into_iter().map(|c| c.starts).collect())
        }
        (Variant::MultiToSingle | Variant::MultiToSingleInClass, Payload::Edge(e)) => {
            let idx = first_edge_robot(g, plan, &robots, &edge_of, e)?;
            let r = &robots[idx];
            let other = r.terminals.iter().copied().find(|t| !t.close(r.start, 1e-9)).unwrap_or(r.start);
            if variant == Variant::MultiToSingle {
                Targets::Point(other)
            } else {
                Targets::PointInClass(other, 1)
            }
        }
        (v, p) => return Err(CompileError::Payload(format!("{} with {p:?}", v.keyword()))),
    };
    let instance = Instance { domain: region.boundary(), classes, targets };
    Ok(Compiled { instance, gadgets: placed, robots, edge_of, region })
}

fn classes_of(robots: &[RobotPlacement]) -> Vec<ClassSet> {
    let pick = |c: RobotClass| robots.iter().filter(|r| r.class == c).map(|r| r.start).collect();
    vec![ClassSet { radius: 0.5, starts: pick(RobotClass::Small) }, ClassSet { radius: 1.0, starts: pick(RobotClass::Large) }]
}

/// The edge robot in the opening next to the edge's first endpoint.
fn first_edge_robot(
    g: &ConstraintGraph,
    plan: &CellPlan,
    robots: &[RobotPlacement],
    edge_of: &BTreeMap<usize, String>,
    edge: &str,
) -> Result<usize, CompileError> {
    let e = g.edge(edge).ok_or_else(|| CompileError::Payload(format!("unknown edge `{edge}`")))?;
    let (cell, info) = plan
        .cells
        .iter()
        .find(|(_, c)| c.node.as_deref() == Some(e.a.as_str()))
        .ok_or_else(|| CompileError::Payload(format!("node `{}` has no cell", e.a)))?;
    let d = info.ports.iter().find(|(_, id)| id.as_str() == edge).map(|(d, _)| *d).unwrap();
    let (inside, outside) = crate::gadget::port_terminals(d);
    let off = v(PITCH * cell.0 as f64, PITCH * cell.1 as f64);
    let (inside, outside) = (inside + off, outside + off);
    edge_of
        .iter()
        .filter(|(_, id)| id.as_str() == edge)
        .map(|(i, _)| *i)
        .find(|&i| robots[i].start.close(inside, 1e-9) || robots[i].start.close(outside, 1e-9))
        .ok_or_else(|| CompileError::Payload(format!("no edge robot for `{edge}`")))
}

/// A single gadget as a standalone instance whose targets are its start
/// placement; used for the gadget atlas.
pub fn gadget_instance(gad: &GadgetGeometry) -> Instance {
    let classes = classes_of(&gad.robots);
    let targets = Targets::Full(classes.iter().map(|c| c.starts.clone()).collect());
    Instance { domain: gad.region.boundary(), classes, targets }
}

/// Count of edge robots that are not at one of their two terminals.
pub fn misplaced_edge_robots(c: &Compiled) -> usize {
    c.edge_of.keys().filter(|&&i| !c.robots[i].terminals.iter().any(|t| t.close(c.robots[i].start, 1e-9))).count()
}

pub fn is_edge_robot(r: &RobotPlacement) -> bool {
    r.role == RobotRole::EdgeRobot
}
