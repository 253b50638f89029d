//! Orthogonal grid drawings of constraint graphs and the cell plan derived
//! from them.

mod embed;
mod format;

pub use embed::{embed, is_k4};
pub use format::{read_layout, write_layout};

use crate::gadget::Dir;
use crate::ncl::{ConstraintGraph, NodeKind};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

pub type Cell = (i32, i32);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridLayout {
    pub nodes: BTreeMap<String, Cell>,
    /// Cells from one endpoint's cell to the other's, both included.
    pub routes: BTreeMap<String, Vec<Cell>>,
}

impl GridLayout {
    /// `(min, max)` corners over every node and route cell.
    pub fn bbox(&self) -> (Cell, Cell) {
        let all = self.nodes.values().chain(self.routes.values().flatten());
        let mut lo = (i32::MAX, i32::MAX);
        let mut hi = (i32::MIN, i32::MIN);
        for &(x, y) in all {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        (lo, hi)
    }

    /// Width and height in cells.
    pub fn size(&self) -> (i32, i32) {
        if self.nodes.is_empty() {
            return (0, 0);
        }
        let (lo, hi) = self.bbox();
        (hi.0 - lo.0 + 1, hi.1 - lo.1 + 1)
    }

    /// Shift so the bounding box starts at the origin.
    pub fn normalized(mut self) -> Self {
        if self.nodes.is_empty() {
            return self;
        }
        let (lo, _) = self.bbox();
        for c in self.nodes.values_mut().chain(self.routes.values_mut().flatten()) {
            *c = (c.0 - lo.0, c.1 - lo.1);
        }
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayoutError {
    #[error("graph is not planar")]
    NonPlanar,
    #[error("no drawing found after {0} attempts")]
    NotFound(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayoutViolation {
    MissingNode(String),
    UnknownNode(String),
    MissingRoute(String),
    UnknownEdge(String),
    NodeCollision { a: String, b: String },
    /// Route does not start and end at its endpoints' cells.
    BadEndpoints(String),
    /// Consecutive route cells are not grid neighbours.
    Gap { edge: String, at: usize },
    Bends { edge: String, bends: usize },
    /// A pass-through cell shared with another route or a node.
    Overlap { cell: Cell, edge: String, with: String },
}

impl fmt::Display for LayoutViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayoutViolation::MissingNode(n) => write!(f, "node `{n}` is not placed"),
            LayoutViolation::UnknownNode(n) => write!(f, "placed node `{n}` is not in the graph"),
            LayoutViolation::MissingRoute(e) => write!(f, "edge `{e}` has no route"),
            LayoutViolation::UnknownEdge(e) => write!(f, "routed edge `{e}` is not in the graph"),
            LayoutViolation::NodeCollision { a, b } => write!(f, "nodes `{a}` and `{b}` share a cell"),
            LayoutViolation::BadEndpoints(e) => write!(f, "route of `{e}` does not join its endpoints"),
            LayoutViolation::Gap { edge, at } => write!(f, "route of `{edge}` jumps at step {at}"),
            LayoutViolation::Bends { edge, bends } => write!(f, "route of `{edge}` has {bends} bends"),
            LayoutViolation::Overlap { cell, edge, with } => {
                write!(f, "route of `{edge}` passes through ({}, {}) which `{with}` also uses", cell.0, cell.1)
            }
        }
    }
}

pub fn step_dir(from: Cell, to: Cell) -> Option<Dir> {
    match (to.0 - from.0, to.1 - from.1) {
        (1, 0) => Some(Dir::E),
        (-1, 0) => Some(Dir::W),
        (0, 1) => Some(Dir::N),
        (0, -1) => Some(Dir::S),
        _ => None,
    }
}

pub fn neighbor(c: Cell, d: Dir) -> Cell {
    match d {
        Dir::E => (c.0 + 1, c.1),
        Dir::W => (c.0 - 1, c.1),
        Dir::N => (c.0, c.1 + 1),
        Dir::S => (c.0, c.1 - 1),
    }
}

/// Direction changes along a route, or `None` if it has a gap.
pub fn bends(route: &[Cell]) -> Option<usize> {
    let dirs: Option<Vec<Dir>> = route.windows(2).map(|w| step_dir(w[0], w[1])).collect();
    dirs.map(|d| d.windows(2).filter(|w| w[0] != w[1]).count())
}

pub fn validate_layout(g: &ConstraintGraph, l: &GridLayout) -> Vec<LayoutViolation> {
    let mut out = Vec::new();
    for n in &g.nodes {
        if !l.nodes.contains_key(&n.id) {
            out.push(LayoutViolation::MissingNode(n.id.clone()));
        }
    }
    for id in l.nodes.keys() {
        if g.node(id).is_none() {
            out.push(LayoutViolation::UnknownNode(id.clone()));
        }
    }
    let mut owner: BTreeMap<Cell, String> = BTreeMap::new();
    for (id, c) in &l.nodes {
        if let Some(prev) = owner.insert(*c, id.clone()) {
            out.push(LayoutViolation::NodeCollision { a: prev, b: id.clone() });
        }
    }
    let k4 = is_k4(g);
    let mut two_bend = 0;
    for e in &g.edges {
        let Some(r) = l.routes.get(&e.id) else {
            out.push(LayoutViolation::MissingRoute(e.id.clone()));
            continue;
        };
        let ends = (l.nodes.get(&e.a), l.nodes.get(&e.b));
        let ok = match (r.first(), r.last(), ends) {
            (Some(s), Some(t), (Some(a), Some(b))) => r.len() >= 2 && ((s, t) == (a, b) || (s, t) == (b, a)),
            _ => false,
        };
        if !ok {
            out.push(LayoutViolation::BadEndpoints(e.id.clone()));
        }
        match bends(r) {
            None => {
                let at = r.windows(2).position(|w| step_dir(w[0], w[1]).is_none()).unwrap_or(0);
                out.push(LayoutViolation::Gap { edge: e.id.clone(), at });
            }
            // K4 has no one-bend drawing; one edge may take a second bend
            Some(2) if k4 && two_bend == 0 => two_bend += 1,
            Some(b) if b > 1 => out.push(LayoutViolation::Bends { edge: e.id.clone(), bends: b }),
            _ => {}
        }
        for c in r.iter().skip(1).take(r.len().saturating_sub(2)) {
            match owner.get(c) {
                Some(w) => out.push(LayoutViolation::Overlap { cell: *c, edge: e.id.clone(), with: w.clone() }),
                None => {
                    owner.insert(*c, e.id.clone());
                }
            }
        }
    }
    for id in l.routes.keys() {
        if g.edge(id).is_none() {
            out.push(LayoutViolation::UnknownEdge(id.clone()));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellRole {
    AndGadget,
    PorGadget,
    ConnectorCorner,
    ConnectorStraight,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellInfo {
    pub role: CellRole,
    /// Edge carried through each opening.
    pub ports: BTreeMap<Dir, String>,
    pub node: Option<String>,
    /// For connectors: the port nearer the edge's first endpoint, which
    /// drives the connector's chain.
    pub upstream: Option<Dir>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPlan {
    pub cells: BTreeMap<Cell, CellInfo>,
}

impl CellPlan {
    pub fn count(&self, role: CellRole) -> usize {
        self.cells.values().filter(|c| c.role == role).count()
    }

    /// Every cell in the bounding box that carries nothing.
    pub fn empty_cells(&self) -> BTreeSet<Cell> {
        let Some(lo_x) = self.cells.keys().map(|c| c.0).min() else { return BTreeSet::new() };
        let hi_x = self.cells.keys().map(|c| c.0).max().unwrap();
        let lo_y = self.cells.keys().map(|c| c.1).min().unwrap();
        let hi_y = self.cells.keys().map(|c| c.1).max().unwrap();
        let mut out = BTreeSet::new();
        for x in lo_x..=hi_x {
            for y in lo_y..=hi_y {
                if !self.cells.contains_key(&(x, y)) {
                    out.insert((x, y));
                }
            }
        }
        out
    }
}

/// Assign a gadget role and port set to every occupied cell. Routes are
/// read from the edge's first endpoint `a` towards `b`.
pub fn cell_plan(g: &ConstraintGraph, l: &GridLayout) -> Result<CellPlan, Vec<LayoutViolation>> {
    let v = validate_layout(g, l);
    if !v.is_empty() {
        return Err(v);
    }
    let mut plan = CellPlan::default();
    for n in &g.nodes {
        let role = match n.kind {
            NodeKind::And => CellRole::AndGadget,
            NodeKind::ProtectedOr => CellRole::PorGadget,
        };
        plan.cells.insert(l.nodes[&n.id], CellInfo { role, ports: BTreeMap::new(), node: Some(n.id.clone()), upstream: None });
    }
    for e in &g.edges {
        let mut r = l.routes[&e.id].clone();
        if r[0] != l.nodes[&e.a] {
            r.reverse();
        }
        let first = step_dir(r[0], r[1]).unwrap();
        let last = step_dir(r[r.len() - 1], r[r.len() - 2]).unwrap();
        plan.cells.get_mut(&r[0]).unwrap().ports.insert(first, e.id.clone());
        plan.cells.get_mut(&r[r.len() - 1]).unwrap().ports.insert(last, e.id.clone());
        for i in 1..r.len() - 1 {
            let back = step_dir(r[i], r[i - 1]).unwrap();
            let fwd = step_dir(r[i], r[i + 1]).unwrap();
            let role = if back == fwd.opposite() { CellRole::ConnectorStraight } else { CellRole::ConnectorCorner };
            let ports = BTreeMap::from([(back, e.id.clone()), (fwd, e.id.clone())]);
            plan.cells.insert(r[i], CellInfo { role, ports, node: None, upstream: Some(back) });
        }
    }
    Ok(plan)
}

/// An eight-node sample graph: AND nodes v5, v6, v8 joined in a triangle of
/// weight-1 edges, protected-OR nodes v1 to v4 and v7.
pub fn sample_graph() -> ConstraintGraph {
    let text = "\
node v1 POR
node v2 POR
node v3 POR
node v4 POR
node v5 AND
node v6 AND
node v7 POR
node v8 AND
edge e56 v5 v6 1
edge e68 v6 v8 1
edge e85 v8 v5 1
edge e15 v1 v5 2
edge e26 v2 v6 2
edge e78 v7 v8 2
edge e13 v1 v3 2
edge e14 v1 v4 2
edge e23 v2 v3 2
edge e27 v2 v7 2
edge e34 v3 v4 2
edge e47 v4 v7 2
por-inputs v1 e13 e14
por-inputs v2 e23 e27
por-inputs v3 e13 e23
por-inputs v4 e14 e47
por-inputs v7 e27 e47
";
    crate::ncl::read_graph(text).expect("sample graph parses").0
}
