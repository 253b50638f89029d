//! Nondeterministic constraint logic: graphs, states, flips and the four
//! reachability questions.

mod format;
mod planar;
mod search;

pub use format::{read_graph, write_graph, ParseError};
pub use planar::is_planar;
pub use search::{decide, first_valid_state, reachable_set, FlipWitness, NclQuery};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    And,
    ProtectedOr,
}

impl NodeKind {
    pub fn keyword(self) -> &'static str {
        match self {
            NodeKind::And => "AND",
            NodeKind::ProtectedOr => "POR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub a: String,
    pub b: String,
    pub weight: u8,
}

impl Edge {
    pub fn other(&self, node: &str) -> &str {
        if self.a == node {
            &self.b
        } else {
            &self.a
        }
    }
}

/// The NCL machine. Declaration order of nodes and edges is kept so that
/// the text format round-trips byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub por_inputs: BTreeMap<String, (String, String)>,
    pub min_inflow: u32,
}

impl Default for ConstraintGraph {
    fn default() -> Self {
        ConstraintGraph { nodes: vec![], edges: vec![], por_inputs: BTreeMap::new(), min_inflow: 2 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NclError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{edge}` has no endpoint `{node}`")]
    NotAnEndpoint { edge: String, node: String },
    #[error("state does not orient edge `{0}`")]
    MissingOrientation(String),
    #[error("state is not valid and protected-safe: {0}")]
    BadState(String),
    #[error("graph has {0} edges; search supports at most 64")]
    TooLarge(usize),
}

/// Orientation of every edge, as the node each edge points toward.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NclState {
    pub toward: BTreeMap<String, String>,
}

impl NclState {
    pub fn orient(&mut self, edge: &str, node: &str) {
        self.toward.insert(edge.to_string(), node.to_string());
    }
}

/// One broken invariant, naming the culprit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateId(String),
    UnknownEndpoint { edge: String, node: String },
    BadWeight { edge: String, weight: u8 },
    SelfLoop(String),
    ParallelEdges(String, String),
    Degree { node: String, degree: usize },
    AndWeights { node: String, profile: Vec<u8> },
    PorWeights { node: String, profile: Vec<u8> },
    PorInputs { node: String, reason: String },
    NonPlanar,
    PlanarityUnchecked { nodes: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId(id) => write!(f, "duplicate id `{id}`"),
            Violation::UnknownEndpoint { edge, node } => {
                write!(f, "edge `{edge}` references unknown node `{node}`")
            }
            Violation::BadWeight { edge, weight } => write!(f, "edge `{edge}` has weight {weight}, expected 1 or 2"),
            Violation::SelfLoop(e) => write!(f, "edge `{e}` is a self-loop"),
            Violation::ParallelEdges(a, b) => write!(f, "edges `{a}` and `{b}` are parallel"),
            Violation::Degree { node, degree } => write!(f, "node `{node}` has degree {degree}, expected 3"),
            Violation::AndWeights { node, profile } => {
                write!(f, "AND node `{node}` has weight profile {profile:?}, expected [1, 1, 2]")
            }
            Violation::PorWeights { node, profile } => {
                write!(f, "POR node `{node}` has weight profile {profile:?}, expected [2, 2, 2]")
            }
            Violation::PorInputs { node, reason } => write!(f, "POR node `{node}`: {reason}"),
            Violation::NonPlanar => write!(f, "graph is not planar"),
            Violation::PlanarityUnchecked { nodes } => {
                write!(f, "planarity not certified: component with {nodes} nodes exceeds the search limit")
            }
        }
    }
}

impl ConstraintGraph {
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    /// Edges incident to `node`, in declaration order.
    pub fn incident(&self, node: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.a == node || e.b == node).collect()
    }

    pub fn add_node(&mut self, id: &str, kind: NodeKind) {
        self.nodes.push(Node { id: id.into(), kind });
    }

    pub fn add_edge(&mut self, id: &str, a: &str, b: &str, weight: u8) {
        self.edges.push(Edge { id: id.into(), a: a.into(), b: b.into(), weight });
    }

    pub fn set_por_inputs(&mut self, node: &str, e1: &str, e2: &str) {
        self.por_inputs.insert(node.into(), (e1.into(), e2.into()));
    }

    /// Whether `edge` is a designated input of the protected-OR `node`.
    pub fn is_por_input(&self, node: &str, edge: &str) -> bool {
        self.por_inputs.get(node).map(|(a, b)| a == edge || b == edge).unwrap_or(false)
    }
}

pub fn validate_graph(g: &ConstraintGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for n in &g.nodes {
        if !seen.insert(("n", n.id.as_str())) {
            out.push(Violation::DuplicateId(n.id.clone()));
        }
    }
    for e in &g.edges {
        if !seen.insert(("e", e.id.as_str())) {
            out.push(Violation::DuplicateId(e.id.clone()));
        }
    }
    let mut structural_ok = true;
    let mut pairs: BTreeMap<(String, String), String> = BTreeMap::new();
    for e in &g.edges {
        for end in [&e.a, &e.b] {
            if g.node(end).is_none() {
                out.push(Violation::UnknownEndpoint { edge: e.id.clone(), node: end.clone() });
                structural_ok = false;
            }
        }
        if e.weight != 1 && e.weight != 2 {
            out.push(Violation::BadWeight { edge: e.id.clone(), weight: e.weight });
        }
        if e.a == e.b {
            out.push(Violation::SelfLoop(e.id.clone()));
            structural_ok = false;
            continue;
        }
        let key = if e.a < e.b { (e.a.clone(), e.b.clone()) } else { (e.b.clone(), e.a.clone()) };
        if let Some(prev) = pairs.get(&key) {
            out.push(Violation::ParallelEdges(prev.clone(), e.id.clone()));
            structural_ok = false;
        } else {
            pairs.insert(key, e.id.clone());
        }
    }
    for n in &g.nodes {
        let inc = g.incident(&n.id);
        if inc.len() != 3 {
            out.push(Violation::Degree { node: n.id.clone(), degree: inc.len() });
            structural_ok = false;
            continue;
        }
        let mut profile: Vec<u8> = inc.iter().map(|e| e.weight).collect();
        profile.sort_unstable();
        match n.kind {
            NodeKind::And => {
                if profile != [1, 1, 2] {
                    out.push(Violation::AndWeights { node: n.id.clone(), profile });
                }
            }
            NodeKind::ProtectedOr => {
                if profile != [2, 2, 2] {
                    out.push(Violation::PorWeights { node: n.id.clone(), profile });
                }
                match g.por_inputs.get(&n.id) {
                    None => out.push(Violation::PorInputs { node: n.id.clone(), reason: "no input designation".into() }),
                    Some((a, b)) => {
                        let ids: Vec<&str> = inc.iter().map(|e| e.id.as_str()).collect();
                        if a == b {
                            out.push(Violation::PorInputs { node: n.id.clone(), reason: "inputs must be distinct".into() });
                        } else if !ids.contains(&a.as_str()) || !ids.contains(&b.as_str()) {
                            out.push(Violation::PorInputs {
                                node: n.id.clone(),
                                reason: format!("inputs `{a}`, `{b}` are not both incident"),
                            });
                        }
                    }
                }
            }
        }
    }
    for node in g.por_inputs.keys() {
        match g.node(node) {
            Some(n) if n.kind == NodeKind::ProtectedOr => {}
            _ => out.push(Violation::PorInputs { node: node.clone(), reason: "designation on a non-POR node".into() }),
        }
    }
    if structural_ok {
        match planar::is_planar(g) {
            Some(true) => {}
            Some(false) => out.push(Violation::NonPlanar),
            None => out.push(Violation::PlanarityUnchecked { nodes: g.nodes.len() }),
        }
    }
    out
}

fn check_covers(g: &ConstraintGraph, s: &NclState) -> Result<(), NclError> {
    for e in &g.edges {
        match s.toward.get(&e.id) {
            None => return Err(NclError::MissingOrientation(e.id.clone())),
            Some(t) if *t != e.a && *t != e.b => {
                return Err(NclError::NotAnEndpoint { edge: e.id.clone(), node: t.clone() })
            }
            _ => {}
        }
    }
    Ok(())
}

pub fn in_flow(g: &ConstraintGraph, s: &NclState, node: &str) -> Result<u32, NclError> {
    if g.node(node).is_none() {
        return Err(NclError::UnknownNode(node.into()));
    }
    check_covers(g, s)?;
    Ok(g.incident(node)
        .iter()
        .filter(|e| s.toward.get(&e.id).map(|t| t == node).unwrap_or(false))
        .map(|e| e.weight as u32)
        .sum())
}

pub fn is_valid_state(g: &ConstraintGraph, s: &NclState) -> Result<bool, NclError> {
    check_covers(g, s)?;
    for n in &g.nodes {
        if in_flow(g, s, &n.id)? < g.min_inflow {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_protected_safe(g: &ConstraintGraph, s: &NclState) -> Result<bool, NclError> {
    check_covers(g, s)?;
    for (node, (a, b)) in &g.por_inputs {
        let ina = s.toward.get(a).map(|t| t == node).unwrap_or(false);
        let inb = s.toward.get(b).map(|t| t == node).unwrap_or(false);
        if ina && inb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edges whose reversal keeps the state valid and protected-safe, sorted
/// by edge id.
pub fn legal_flips(g: &ConstraintGraph, s: &NclState) -> Result<BTreeSet<String>, NclError> {
    let packed = search::Packed::new(g)?;
    let mask = packed.encode(s)?;
    Ok(packed.legal(mask).into_iter().map(|i| g.edges[i].id.clone()).collect())
}

/// Flip one edge, returning the new state.
pub fn flip(g: &ConstraintGraph, s: &NclState, edge: &str) -> Result<NclState, NclError> {
    let e = g.edge(edge).ok_or_else(|| NclError::UnknownEdge(edge.into()))?;
    let cur = s.toward.get(edge).ok_or_else(|| NclError::MissingOrientation(edge.into()))?;
    let mut next = s.clone();
    next.orient(edge, e.other(cur));
    Ok(next)
}
