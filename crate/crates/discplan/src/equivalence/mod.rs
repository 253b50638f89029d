//! Abstract cross-check of the reduction: gadget contracts wired into a
//! network of shared edge robots, searched at terminal granularity and
//! compared with the NCL flip search.

mod report;

pub use report::{equivalence_report, EquivalenceReport, ReportOptions};

use crate::cspace::CspaceError;
use crate::layout::{neighbor, Cell, CellPlan, CellRole};
use crate::ncl::{ConstraintGraph, NclError, NclState, NodeKind};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ContractKind {
    And,
    ProtectedOr,
    Connector,
}

/// One cell's contract. Ports are indices into the network's variables,
/// in the order `[out, in1, in2]` for nodes and `[upstream, downstream]`
/// for connectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetContract {
    pub cell: Cell,
    pub kind: ContractKind,
    pub node: Option<String>,
    pub ports: Vec<usize>,
    /// Deliberately broken guard: `out` may enter regardless of inputs.
    pub free_out: bool,
}

/// An edge robot shared by two cells. Its bit is set when the robot sits
/// in `cells[1]`, the cell nearer the edge's second endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortVar {
    pub edge: String,
    pub cells: [usize; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractNetwork {
    pub contracts: Vec<GadgetContract>,
    pub vars: Vec<PortVar>,
    /// Variables of each edge, from its first endpoint to its second.
    pub chains: BTreeMap<String, Vec<usize>>,
}

/// Bit `j` set: variable `j`'s robot sits in its second cell.
pub type Assignment = u128;

#[derive(Debug, Error, PartialEq)]
pub enum NetworkError {
    #[error("plan does not match graph: {0}")]
    Plan(String),
    #[error("network has {0} port variables; at most 128 are supported")]
    TooLarge(usize),
    #[error("search exceeded {0} assignments")]
    Budget(usize),
    #[error("edge `{0}` is in transit")]
    InTransit(String),
    #[error(transparent)]
    Ncl(#[from] NclError),
    #[error(transparent)]
    Gadget(#[from] CspaceError),
}

/// Port order `[out, in1, in2]` of a node: the AND's heavy edge or the
/// protected OR's unguarded edge comes first.
fn node_ports(g: &ConstraintGraph, node: &str) -> Result<Vec<String>, NetworkError> {
    let kind = g.node(node).ok_or_else(|| NetworkError::Plan(format!("unknown node {node}")))?.kind;
    let inc = g.incident(node);
    let (ins, outs): (Vec<&&crate::ncl::Edge>, Vec<_>) = match kind {
        NodeKind::And => inc.iter().partition(|e| e.weight == 1),
        NodeKind::ProtectedOr => inc.iter().partition(|e| g.is_por_input(node, &e.id)),
    };
    if ins.len() != 2 || outs.len() != 1 {
        return Err(NetworkError::Plan(format!("node {node} has no out/in1/in2 split")));
    }
    Ok(vec![outs[0].id.clone(), ins[0].id.clone(), ins[1].id.clone()])
}

/// One contract per occupied cell and one variable per opening.
pub fn build_network(g: &ConstraintGraph, plan: &CellPlan) -> Result<ContractNetwork, NetworkError> {
    let index: BTreeMap<Cell, usize> = plan.cells.keys().enumerate().map(|(i, c)| (*c, i)).collect();
    let home: BTreeMap<&str, Cell> =
        plan.cells.iter().filter_map(|(c, info)| info.node.as_deref().map(|n| (n, *c))).collect();
    let mut net = ContractNetwork::default();
    // port slot (cell, edge) -> variables touching it, in chain order
    let mut touching: HashMap<(usize, String), Vec<usize>> = HashMap::new();
    for e in &g.edges {
        let start = *home.get(e.a.as_str()).ok_or_else(|| NetworkError::Plan(format!("node {} has no cell", e.a)))?;
        let end = *home.get(e.b.as_str()).ok_or_else(|| NetworkError::Plan(format!("node {} has no cell", e.b)))?;
        let mut chain = Vec::new();
        let mut cur = start;
        let mut from = None;
        loop {
            let info = &plan.cells[&cur];
            let d = info
                .ports
                .iter()
                .find(|(d, id)| **id == e.id && Some(**d) != from)
                .map(|(d, _)| *d)
                .ok_or_else(|| NetworkError::Plan(format!("edge {} stops at {cur:?}", e.id)))?;
            let next = neighbor(cur, d);
            if !plan.cells.get(&next).is_some_and(|i| i.ports.get(&d.opposite()) == Some(&e.id)) {
                return Err(NetworkError::Plan(format!("edge {} leaves {cur:?} toward {d} into nothing", e.id)));
            }
            let v = net.vars.len();
            net.vars.push(PortVar { edge: e.id.clone(), cells: [index[&cur], index[&next]] });
            touching.entry((index[&cur], e.id.clone())).or_default().push(v);
            touching.entry((index[&next], e.id.clone())).or_default().push(v);
            chain.push(v);
            if next == end {
                break;
            }
            if plan.cells[&next].node.is_some() || chain.len() > plan.cells.len() {
                return Err(NetworkError::Plan(format!("edge {} runs into another node", e.id)));
            }
            from = Some(d.opposite());
            cur = next;
        }
        net.chains.insert(e.id.clone(), chain);
    }
    for (cell, info) in &plan.cells {
        let ci = index[cell];
        let (kind, ports) = match (&info.role, &info.node) {
            (CellRole::AndGadget | CellRole::PorGadget, Some(n)) => {
                let kind = if info.role == CellRole::AndGadget { ContractKind::And } else { ContractKind::ProtectedOr };
                let ids = node_ports(g, n)?;
                (kind, ids.iter().map(|id| touching[&(ci, id.clone())][0]).collect())
            }
            (CellRole::ConnectorCorner | CellRole::ConnectorStraight, None) => {
                let id = info.ports.values().next().ok_or_else(|| NetworkError::Plan(format!("connector {cell:?} has no ports")))?;
                let vs = touching[&(ci, id.clone())].clone();
                if vs.len() != 2 {
                    return Err(NetworkError::Plan(format!("connector {cell:?} touches {} variables", vs.len())));
                }
                (ContractKind::Connector, vs)
            }
            _ => continue,
        };
        net.contracts.push(GadgetContract { cell: *cell, kind, node: info.node.clone(), ports, free_out: false });
    }
    // variables refer to contract positions, not plan positions
    let pos: BTreeMap<usize, usize> = net.contracts.iter().enumerate().map(|(k, c)| (index[&c.cell], k)).collect();
    for v in &mut net.vars {
        v.cells = [pos[&v.cells[0]], pos[&v.cells[1]]];
    }
    Ok(net)
}

impl ContractNetwork {
    /// Drop every connector, joining each edge's chain into one variable
    /// between its two node cells.
    pub fn collapsed(&self) -> ContractNetwork {
        let keep: Vec<usize> = (0..self.contracts.len()).filter(|&k| self.contracts[k].kind != ContractKind::Connector).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut out = ContractNetwork { contracts: keep.iter().map(|&k| self.contracts[k].clone()).collect(), ..Default::default() };
        let mut renum = BTreeMap::new();
        for (edge, chain) in &self.chains {
            let (first, last) = (chain[0], chain[chain.len() - 1]);
            let v = out.vars.len();
            out.vars.push(PortVar { edge: edge.clone(), cells: [pos[&self.vars[first].cells[0]], pos[&self.vars[last].cells[1]]] });
            renum.insert(first, v);
            renum.insert(last, v);
            out.chains.insert(edge.clone(), vec![v]);
        }
        for c in &mut out.contracts {
            for p in &mut c.ports {
                *p = renum[p];
            }
        }
        out
    }

    /// Break every AND contract so its out port is unguarded.
    pub fn corrupt_and_out(&mut self) {
        for c in &mut self.contracts {
            if c.kind == ContractKind::And {
                c.free_out = true;
            }
        }
    }

    fn check_size(&self) -> Result<(), NetworkError> {
        if self.vars.len() > 128 {
            return Err(NetworkError::TooLarge(self.vars.len()));
        }
        Ok(())
    }

    /// Whether contract `k`'s port `p` holds its robot inside the cell.
    fn inside(&self, a: Assignment, k: usize, p: usize) -> bool {
        let v = self.contracts[k].ports[p];
        let side = usize::from(self.vars[v].cells[1] == k);
        (a >> v & 1 == 1) == (side == 1)
    }

    /// Guard for port `p` of contract `k` changing to `to_inside`.
    fn allows(&self, a: Assignment, k: usize, p: usize, to_inside: bool) -> bool {
        let c = &self.contracts[k];
        let ins = |q: usize| self.inside(a, k, q);
        match (c.kind, p, to_inside) {
            (ContractKind::And, 0, true) => c.free_out || (!ins(1) && !ins(2)),
            (ContractKind::And, _, true) => !ins(0),
            (ContractKind::ProtectedOr, 0, true) => !ins(1) || !ins(2),
            (ContractKind::ProtectedOr, _, true) => !ins(0),
            // protection: the two inputs never both point in
            (ContractKind::ProtectedOr, q @ (1 | 2), false) => ins(3 - q),
            (ContractKind::Connector, q, true) => !ins(1 - q),
            _ => true,
        }
    }

    /// Variables that may move next, in index order. At most one edge is
    /// ever split across its connectors: an edge stuck half-flipped would
    /// point away from both ends and sidestep protected-OR guards.
    pub fn moves(&self, a: Assignment) -> Vec<usize> {
        let masks: Vec<Assignment> = self.chains.values().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let split = |m: Assignment| a & m != 0 && a & m != m;
        let busy: Vec<usize> = (0..masks.len()).filter(|&i| split(masks[i])).collect();
        (0..self.vars.len())
            .filter(|&v| {
                if busy.iter().any(|&i| masks[i] >> v & 1 == 0) {
                    return false;
                }
                let into = self.vars[v].cells[usize::from(a >> v & 1 == 0)];
                let from = self.vars[v].cells[usize::from(a >> v & 1 == 1)];
                let port = |k: usize| self.contracts[k].ports.iter().position(|&x| x == v).expect("variable is a port");
                self.allows(a, into, port(into), true) && self.allows(a, from, port(from), false)
            })
            .collect()
    }

    /// Robots of every edge at the end matching the orientation: an edge
    /// toward its second endpoint keeps its robots on the first side.
    pub fn encode(&self, g: &ConstraintGraph, s: &NclState) -> Result<Assignment, NetworkError> {
        self.check_size()?;
        let mut a: Assignment = 0;
        for e in &g.edges {
            let t = s.toward.get(&e.id).ok_or_else(|| NclError::MissingOrientation(e.id.clone()))?;
            if *t == e.a {
                for &v in &self.chains[&e.id] {
                    a |= 1 << v;
                }
            } else if *t != e.b {
                return Err(NclError::NotAnEndpoint { edge: e.id.clone(), node: t.clone() }.into());
            }
        }
        Ok(a)
    }

    /// Inverse of `encode`; fails while an edge's chain is split.
    pub fn decode(&self, g: &ConstraintGraph, a: Assignment) -> Result<NclState, NetworkError> {
        let mut s = NclState::default();
        for e in &g.edges {
            let bits: Vec<bool> = self.chains[&e.id].iter().map(|&v| a >> v & 1 == 1).collect();
            if bits.iter().all(|&b| b) {
                s.orient(&e.id, &e.a);
            } else if bits.iter().all(|&b| !b) {
                s.orient(&e.id, &e.b);
            } else {
                return Err(NetworkError::InTransit(e.id.clone()));
            }
        }
        Ok(s)
    }
}

/// Breadth-first search over assignments, one edge robot moving per step.
/// Returns whether `goal` is met and the variables moved along the way.
pub fn abstract_reachable(
    net: &ContractNetwork,
    initial: Assignment,
    goal: impl Fn(Assignment) -> bool,
    budget: usize,
) -> Result<(bool, Vec<usize>), NetworkError> {
    net.check_size()?;
    let mut parent: HashMap<Assignment, (Assignment, usize)> = HashMap::from([(initial, (initial, usize::MAX))]);
    let mut queue = VecDeque::from([initial]);
    while let Some(a) = queue.pop_front() {
        if goal(a) {
            let mut moves = Vec::new();
            let mut cur = a;
            while parent[&cur].1 != usize::MAX {
                moves.push(parent[&cur].1);
                cur = parent[&cur].0;
            }
            moves.reverse();
            return Ok((true, moves));
        }
        for v in net.moves(a) {
            let n = a ^ (1 << v);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(n) {
                e.insert((a, v));
                if parent.len() > budget {
                    return Err(NetworkError::Budget(budget));
                }
                queue.push_back(n);
            }
        }
    }
    Ok((false, Vec::new()))
}

/// Every assignment reachable from `initial` whose chains are all whole,
/// decoded to NCL states and sorted.
pub fn terminal_states(g: &ConstraintGraph, net: &ContractNetwork, initial: Assignment, budget: usize) -> Result<Vec<NclState>, NetworkError> {
    net.check_size()?;
    let mut seen = std::collections::HashSet::from([initial]);
    let mut queue = VecDeque::from([initial]);
    let mut out = Vec::new();
    while let Some(a) = queue.pop_front() {
        if let Ok(s) = net.decode(g, a) {
            out.push(s);
        }
        for v in net.moves(a) {
            let n = a ^ (1 << v);
            if seen.insert(n) {
                if seen.len() > budget {
                    return Err(NetworkError::Budget(budget));
                }
                queue.push_back(n);
            }
        }
    }
    out.sort();
    Ok(out)
}
