use super::{ConstraintGraph, NclError, NclState, NodeKind};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

/// Edge-set sources are enumerated explicitly, so they are capped.
const MAX_EDGE_SOURCE_EDGES: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NclQuery {
    StateToState { from: NclState, to: NclState },
    StateToEdge { from: NclState, edge: String, toward: String },
    EdgeToEdge { from: (String, String), to: (String, String) },
    EdgeToState { from: (String, String), to: NclState },
}

/// A flip sequence together with the state it starts from (for edge-set
/// sources the start is one member of the set).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipWitness {
    pub start: NclState,
    pub flips: Vec<String>,
}

/// Bit `i` set means edge `i` points toward its `b` endpoint.
pub(crate) struct Packed<'g> {
    g: &'g ConstraintGraph,
    // per node: (edge index, weight, edge points to this node when bit is set)
    incid: Vec<Vec<(usize, u32, bool)>>,
    // per protected OR: (input edge, bit value meaning "inward") x2
    protect: Vec<[(usize, bool); 2]>,
    order: Vec<usize>,
}

impl<'g> Packed<'g> {
    pub fn new(g: &'g ConstraintGraph) -> Result<Self, NclError> {
        if g.edges.len() > 64 {
            return Err(NclError::TooLarge(g.edges.len()));
        }
        let mut incid = vec![Vec::new(); g.nodes.len()];
        for (i, e) in g.edges.iter().enumerate() {
            let a = g.node_index(&e.a).ok_or_else(|| NclError::UnknownNode(e.a.clone()))?;
            let b = g.node_index(&e.b).ok_or_else(|| NclError::UnknownNode(e.b.clone()))?;
            incid[a].push((i, e.weight as u32, false));
            incid[b].push((i, e.weight as u32, true));
        }
        let mut protect = Vec::new();
        for (node, (x, y)) in &g.por_inputs {
            if g.node(node).map(|n| n.kind) != Some(NodeKind::ProtectedOr) {
                continue;
            }
            let mut pair = [(0usize, false); 2];
            for (k, eid) in [x, y].into_iter().enumerate() {
                let i = g.edge_index(eid).ok_or_else(|| NclError::UnknownEdge(eid.clone()))?;
                pair[k] = (i, g.edges[i].b == *node);
            }
            protect.push(pair);
        }
        let mut order: Vec<usize> = (0..g.edges.len()).collect();
        order.sort_by(|&x, &y| g.edges[x].id.cmp(&g.edges[y].id));
        Ok(Packed { g, incid, protect, order })
    }

    pub fn encode(&self, s: &NclState) -> Result<u64, NclError> {
        let mut m = 0u64;
        for (i, e) in self.g.edges.iter().enumerate() {
            let t = s.toward.get(&e.id).ok_or_else(|| NclError::MissingOrientation(e.id.clone()))?;
            if *t == e.b {
                m |= 1 << i;
            } else if *t != e.a {
                return Err(NclError::NotAnEndpoint { edge: e.id.clone(), node: t.clone() });
            }
        }
        Ok(m)
    }

    pub fn decode(&self, m: u64) -> NclState {
        let mut s = NclState::default();
        for (i, e) in self.g.edges.iter().enumerate() {
            s.orient(&e.id, if m >> i & 1 == 1 { &e.b } else { &e.a });
        }
        s
    }

    fn inflow(&self, m: u64, node: usize) -> u32 {
        self.incid[node].iter().filter(|&&(i, _, to_b)| (m >> i & 1 == 1) == to_b).map(|&(_, w, _)| w).sum()
    }

    pub fn good(&self, m: u64) -> bool {
        (0..self.incid.len()).all(|n| self.inflow(m, n) >= self.g.min_inflow)
            && self.protect.iter().all(|p| !p.iter().all(|&(i, inward)| (m >> i & 1 == 1) == inward))
    }

    /// Legal flips in lexicographic edge-id order.
    pub fn legal(&self, m: u64) -> Vec<usize> {
        self.order.iter().copied().filter(|&i| self.good(m ^ (1 << i))).collect()
    }

    fn edge_pred(&self, edge: &str, toward: &str) -> Result<(usize, bool), NclError> {
        let i = self.g.edge_index(edge).ok_or_else(|| NclError::UnknownEdge(edge.into()))?;
        let e = &self.g.edges[i];
        if toward == e.b {
            Ok((i, true))
        } else if toward == e.a {
            Ok((i, false))
        } else {
            Err(NclError::NotAnEndpoint { edge: edge.into(), node: toward.into() })
        }
    }

    fn edge_set(&self, i: usize, bit: bool) -> Result<Vec<u64>, NclError> {
        let n = self.g.edges.len();
        if n > MAX_EDGE_SOURCE_EDGES {
            return Err(NclError::TooLarge(n));
        }
        Ok((0..1u64 << n).filter(|&m| (m >> i & 1 == 1) == bit && self.good(m)).collect())
    }
}

fn checked(p: &Packed, s: &NclState) -> Result<u64, NclError> {
    let m = p.encode(s)?;
    if !p.good(m) {
        return Err(NclError::BadState(format!("{:?}", s.toward)));
    }
    Ok(m)
}

/// Breadth-first search over the flip graph. Witnesses are minimal and,
/// among minimal ones, the first found when sources are taken in
/// increasing packed order and flips in edge-id order.
pub fn decide(g: &ConstraintGraph, q: &NclQuery) -> Result<(bool, Option<FlipWitness>), NclError> {
    let p = Packed::new(g)?;
    let (sources, goal): (Vec<u64>, Box<dyn Fn(u64) -> bool>) = match q {
        NclQuery::StateToState { from, to } => {
            let t = checked(&p, to)?;
            (vec![checked(&p, from)?], Box::new(move |m| m == t))
        }
        NclQuery::StateToEdge { from, edge, toward } => {
            let (i, bit) = p.edge_pred(edge, toward)?;
            (vec![checked(&p, from)?], Box::new(move |m| (m >> i & 1 == 1) == bit))
        }
        NclQuery::EdgeToEdge { from, to } => {
            let (i, bit) = p.edge_pred(&from.0, &from.1)?;
            let (j, bj) = p.edge_pred(&to.0, &to.1)?;
            (p.edge_set(i, bit)?, Box::new(move |m| (m >> j & 1 == 1) == bj))
        }
        NclQuery::EdgeToState { from, to } => {
            let (i, bit) = p.edge_pred(&from.0, &from.1)?;
            let t = checked(&p, to)?;
            (p.edge_set(i, bit)?, Box::new(move |m| m == t))
        }
    };
    let mut parent: HashMap<u64, Option<(u64, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for &s in &sources {
        if parent.insert(s, None).is_none() {
            queue.push_back(s);
        }
    }
    while let Some(m) = queue.pop_front() {
        if goal(m) {
            let mut flips = Vec::new();
            let mut cur = m;
            while let Some(Some((prev, e))) = parent.get(&cur) {
                flips.push(g.edges[*e].id.clone());
                cur = *prev;
            }
            flips.reverse();
            return Ok((true, Some(FlipWitness { start: p.decode(cur), flips })));
        }
        for i in p.legal(m) {
            let n = m ^ (1 << i);
            if let std::collections::hash_map::Entry::Vacant(v) = parent.entry(n) {
                v.insert(Some((m, i)));
                queue.push_back(n);
            }
        }
    }
    Ok((false, None))
}

/// Every state reachable from `from`, including itself, in BFS order.
pub fn reachable_set(g: &ConstraintGraph, from: &NclState) -> Result<Vec<NclState>, NclError> {
    let p = Packed::new(g)?;
    let start = checked(&p, from)?;
    let mut seen = std::collections::HashSet::from([start]);
    let mut order = vec![start];
    let mut i = 0;
    while i < order.len() {
        let m = order[i];
        i += 1;
        for e in p.legal(m) {
            let n = m ^ (1 << e);
            if seen.insert(n) {
                order.push(n);
            }
        }
    }
    Ok(order.into_iter().map(|m| p.decode(m)).collect())
}

/// The valid, protected-safe orientation with the smallest packed code,
/// if any. Enumerates all orientations, so only for small graphs.
pub fn first_valid_state(g: &ConstraintGraph) -> Result<Option<NclState>, NclError> {
    let p = Packed::new(g)?;
    let n = g.edges.len();
    if n > MAX_EDGE_SOURCE_EDGES {
        return Err(NclError::TooLarge(n));
    }
    Ok((0..1u64 << n).find(|&m| p.good(m)).map(|m| p.decode(m)))
}
