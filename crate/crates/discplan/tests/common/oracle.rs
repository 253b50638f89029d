//! Brute-force NCL semantics over explicit orientation bitmasks, written
//! without the library's search so the two can be compared.

use discplan::ncl::{ConstraintGraph, NclState, NodeKind};
use std::collections::BTreeSet;

/// Bit `i` set: edge `i` points toward its `b` endpoint.
pub fn state(g: &ConstraintGraph, m: u32) -> NclState {
    let mut s = NclState::default();
    for (i, e) in g.edges.iter().enumerate() {
        s.orient(&e.id, if m >> i & 1 == 1 { &e.b } else { &e.a });
    }
    s
}

fn toward(g: &ConstraintGraph, m: u32, i: usize) -> &str {
    let e = &g.edges[i];
    if m >> i & 1 == 1 {
        &e.b
    } else {
        &e.a
    }
}

pub fn good(g: &ConstraintGraph, m: u32) -> bool {
    let flow_ok = g.nodes.iter().all(|n| {
        let w: u32 = (0..g.edges.len()).filter(|&i| toward(g, m, i) == n.id).map(|i| g.edges[i].weight as u32).sum();
        w >= g.min_inflow
    });
    let protected = g.por_inputs.iter().all(|(n, (a, b))| {
        let ia = g.edges.iter().position(|e| &e.id == a).unwrap();
        let ib = g.edges.iter().position(|e| &e.id == b).unwrap();
        !(toward(g, m, ia) == n && toward(g, m, ib) == n)
    });
    flow_ok && protected
}

pub fn legal(g: &ConstraintGraph, m: u32) -> BTreeSet<String> {
    (0..g.edges.len()).filter(|&i| good(g, m ^ 1 << i)).map(|i| g.edges[i].id.clone()).collect()
}

/// `reach[s]` holds every mask reachable from valid mask `s`.
pub fn closure(g: &ConstraintGraph) -> Vec<Option<BTreeSet<u32>>> {
    let n = 1u32 << g.edges.len();
    (0..n)
        .map(|s| {
            if !good(g, s) {
                return None;
            }
            let mut seen = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(m) = stack.pop() {
                for i in 0..g.edges.len() {
                    let x = m ^ 1 << i;
                    if good(g, x) && seen.insert(x) {
                        stack.push(x);
                    }
                }
            }
            Some(seen)
        })
        .collect()
}

/// Every designation of K4 meeting the node-type constraints: weight-1
/// edges on a triangle, a 4-cycle or nowhere, and all input pairs for
/// each protected OR.
pub fn k4_designations() -> Vec<ConstraintGraph> {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut out = Vec::new();
    for light in 0u32..64 {
        let deg = |n: usize| (0..6).filter(|&k| light >> k & 1 == 1 && (pairs[k].0 == n || pairs[k].1 == n)).count();
        if (0..4).any(|n| deg(n) != 0 && deg(n) != 2) {
            continue;
        }
        let kinds: Vec<NodeKind> = (0..4).map(|n| if deg(n) == 2 { NodeKind::And } else { NodeKind::ProtectedOr }).collect();
        let mut base = ConstraintGraph::default();
        for (n, k) in kinds.iter().enumerate() {
            base.add_node(&format!("n{n}"), *k);
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            base.add_edge(&format!("e{k}"), &format!("n{a}"), &format!("n{b}"), if light >> k & 1 == 1 { 1 } else { 2 });
        }
        let pors: Vec<usize> = (0..4).filter(|&n| kinds[n] == NodeKind::ProtectedOr).collect();
        // each protected OR leaves out one of its three edges
        for choice in 0..3usize.pow(pors.len() as u32) {
            let mut g = base.clone();
            let mut c = choice;
            for &n in &pors {
                let inc: Vec<usize> = (0..6).filter(|&k| pairs[k].0 == n || pairs[k].1 == n).collect();
                let skip = c % 3;
                c /= 3;
                let ins: Vec<usize> = (0..3).filter(|&j| j != skip).map(|j| inc[j]).collect();
                g.set_por_inputs(&format!("n{n}"), &format!("e{}", ins[0]), &format!("e{}", ins[1]));
            }
            out.push(g);
        }
    }
    out
}

fn replay(g: &ConstraintGraph, w: &discplan::ncl::FlipWitness) -> Result<NclState, String> {
    let mut s = w.start.clone();
    for f in &w.flips {
        if !discplan::ncl::legal_flips(g, &s).map_err(|e| e.to_string())?.contains(f) {
            return Err(format!("witness flips {f} illegally"));
        }
        s = discplan::ncl::flip(g, &s, f).map_err(|e| e.to_string())?;
    }
    Ok(s)
}

/// Compare `legal_flips` and all four `decide` query kinds with brute
/// force on one graph. Returns the number of checks made.
pub fn agree(g: &ConstraintGraph) -> Result<usize, String> {
    use discplan::ncl::{decide, legal_flips, NclQuery};
    let reach = closure(g);
    let valid: Vec<u32> = (0..reach.len() as u32).filter(|&m| reach[m as usize].is_some()).collect();
    let mut checks = 0;
    let ask = |q: &NclQuery, want: bool, goal: &dyn Fn(&NclState) -> bool, sources: &[u32]| -> Result<(), String> {
        let (got, w) = decide(g, q).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("{q:?}: decide says {got}, brute force {want}"));
        }
        if let Some(w) = w {
            if !sources.iter().any(|&m| state(g, m) == w.start) {
                return Err(format!("{q:?}: witness starts outside the source set"));
            }
            if !goal(&replay(g, &w)?) {
                return Err(format!("{q:?}: witness misses the goal"));
            }
        } else if want {
            return Err(format!("{q:?}: no witness"));
        }
        Ok(())
    };
    for &s in &valid {
        let ss = state(g, s);
        if legal_flips(g, &ss).map_err(|e| e.to_string())? != legal(g, s) {
            return Err(format!("legal_flips differ at {ss:?}"));
        }
        checks += 1;
        let r = reach[s as usize].as_ref().unwrap();
        for &t in &valid {
            let ts = state(g, t);
            ask(&NclQuery::StateToState { from: ss.clone(), to: ts.clone() }, r.contains(&t), &|x| *x == ts, &[s])?;
            checks += 1;
        }
        for (i, e) in g.edges.iter().enumerate() {
            for (node, bit) in [(&e.a, 0), (&e.b, 1)] {
                let want = r.iter().any(|&m| m >> i & 1 == bit);
                let q = NclQuery::StateToEdge { from: ss.clone(), edge: e.id.clone(), toward: node.clone() };
                ask(&q, want, &|x| x.toward[&e.id] == *node, &[s])?;
                checks += 1;
            }
        }
    }
    for (i, e) in g.edges.iter().enumerate() {
        for (from_node, bit) in [(&e.a, 0), (&e.b, 1)] {
            let sources: Vec<u32> = valid.iter().copied().filter(|&m| m >> i & 1 == bit).collect();
            let union: BTreeSet<u32> = sources.iter().flat_map(|&m| reach[m as usize].clone().unwrap()).collect();
            for (j, f) in g.edges.iter().enumerate() {
                for (to_node, bj) in [(&f.a, 0), (&f.b, 1)] {
                    let q = NclQuery::EdgeToEdge { from: (e.id.clone(), from_node.clone()), to: (f.id.clone(), to_node.clone()) };
                    ask(&q, union.iter().any(|&m| m >> j & 1 == bj), &|x| x.toward[&f.id] == *to_node, &sources)?;
                    checks += 1;
                }
            }
            for &t in &valid {
                let ts = state(g, t);
                let q = NclQuery::EdgeToState { from: (e.id.clone(), from_node.clone()), to: ts.clone() };
                ask(&q, union.contains(&t), &|x| *x == ts, &sources)?;
                checks += 1;
            }
        }
    }
    Ok(checks)
}
