//! Planarity by exhaustive rotation systems.
//!
//! A connected graph is planar iff some rotation system traces
//! `E - V + 2` faces. Degree-3 vertices have two cyclic orders, so the
//! search is `2^(n-1)` per component; we stop certifying above
//! `MAX_BRANCHING` branching vertices.

use super::ConstraintGraph;
use std::collections::BTreeMap;

const MAX_BRANCHING: usize = 22;

/// `Some(planar?)`, or `None` when a component is too large to certify.
pub fn is_planar(g: &ConstraintGraph) -> Option<bool> {
    let index: BTreeMap<&str, usize> = g.nodes.iter().enumerate().map(|(i, n)| (n.id.as_str(), i)).collect();
    let n = g.nodes.len();
    let mut adj = vec![Vec::new(); n];
    for e in &g.edges {
        let (Some(&a), Some(&b)) = (index.get(e.a.as_str()), index.get(e.b.as_str())) else {
            continue;
        };
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    for start in 0..n {
        if comp[start] != usize::MAX || adj[start].is_empty() {
            continue;
        }
        let mut members = vec![start];
        comp[start] = start;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = start;
                    members.push(w);
                }
            }
        }
        match component_planar(&adj, &members) {
            Some(true) => {}
            other => return other,
        }
    }
    Some(true)
}

fn component_planar(adj: &[Vec<usize>], members: &[usize]) -> Option<bool> {
    let v = members.len();
    let e: usize = members.iter().map(|&m| adj[m].len()).sum::<usize>() / 2;
    let want = e + 2 - v;
    // vertices of degree <= 2 have a single cyclic order
    let branching: Vec<usize> = members.iter().copied().filter(|&m| adj[m].len() >= 3).collect();
    if branching.iter().any(|&m| adj[m].len() > 3) {
        // degree > 3 never passes validation; refuse rather than enumerate
        return None;
    }
    if branching.len() > MAX_BRANCHING {
        return None;
    }
    let free = branching.len().saturating_sub(1);
    for bits in 0u64..(1u64 << free) {
        let mut rot: Vec<Vec<usize>> = adj.to_vec();
        for (k, &m) in branching.iter().enumerate().skip(1) {
            if bits >> (k - 1) & 1 == 1 {
                rot[m].swap(1, 2);
            }
        }
        if count_faces(&rot, members) == want {
            return Some(true);
        }
    }
    Some(false)
}

fn count_faces(rot: &[Vec<usize>], members: &[usize]) -> usize {
    let mut seen: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut faces = 0;
    for &u in members {
        for &w in &rot[u] {
            if seen.contains_key(&(u, w)) {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (u, w);
            while seen.insert((a, b), true).is_none() {
                let r = &rot[b];
                let pos = r.iter().position(|&x| x == a).unwrap();
                let next = r[(pos + 1) % r.len()];
                a = b;
                b = next;
            }
        }
    }
    faces
}
