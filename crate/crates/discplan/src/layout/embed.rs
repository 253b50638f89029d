use super::{neighbor, Cell, GridLayout, LayoutError};
use crate::gadget::Dir;
use crate::ncl::{is_planar, ConstraintGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, VecDeque};

const ATTEMPTS: usize = 64;
const CANDIDATES: usize = 10;

/// Whether `g` is the complete graph on four nodes, the one degree-3
/// planar graph without a drawing of at most one bend per edge.
pub fn is_k4(g: &ConstraintGraph) -> bool {
    if g.nodes.len() != 4 || g.edges.len() != 6 {
        return false;
    }
    let mut pairs: Vec<(&str, &str)> =
        g.edges.iter().map(|e| if e.a < e.b { (e.a.as_str(), e.b.as_str()) } else { (e.b.as_str(), e.a.as_str()) }).collect();
    pairs.sort();
    pairs.dedup();
    pairs.len() == 6 && pairs.iter().all(|(a, b)| a != b)
}

struct Search<'g> {
    g: &'g ConstraintGraph,
    /// (edge index, other node index) per node.
    adj: Vec<Vec<(usize, usize)>>,
    order: Vec<usize>,
    pos: Vec<Option<Cell>>,
    occ: HashMap<Cell, ()>,
    routes: Vec<Option<Vec<Cell>>>,
    size: i32,
    rng: ChaCha8Rng,
    budget: usize,
    two_bends_left: usize,
}

fn line(p: Cell, q: Cell) -> Vec<Cell> {
    let (dx, dy) = ((q.0 - p.0).signum(), (q.1 - p.1).signum());
    let mut out = vec![p];
    let mut c = p;
    while c != q {
        c = (c.0 + dx, c.1 + dy);
        out.push(c);
    }
    out
}

/// Polyline through `pts`, as a cell sequence.
fn path(pts: &[Cell]) -> Vec<Cell> {
    let mut out = vec![pts[0]];
    for w in pts.windows(2) {
        out.extend(line(w[0], w[1]).into_iter().skip(1));
    }
    out.dedup();
    out
}

fn route_options(p: Cell, q: Cell, two: bool) -> Vec<(Vec<Cell>, bool)> {
    let mut out = Vec::new();
    if p.0 == q.0 || p.1 == q.1 {
        out.push((path(&[p, q]), false));
    } else {
        out.push((path(&[p, (q.0, p.1), q]), false));
        out.push((path(&[p, (p.0, q.1), q]), false));
    }
    if two {
        let (x0, x1) = (p.0.min(q.0) - 2, p.0.max(q.0) + 2);
        let (y0, y1) = (p.1.min(q.1) - 2, p.1.max(q.1) + 2);
        for m in x0..=x1 {
            if m != p.0 && m != q.0 {
                out.push((path(&[p, (m, p.1), (m, q.1), q]), true));
            }
        }
        for m in y0..=y1 {
            if m != p.1 && m != q.1 {
                out.push((path(&[p, (p.0, m), (q.0, m), q]), true));
            }
        }
    }
    out
}

impl<'g> Search<'g> {
    fn free(&self, c: Cell) -> bool {
        !self.occ.contains_key(&c)
    }

    fn free_sides(&self, c: Cell) -> usize {
        Dir::ALL.iter().filter(|&&d| self.free(neighbor(c, d))).count()
    }

    /// Every placed node still has room for its unrouted edges.
    fn room_left(&self) -> bool {
        (0..self.pos.len()).all(|u| match self.pos[u] {
            Some(c) => {
                let open = self.adj[u].iter().filter(|(e, _)| self.routes[*e].is_none()).count();
                self.free_sides(c) >= open
            }
            None => true,
        })
    }

    fn candidates(&mut self, u: usize) -> Vec<Cell> {
        let placed: Vec<Cell> = self.adj[u].iter().filter_map(|&(_, w)| self.pos[w]).collect();
        let n = self.size;
        let mut cells: Vec<(f64, Cell)> = Vec::new();
        if placed.is_empty() {
            for _ in 0..4 * CANDIDATES {
                let c = (self.rng.gen_range(0..n), self.rng.gen_range(0..n));
                if self.free(c) && self.free_sides(c) >= 3 {
                    cells.push((self.rng.gen::<f64>(), c));
                }
            }
        } else {
            for x in 0..n {
                for y in 0..n {
                    let c = (x, y);
                    if !self.free(c) || self.free_sides(c) < 3 - placed.len().min(3) {
                        continue;
                    }
                    let d: i32 = placed.iter().map(|p| (p.0 - x).abs() + (p.1 - y).abs()).sum();
                    cells.push((d as f64 + 3.0 * self.rng.gen::<f64>(), c));
                }
            }
        }
        cells.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        cells.dedup_by_key(|c| c.1);
        cells.into_iter().take(CANDIDATES).map(|c| c.1).collect()
    }

    fn place(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let u = self.order[k];
        for c in self.candidates(u) {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            self.pos[u] = Some(c);
            self.occ.insert(c, ());
            let edges: Vec<(usize, usize)> = self.adj[u].iter().copied().filter(|&(_, w)| self.pos[w].is_some() && w != u).collect();
            if self.route(k, u, &edges, 0) {
                return true;
            }
            self.occ.remove(&c);
            self.pos[u] = None;
        }
        false
    }

    fn route(&mut self, k: usize, u: usize, edges: &[(usize, usize)], i: usize) -> bool {
        if i == edges.len() {
            return self.room_left() && self.place(k + 1);
        }
        let (e, w) = edges[i];
        let (p, q) = (self.pos[u].unwrap(), self.pos[w].unwrap());
        let mut opts = route_options(p, q, self.two_bends_left > 0);
        opts.shuffle(&mut self.rng);
        opts.sort_by_key(|(r, two)| (*two, r.len()));
        for (r, two) in opts {
            if self.budget == 0 {
                return false;
            }
            let inner = &r[1..r.len() - 1];
            if !inner.iter().all(|&c| self.free(c)) || r.len() < 2 {
                continue;
            }
            self.budget -= 1;
            for &c in inner {
                self.occ.insert(c, ());
            }
            let stored = if self.g.edges[e].a == self.g.nodes[u].id { r.clone() } else { r.iter().rev().copied().collect() };
            self.routes[e] = Some(stored);
            self.two_bends_left -= usize::from(two);
            if self.route(k, u, edges, i + 1) {
                return true;
            }
            self.two_bends_left += usize::from(two);
            self.routes[e] = None;
            for c in inner {
                self.occ.remove(c);
            }
        }
        false
    }
}

/// Orthogonal drawing with at most one bend per edge (K4 gets one edge
/// with two). Randomized backtracking with restarts; the same seed gives
/// the same drawing.
pub fn embed(g: &ConstraintGraph, seed: u64) -> Result<GridLayout, LayoutError> {
    if is_planar(g) == Some(false) {
        return Err(LayoutError::NonPlanar);
    }
    let n = g.nodes.len();
    let mut adj = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        let (a, b) = (g.node_index(&e.a).unwrap(), g.node_index(&e.b).unwrap());
        adj[a].push((i, b));
        adj[b].push((i, a));
    }
    let base = 2 * (n as f64).sqrt().ceil() as i32 + 4;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(attempt as u64));
        let order = bfs_order(&adj, &mut rng);
        let mut s = Search {
            g,
            adj: adj.clone(),
            order,
            pos: vec![None; n],
            occ: HashMap::new(),
            routes: vec![None; g.edges.len()],
            size: base + 2 * (attempt / 8) as i32,
            rng,
            budget: 20_000,
            two_bends_left: usize::from(is_k4(g)),
        };
        if s.place(0) {
            let mut l = GridLayout::default();
            for (i, nd) in g.nodes.iter().enumerate() {
                l.nodes.insert(nd.id.clone(), s.pos[i].unwrap());
            }
            for (i, e) in g.edges.iter().enumerate() {
                l.routes.insert(e.id.clone(), s.routes[i].clone().unwrap());
            }
            return Ok(l.normalized());
        }
    }
    Err(LayoutError::NotFound(ATTEMPTS))
}

fn bfs_order(adj: &[Vec<(usize, usize)>], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots: Vec<usize> = (0..n).collect();
    roots.shuffle(rng);
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut q = VecDeque::from([r]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            let mut nb: Vec<usize> = adj[u].iter().map(|&(_, w)| w).collect();
            nb.shuffle(rng);
            for w in nb {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}
