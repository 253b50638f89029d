use super::domains::Lattice;
use crate::geom::Vec2;
use crate::TOL;
use std::collections::{HashMap, VecDeque};
use std::rc::Rc;
use thiserror::Error;

/// How a robot takes part in the search.
#[derive(Clone, Debug)]
pub enum Body {
    /// Moves one lattice step per transition; its position is state.
    Stepped(Lattice),
    /// Free to roam its current connected pocket; only the pocket is state.
    /// Pockets are recomputed as stepped robots move, and a move is legal
    /// only if the pocket survives it.
    Floating(Lattice),
    Pinned(Vec2),
}

#[derive(Clone, Debug)]
pub struct Robot {
    pub r: f64,
    pub body: Body,
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub robots: Vec<Robot>,
    /// Allowed overlap between robots, for searches that must not miss
    /// motions squeezed between lattice points.
    pub slack: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum CspaceError {
    #[error("state budget of {0} exceeded")]
    Budget(usize),
    #[error("bad start: {0}")]
    BadStart(String),
    #[error("floating robots {0} and {1} can touch; model one of them as stepped")]
    Interacting(usize, usize),
    #[error("state space does not fit a 64-bit key")]
    TooLarge,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub found: bool,
    pub states: usize,
    /// Positions of every robot along the discovered path; floating robots
    /// are shown at a representative point of their pocket.
    pub path: Option<Vec<Vec<Vec2>>>,
}

type Labels = Rc<Vec<u32>>;
const NONE: u32 = u32::MAX;

struct Float {
    robot: usize,
    lat: Lattice,
    /// Stepped robots (positions in `stepped`) that can touch this one.
    deps: Vec<usize>,
    /// Lattice points clear of pinned robots.
    base: Vec<bool>,
    cache: HashMap<Vec<u32>, Labels>,
    moves: HashMap<(Vec<u32>, Vec<u32>, u32), Rc<Vec<u32>>>,
}

fn bbox(pts: impl Iterator<Item = Vec2>) -> (Vec2, Vec2) {
    let mut lo = Vec2 { x: f64::INFINITY, y: f64::INFINITY };
    let mut hi = Vec2 { x: f64::NEG_INFINITY, y: f64::NEG_INFINITY };
    for p in pts {
        lo = Vec2 { x: lo.x.min(p.x), y: lo.y.min(p.y) };
        hi = Vec2 { x: hi.x.max(p.x), y: hi.y.max(p.y) };
    }
    (lo, hi)
}

fn box_gap(a: (Vec2, Vec2), b: (Vec2, Vec2)) -> f64 {
    let dx = (b.0.x - a.1.x).max(a.0.x - b.1.x).max(0.0);
    let dy = (b.0.y - a.1.y).max(a.0.y - b.1.y).max(0.0);
    dx.hypot(dy)
}

struct Engine<'a> {
    asm: &'a Assembly,
    stepped: Vec<usize>,
    floats: Vec<Float>,
    radix: Vec<u64>,
}

impl<'a> Engine<'a> {
    fn lat(&self, k: usize) -> &Lattice {
        match &self.asm.robots[self.stepped[k]].body {
            Body::Stepped(l) => l,
            _ => unreachable!(),
        }
    }

    fn r(&self, i: usize) -> f64 {
        self.asm.robots[i].r
    }

    fn clear(&self, a: Vec2, ra: f64, b: Vec2, rb: f64) -> bool {
        a.dist(b) >= ra + rb - TOL - self.asm.slack
    }

    fn dep_key(&self, f: usize, pos: &[u32]) -> Vec<u32> {
        self.floats[f].deps.iter().map(|&k| pos[k]).collect()
    }

    /// Component labels of floating robot `f` for the given stepped positions.
    fn labels(&mut self, f: usize, pos: &[u32]) -> Labels {
        let key = self.dep_key(f, pos);
        if let Some(l) = self.floats[f].cache.get(&key) {
            return l.clone();
        }
        let fl = &self.floats[f];
        let rf = self.asm.robots[fl.robot].r;
        let blockers: Vec<(Vec2, f64)> = fl.deps.iter().map(|&k| (self.lat(k).point(pos[k]), self.r(self.stepped[k]))).collect();
        let n = fl.lat.len();
        let ok: Vec<bool> = (0..n as u32)
            .map(|i| fl.base[i as usize] && blockers.iter().all(|&(b, rb)| self.clear(fl.lat.point(i), rf, b, rb)))
            .collect();
        let mut lab = vec![NONE; n];
        for s in 0..n {
            if !ok[s] || lab[s] != NONE {
                continue;
            }
            lab[s] = s as u32;
            let mut q = VecDeque::from([s as u32]);
            while let Some(c) = q.pop_front() {
                for d in 0..4 {
                    if let Some(m) = fl.lat.neighbor(c, d) {
                        if ok[m as usize] && lab[m as usize] == NONE {
                            lab[m as usize] = s as u32;
                            q.push_back(m);
                        }
                    }
                }
            }
        }
        let lab = Rc::new(lab);
        self.floats[f].cache.insert(key, lab.clone());
        lab
    }

    /// Pockets of `f` after a move that overlap its pocket before.
    fn successors(&mut self, f: usize, old: &[u32], new: &[u32], label: u32) -> Rc<Vec<u32>> {
        let key = (self.dep_key(f, old), self.dep_key(f, new), label);
        if let Some(s) = self.floats[f].moves.get(&key) {
            return s.clone();
        }
        let a = self.labels(f, old);
        let b = self.labels(f, new);
        let mut out: Vec<u32> = (0..a.len()).filter(|&i| a[i] == label && b[i] != NONE).map(|i| b[i]).collect();
        out.sort_unstable();
        out.dedup();
        let out = Rc::new(out);
        self.floats[f].moves.insert(key, out.clone());
        out
    }

    fn encode(&self, pos: &[u32], labels: &[u32]) -> u64 {
        pos.iter().chain(labels).zip(&self.radix).fold(0u64, |acc, (&x, &r)| acc * r + x as u64)
    }

    fn decode(&self, mut key: u64) -> (Vec<u32>, Vec<u32>) {
        let mut all = vec![0u32; self.radix.len()];
        for i in (0..self.radix.len()).rev() {
            all[i] = (key % self.radix[i]) as u32;
            key /= self.radix[i];
        }
        let labels = all.split_off(self.stepped.len());
        (all, labels)
    }

    fn positions(&self, pos: &[u32], labels: &[u32]) -> Vec<Vec2> {
        let mut out: Vec<Vec2> = self
            .asm
            .robots
            .iter()
            .map(|r| match &r.body {
                Body::Pinned(p) => *p,
                _ => Vec2::default(),
            })
            .collect();
        for (k, &i) in self.stepped.iter().enumerate() {
            out[i] = self.lat(k).point(pos[k]);
        }
        for (f, fl) in self.floats.iter().enumerate() {
            out[fl.robot] = fl.lat.point(labels[f]);
        }
        out
    }

    /// Stepped robot `k` at lattice point `to` clears pinned and other
    /// stepped robots.
    fn fits(&self, pos: &[u32], k: usize, to: u32) -> bool {
        let p = self.lat(k).point(to);
        let rk = self.r(self.stepped[k]);
        for (j, &q) in pos.iter().enumerate() {
            if j != k && !self.clear(p, rk, self.lat(j).point(q), self.r(self.stepped[j])) {
                return false;
            }
        }
        self.asm.robots.iter().all(|r| match r.body {
            Body::Pinned(c) => self.clear(p, rk, c, r.r),
            _ => true,
        })
    }
}

/// Breadth-first search over the product of the stepped robots' lattices
/// and the floating robots' pockets. Moves are tried in robot order, then
/// +x, -x, +y, -y. Starts snap to the nearest lattice point.
pub fn reachable(asm: &Assembly, start: &[Vec2], goal: impl Fn(&[Vec2]) -> bool, budget: usize) -> Result<SearchResult, CspaceError> {
    if start.len() != asm.robots.len() {
        return Err(CspaceError::BadStart(format!("{} positions for {} robots", start.len(), asm.robots.len())));
    }
    let stepped: Vec<usize> = (0..asm.robots.len()).filter(|&i| matches!(asm.robots[i].body, Body::Stepped(_))).collect();
    let mut floats = Vec::new();
    for (i, r) in asm.robots.iter().enumerate() {
        let Body::Floating(lat) = &r.body else { continue };
        let fb = bbox(lat.points());
        let deps = stepped
            .iter()
            .enumerate()
            .filter(|(_, &s)| {
                let Body::Stepped(l) = &asm.robots[s].body else { unreachable!() };
                box_gap(fb, bbox(l.points())) < r.r + asm.robots[s].r
            })
            .map(|(k, _)| k)
            .collect();
        let pinned: Vec<(Vec2, f64)> =
            asm.robots.iter().filter_map(|q| if let Body::Pinned(p) = q.body { Some((p, q.r)) } else { None }).collect();
        let base = lat.points().map(|p| pinned.iter().all(|&(c, rc)| p.dist(c) >= r.r + rc - TOL - asm.slack)).collect();
        floats.push(Float { robot: i, lat: lat.clone(), deps, base, cache: HashMap::new(), moves: HashMap::new() });
    }
    for a in 0..floats.len() {
        for b in a + 1..floats.len() {
            let ga = box_gap(bbox(floats[a].lat.points()), bbox(floats[b].lat.points()));
            if ga < asm.robots[floats[a].robot].r + asm.robots[floats[b].robot].r {
                return Err(CspaceError::Interacting(floats[a].robot, floats[b].robot));
            }
        }
    }
    let mut radix: Vec<u64> = Vec::new();
    for &s in &stepped {
        let Body::Stepped(l) = &asm.robots[s].body else { unreachable!() };
        radix.push(l.len().max(1) as u64);
    }
    radix.extend(floats.iter().map(|f| f.lat.len().max(1) as u64));
    radix.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r)).ok_or(CspaceError::TooLarge)?;
    let mut eng = Engine { asm, stepped, floats, radix };

    let mut pos = Vec::new();
    for k in 0..eng.stepped.len() {
        let i = eng.stepped[k];
        let p = eng.lat(k).nearest(start[i]).ok_or_else(|| CspaceError::BadStart(format!("robot {i} has an empty domain")))?;
        pos.push(p);
    }
    for k in 0..pos.len() {
        if !eng.fits(&pos, k, pos[k]) {
            return Err(CspaceError::BadStart(format!("robot {} overlaps at start", eng.stepped[k])));
        }
    }
    let mut labels = Vec::new();
    for f in 0..eng.floats.len() {
        let lab = eng.labels(f, &pos);
        let fl = &eng.floats[f];
        let near = (0..fl.lat.len() as u32)
            .filter(|&i| lab[i as usize] != NONE)
            .min_by(|&a, &b| fl.lat.point(a).dist(start[fl.robot]).partial_cmp(&fl.lat.point(b).dist(start[fl.robot])).unwrap())
            .ok_or_else(|| CspaceError::BadStart(format!("robot {} has no room", fl.robot)))?;
        labels.push(lab[near as usize]);
    }

    let s0 = eng.encode(&pos, &labels);
    let mut parent: HashMap<u64, u64> = HashMap::from([(s0, s0)]);
    let mut queue = VecDeque::from([s0]);
    let mut hit = if goal(&eng.positions(&pos, &labels)) { Some(s0) } else { None };
    while hit.is_none() {
        let Some(s) = queue.pop_front() else { break };
        let (pos, labels) = eng.decode(s);
        for k in 0..pos.len() {
            for d in 0..4 {
                let Some(to) = eng.lat(k).neighbor(pos[k], d) else { continue };
                if !eng.fits(&pos, k, to) {
                    continue;
                }
                let mut npos = pos.clone();
                npos[k] = to;
                // every floating robot that feels robot k must keep a pocket
                let mut options: Vec<Vec<u32>> = vec![labels.clone()];
                for f in 0..eng.floats.len() {
                    if !eng.floats[f].deps.contains(&k) {
                        continue;
                    }
                    let succ = eng.successors(f, &pos, &npos, labels[f]);
                    let mut next = Vec::new();
                    for o in &options {
                        for &l in succ.iter() {
                            let mut o = o.clone();
                            o[f] = l;
                            next.push(o);
                        }
                    }
                    options = next;
                }
                for nl in options {
                    let key = eng.encode(&npos, &nl);
                    if parent.contains_key(&key) {
                        continue;
                    }
                    parent.insert(key, s);
                    if parent.len() > budget {
                        return Err(CspaceError::Budget(budget));
                    }
                    if goal(&eng.positions(&npos, &nl)) {
                        hit = Some(key);
                        break;
                    }
                    queue.push_back(key);
                }
                if hit.is_some() {
                    break;
                }
            }
            if hit.is_some() {
                break;
            }
        }
    }
    let states = parent.len();
    let path = hit.map(|mut k| {
        let mut keys = vec![k];
        while parent[&k] != k {
            k = parent[&k];
            keys.push(k);
        }
        keys.reverse();
        keys.into_iter()
            .map(|k| {
                let (p, l) = eng.decode(k);
                eng.positions(&p, &l)
            })
            .collect()
    });
    Ok(SearchResult { found: path.is_some(), states, path })
}
