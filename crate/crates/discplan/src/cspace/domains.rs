use super::position_valid;
use crate::gadget::{GadgetGeometry, RobotClass};
use crate::geom::{v, Domain, Vec2};
use crate::TOL;
use std::collections::{HashMap, VecDeque};

/// Points of a square lattice reached by flood fill from an anchor.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub origin: Vec2,
    pub step: f64,
    pub cells: Vec<(i32, i32)>,
    index: HashMap<(i32, i32), u32>,
}

/// Neighbour order used everywhere: +x, -x, +y, -y.
pub const STEPS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

impl Lattice {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn point(&self, i: u32) -> Vec2 {
        let (a, b) = self.cells[i as usize];
        v(self.origin.x + a as f64 * self.step, self.origin.y + b as f64 * self.step)
    }

    pub fn find(&self, c: (i32, i32)) -> Option<u32> {
        self.index.get(&c).copied()
    }

    pub fn nearest(&self, p: Vec2) -> Option<u32> {
        (0..self.cells.len() as u32).min_by(|&a, &b| self.point(a).dist(p).partial_cmp(&self.point(b).dist(p)).unwrap())
    }

    pub fn neighbor(&self, i: u32, k: usize) -> Option<u32> {
        let (a, b) = self.cells[i as usize];
        self.find((a + STEPS[k].0, b + STEPS[k].1))
    }

    /// All points share one row or one column.
    pub fn is_1d(&self) -> bool {
        let xs = self.cells.iter().all(|c| c.0 == self.cells[0].0);
        let ys = self.cells.iter().all(|c| c.1 == self.cells[0].1);
        xs || ys
    }

    pub fn points(&self) -> impl Iterator<Item = Vec2> + '_ {
        (0..self.cells.len() as u32).map(|i| self.point(i))
    }
}

/// Flood fill over lattice points accepted by `valid`, starting at
/// `anchor` or, if that point is rejected, at the nearest accepted point
/// within three steps.
pub fn flood(anchor: Vec2, step: f64, valid: impl Fn(Vec2) -> bool, max: usize) -> Lattice {
    let at = |c: (i32, i32)| v(anchor.x + c.0 as f64 * step, anchor.y + c.1 as f64 * step);
    let mut seed = None;
    'ring: for ring in 0..=3i32 {
        let mut ring_cells: Vec<(i32, i32)> = Vec::new();
        for a in -ring..=ring {
            for b in -ring..=ring {
                if a.abs().max(b.abs()) == ring {
                    ring_cells.push((a, b));
                }
            }
        }
        ring_cells.sort_by(|p, q| at(*p).dist(anchor).partial_cmp(&at(*q).dist(anchor)).unwrap());
        for c in ring_cells {
            if valid(at(c)) {
                seed = Some(c);
                break 'ring;
            }
        }
    }
    let mut l = Lattice { origin: anchor, step, cells: vec![], index: HashMap::new() };
    let Some(seed) = seed else { return l };
    let mut q = VecDeque::from([seed]);
    l.index.insert(seed, 0);
    l.cells.push(seed);
    while let Some(c) = q.pop_front() {
        for (dx, dy) in STEPS {
            let n = (c.0 + dx, c.1 + dy);
            if l.index.contains_key(&n) || l.cells.len() >= max || !valid(at(n)) {
                continue;
            }
            l.index.insert(n, l.cells.len() as u32);
            l.cells.push(n);
            q.push_back(n);
        }
    }
    l
}

/// Points a small disc can never occupy because some large disc confined
/// to the segment `e1 e2` always covers them.
pub fn permanent_occupancy(p: Vec2, r: f64, large: &[(Vec2, Vec2)]) -> bool {
    let need = r + 1.0 - TOL;
    large.iter().any(|&(a, b)| p.dist(a) < need && p.dist(b) < need)
}

#[derive(Clone, Debug)]
pub enum MotionDomain {
    /// Axis-parallel segment of valid centres.
    Segment1D { a: Vec2, b: Vec2 },
    Grid2D(Lattice),
}

impl MotionDomain {
    pub fn from_lattice(l: Lattice) -> MotionDomain {
        if l.is_1d() && !l.is_empty() {
            let pts: Vec<Vec2> = l.points().collect();
            let lo = pts.iter().copied().min_by(|p, q| (p.x + p.y).partial_cmp(&(q.x + q.y)).unwrap()).unwrap();
            let hi = pts.iter().copied().max_by(|p, q| (p.x + p.y).partial_cmp(&(q.x + q.y)).unwrap()).unwrap();
            MotionDomain::Segment1D { a: lo, b: hi }
        } else {
            MotionDomain::Grid2D(l)
        }
    }

    /// Sample points of the domain (segment ends, or every lattice point).
    pub fn samples(&self) -> Vec<Vec2> {
        match self {
            MotionDomain::Segment1D { a, b } => vec![*a, *b],
            MotionDomain::Grid2D(l) => l.points().collect(),
        }
    }

    /// Whether any sampled centre falls in the closed rectangle.
    pub fn touches_rect(&self, lo: Vec2, hi: Vec2) -> bool {
        let inside = |p: Vec2| p.x >= lo.x - TOL && p.x <= hi.x + TOL && p.y >= lo.y - TOL && p.y <= hi.y + TOL;
        match self {
            MotionDomain::Segment1D { a, b } => {
                // axis-parallel segment against a box
                let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
                let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
                x1 >= lo.x - TOL && x0 <= hi.x + TOL && y1 >= lo.y - TOL && y0 <= hi.y + TOL
            }
            MotionDomain::Grid2D(l) => l.points().any(inside),
        }
    }
}

/// Obstacle-only valid-centre region of every robot in a gadget, flood
/// filled at resolution `delta` from its start. Small discs also avoid
/// points that a large disc covers wherever it is on its segment.
pub fn motion_domains(g: &GadgetGeometry, dom: &Domain, delta: f64) -> Vec<MotionDomain> {
    let large: Vec<(Vec2, Vec2)> = g
        .robots
        .iter()
        .filter(|r| r.class == RobotClass::Large && r.terminals.len() == 2)
        .map(|r| (r.terminals[0], r.terminals[1]))
        .collect();
    g.robots
        .iter()
        .map(|r| {
            let rad = r.class.radius();
            let small = r.class == RobotClass::Small;
            let l = flood(
                r.start,
                delta,
                |p| position_valid(dom, p, rad, 0.0) && !(small && permanent_occupancy(p, rad, &large)),
                200_000,
            );
            MotionDomain::from_lattice(l)
        })
        .collect()
}
