use super::{intersections, Piece, RigidTransform, Vec2};
use serde::{Deserialize, Serialize};

// irrational-looking ray direction so parity rays avoid grid-aligned vertices
const RAY: f64 = 0.713_862_174_512_5;
const PROBE: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    Rect { lo: Vec2, hi: Vec2 },
    Disc { c: Vec2, r: f64 },
    /// Closed curve of pieces, each starting where the previous one ends.
    Loop(Vec<Piece>),
}

impl Shape {
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Shape {
        Shape::Rect { lo: Vec2 { x: x0.min(x1), y: y0.min(y1) }, hi: Vec2 { x: x0.max(x1), y: y0.max(y1) } }
    }

    pub fn polygon(pts: &[Vec2]) -> Shape {
        let n = pts.len();
        Shape::Loop((0..n).map(|i| Piece::seg(pts[i], pts[(i + 1) % n])).collect())
    }

    pub fn contains(&self, p: Vec2) -> bool {
        match self {
            Shape::Rect { lo, hi } => p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y,
            Shape::Disc { c, r } => p.dist(*c) < *r,
            Shape::Loop(ps) => parity(ps.iter(), p),
        }
    }

    pub fn pieces(&self) -> Vec<Piece> {
        match self {
            Shape::Rect { lo, hi } => {
                let c = [*lo, Vec2 { x: hi.x, y: lo.y }, *hi, Vec2 { x: lo.x, y: hi.y }];
                (0..4).map(|i| Piece::seg(c[i], c[(i + 1) % 4])).collect()
            }
            Shape::Disc { c, r } => vec![Piece::arc(*c, *r, 0.0, 0.0)],
            Shape::Loop(ps) => ps.clone(),
        }
    }

    pub fn transformed(&self, t: &RigidTransform) -> Shape {
        match self {
            Shape::Rect { lo, hi } => {
                let a = t.apply(*lo);
                let b = t.apply(*hi);
                Shape::rect(a.x, a.y, b.x, b.y)
            }
            Shape::Disc { c, r } => Shape::Disc { c: t.apply(*c), r: *r },
            Shape::Loop(ps) => Shape::Loop(ps.iter().map(|p| t.apply_piece(p)).collect()),
        }
    }
}

/// Ray-parity point-in-closed-curves test over a set of pieces.
pub(crate) fn parity<'a>(pieces: impl Iterator<Item = &'a Piece>, p: Vec2) -> bool {
    let d = Vec2::polar(1.0, RAY);
    let mut inside = false;
    for pc in pieces {
        match *pc {
            Piece::Seg { a, b } => {
                let s = b - a;
                let den = d.cross(s);
                if den.abs() < 1e-15 {
                    continue;
                }
                let w = a - p;
                let t = w.cross(s) / den;
                let u = w.cross(d) / den;
                if t > 0.0 && (0.0..1.0).contains(&u) {
                    inside = !inside;
                }
            }
            Piece::Arc { c, r, .. } => {
                let f = p - c;
                let bq = f.dot(d);
                let cq = f.dot(f) - r * r;
                let disc = bq * bq - cq;
                if disc <= 0.0 {
                    continue;
                }
                let sq = disc.sqrt();
                for t in [-bq - sq, -bq + sq] {
                    if t > 0.0 {
                        let x = p + d * t;
                        if let Some(u) = pc.param_of(x, 0.0) {
                            if u < 1.0 {
                                inside = !inside;
                            }
                        }
                    }
                }
            }
        }
    }
    inside
}

/// Free space as a union of atoms minus a union of holes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub atoms: Vec<Shape>,
    pub holes: Vec<Shape>,
}

impl Region {
    pub fn contains(&self, p: Vec2) -> bool {
        self.atoms.iter().any(|a| a.contains(p)) && !self.holes.iter().any(|h| h.contains(p))
    }

    pub fn add(&mut self, s: Shape) {
        self.atoms.push(s);
    }

    pub fn cut(&mut self, s: Shape) {
        self.holes.push(s);
    }

    pub fn extend(&mut self, o: &Region) {
        self.atoms.extend(o.atoms.iter().cloned());
        self.holes.extend(o.holes.iter().cloned());
    }

    pub fn transformed(&self, t: &RigidTransform) -> Region {
        Region {
            atoms: self.atoms.iter().map(|s| s.transformed(t)).collect(),
            holes: self.holes.iter().map(|s| s.transformed(t)).collect(),
        }
    }

    /// Boundary of the free set: every shape piece is split at all mutual
    /// contacts and a sub-piece is kept iff exactly one of its two sides
    /// is free.
    pub fn boundary(&self) -> Domain {
        let all: Vec<Piece> = self.atoms.iter().chain(self.holes.iter()).flat_map(|s| s.pieces()).collect();
        let mut cuts: Vec<Vec<f64>> = vec![vec![0.0, 1.0]; all.len()];
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                for (s, t) in intersections(&all[i], &all[j]) {
                    cuts[i].push(s);
                    cuts[j].push(t);
                }
            }
        }
        let mut kept: Vec<Piece> = Vec::new();
        for (pc, ts) in all.iter().zip(cuts.iter_mut()) {
            ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            ts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            for w in ts.windows(2) {
                let sub = pc.sub(w[0], w[1]);
                if sub.length() < 1e-9 {
                    continue;
                }
                let m = sub.at(0.5);
                let n = sub.tangent(0.5).perp();
                let l = self.contains(m + n * PROBE);
                let r = self.contains(m - n * PROBE);
                if l != r && !kept.iter().any(|k| k.same_as(&sub, 1e-9)) {
                    // orient segments with free space on the left
                    let sub = match sub {
                        Piece::Seg { a, b } if !l => Piece::Seg { a: b, b: a },
                        other => other,
                    };
                    kept.push(sub);
                }
            }
        }
        Domain { pieces: kept }
    }
}

/// Boundary of a free region. Segments keep free space on their left;
/// arcs carry no side, which is recovered by probing.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub pieces: Vec<Piece>,
}

impl Domain {
    pub fn contains(&self, p: Vec2) -> bool {
        parity(self.pieces.iter(), p)
    }

    /// Distance from `p` to the nearest boundary piece.
    pub fn clearance(&self, p: Vec2) -> f64 {
        self.pieces.iter().map(|pc| pc.dist(p)).fold(f64::INFINITY, f64::min)
    }

    /// Whether a disc of radius `r` at `p` lies in the closed free set.
    pub fn disc_fits(&self, p: Vec2, r: f64, slack: f64) -> bool {
        self.clearance(p) >= r - slack && self.contains(p)
    }

    /// True when free space lies inside the circle carrying `arc`.
    pub fn free_inside(&self, arc: &Piece) -> bool {
        match *arc {
            Piece::Arc { c, .. } => {
                let m = arc.at(0.5);
                let inward = (c - m).unit();
                self.contains(m + inward * PROBE * 10.0)
            }
            Piece::Seg { .. } => false,
        }
    }

    pub fn transformed(&self, t: &RigidTransform) -> Domain {
        Domain { pieces: self.pieces.iter().map(|p| t.apply_piece(p)).collect() }
    }

    pub fn bbox(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2 { x: f64::INFINITY, y: f64::INFINITY };
        let mut hi = Vec2 { x: f64::NEG_INFINITY, y: f64::NEG_INFINITY };
        for p in &self.pieces {
            let (a, b) = p.bbox();
            lo = Vec2 { x: lo.x.min(a.x), y: lo.y.min(a.y) };
            hi = Vec2 { x: hi.x.max(b.x), y: hi.y.max(b.y) };
        }
        (lo, hi)
    }
}
