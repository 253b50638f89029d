//! Planar primitives: points, boundary pieces (segments and circular arcs),
//! regions built from unions and differences, and rigid motions.

mod intersect;
mod region;
mod transform;

pub use intersect::intersections;
pub use region::{Domain, Region, Shape};
pub use transform::RigidTransform;

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub const fn v(x: f64, y: f64) -> Vec2 {
    Vec2 { x, y }
}

impl Vec2 {
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }
    pub fn perp(self) -> Vec2 {
        v(-self.y, self.x)
    }
    pub fn unit(self) -> Vec2 {
        let n = self.norm();
        v(self.x / n, self.y / n)
    }
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
    pub fn polar(r: f64, a: f64) -> Vec2 {
        v(r * a.cos(), r * a.sin())
    }
    pub fn close(self, o: Vec2, tol: f64) -> bool {
        (self.x - o.x).abs() <= tol && (self.y - o.y).abs() <= tol
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        v(self.x + o.x, self.y + o.y)
    }
}
impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        v(self.x - o.x, self.y - o.y)
    }
}
impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        v(self.x * k, self.y * k)
    }
}
impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        v(-self.x, -self.y)
    }
}

/// Normalize an angle into `[0, 2π)`.
pub fn norm_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A boundary piece. Arcs run counter-clockwise from `a0` to `a1`, with
/// `a0` in `[0, 2π)` and `0 < a1 - a0 <= 2π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Piece {
    Seg { a: Vec2, b: Vec2 },
    Arc { c: Vec2, r: f64, a0: f64, a1: f64 },
}

impl Piece {
    pub fn seg(a: Vec2, b: Vec2) -> Piece {
        Piece::Seg { a, b }
    }

    /// Counter-clockwise arc from angle `from` to angle `to`.
    pub fn arc(c: Vec2, r: f64, from: f64, to: f64) -> Piece {
        let a0 = norm_angle(from);
        let mut span = norm_angle(to - from);
        if span < 1e-12 {
            span = TAU;
        }
        Piece::Arc { c, r, a0, a1: a0 + span }
    }

    pub fn start(&self) -> Vec2 {
        self.at(0.0)
    }

    pub fn end(&self) -> Vec2 {
        self.at(1.0)
    }

    /// Point at parameter `t` in `[0, 1]`.
    pub fn at(&self, t: f64) -> Vec2 {
        match *self {
            Piece::Seg { a, b } => a + (b - a) * t,
            Piece::Arc { c, r, a0, a1 } => c + Vec2::polar(r, a0 + (a1 - a0) * t),
        }
    }

    /// Unit tangent at parameter `t` along the direction of travel.
    pub fn tangent(&self, t: f64) -> Vec2 {
        match *self {
            Piece::Seg { a, b } => (b - a).unit(),
            Piece::Arc { a0, a1, .. } => {
                let th = a0 + (a1 - a0) * t;
                v(-th.sin(), th.cos())
            }
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Piece::Seg { a, b } => a.dist(b),
            Piece::Arc { r, a0, a1, .. } => r * (a1 - a0),
        }
    }

    /// Parameter of a point known to lie on the piece's carrier, or `None`
    /// when it falls outside the piece.
    pub fn param_of(&self, p: Vec2, tol: f64) -> Option<f64> {
        match *self {
            Piece::Seg { a, b } => {
                let d = b - a;
                let t = (p - a).dot(d) / d.dot(d);
                let slack = tol / d.norm();
                (t >= -slack && t <= 1.0 + slack).then_some(t.clamp(0.0, 1.0))
            }
            Piece::Arc { c, r, a0, a1 } => {
                let th = (p - c).angle();
                let span = a1 - a0;
                let mut rel = norm_angle(th - a0);
                let slack = tol / r;
                if rel > span + slack && rel > TAU - slack {
                    rel -= TAU;
                }
                (rel >= -slack && rel <= span + slack).then_some((rel / span).clamp(0.0, 1.0))
            }
        }
    }

    /// The sub-piece between parameters `t0 < t1`.
    pub fn sub(&self, t0: f64, t1: f64) -> Piece {
        match *self {
            Piece::Seg { .. } => Piece::Seg { a: self.at(t0), b: self.at(t1) },
            Piece::Arc { c, r, a0, a1 } => {
                let s = a1 - a0;
                let n0 = a0 + s * t0;
                let n1 = a0 + s * t1;
                let b0 = norm_angle(n0);
                Piece::Arc { c, r, a0: b0, a1: b0 + (n1 - n0) }
            }
        }
    }

    pub fn reversed_endpoints(&self) -> (Vec2, Vec2) {
        (self.end(), self.start())
    }

    /// Euclidean distance from `p` to the piece.
    pub fn dist(&self, p: Vec2) -> f64 {
        match *self {
            Piece::Seg { a, b } => {
                let d = b - a;
                let l2 = d.dot(d);
                let t = if l2 == 0.0 { 0.0 } else { ((p - a).dot(d) / l2).clamp(0.0, 1.0) };
                p.dist(a + d * t)
            }
            Piece::Arc { c, r, a0, a1 } => {
                let q = p - c;
                if q.norm() > 0.0 {
                    let rel = norm_angle(q.angle() - a0);
                    if rel <= a1 - a0 {
                        return (q.norm() - r).abs();
                    }
                } else {
                    return r;
                }
                p.dist(self.start()).min(p.dist(self.end()))
            }
        }
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bbox(&self) -> (Vec2, Vec2) {
        match *self {
            Piece::Seg { a, b } => (v(a.x.min(b.x), a.y.min(b.y)), v(a.x.max(b.x), a.y.max(b.y))),
            Piece::Arc { c, r, a0, a1 } => {
                let (s, e) = (self.start(), self.end());
                let mut lo = v(s.x.min(e.x), s.y.min(e.y));
                let mut hi = v(s.x.max(e.x), s.y.max(e.y));
                for k in 0..=8 {
                    let th = k as f64 * PI / 2.0;
                    if th >= a0 && th <= a1 {
                        let p = c + Vec2::polar(r, th);
                        lo = v(lo.x.min(p.x), lo.y.min(p.y));
                        hi = v(hi.x.max(p.x), hi.y.max(p.y));
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Geometric equality up to `tol`, ignoring direction.
    pub fn same_as(&self, o: &Piece, tol: f64) -> bool {
        let mid_ok = self.at(0.5).close(o.at(0.5), tol);
        let ends = (self.start().close(o.start(), tol) && self.end().close(o.end(), tol))
            || (self.start().close(o.end(), tol) && self.end().close(o.start(), tol));
        let kind = matches!((self, o), (Piece::Seg { .. }, Piece::Seg { .. }) | (Piece::Arc { .. }, Piece::Arc { .. }));
        kind && mid_ok && ends
    }
}
