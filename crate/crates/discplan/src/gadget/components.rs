//! The two signal components with their exact coordinates, plus the
//! aligned-disc link, all expressed in a common chain frame.
//!
//! Chain frame: the upstream large disc has its pushed terminal at the
//! origin and is pushed along +x. Each link reports where the downstream
//! disc's pushed terminal lands and which way it is pushed.

use crate::geom::{v, Piece, Region, RigidTransform, Shape, Vec2};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

pub fn sqrt2() -> f64 {
    std::f64::consts::SQRT_2
}

pub fn sqrt3() -> f64 {
    3f64.sqrt()
}

/// Named points of the perpendicular component in its own coordinates.
pub mod perp {
    use super::*;
    pub fn a() -> Vec2 {
        v(0.0, 0.0)
    }
    pub fn b() -> Vec2 {
        v(-1.0, 1.0)
    }
    pub fn c() -> Vec2 {
        v(sqrt3() - 2.0, -1.0)
    }
    pub fn d() -> Vec2 {
        v(1.0, 2.0 - sqrt3())
    }
    pub fn t1() -> Vec2 {
        v(-1.0, 0.0)
    }
    pub fn t2() -> Vec2 {
        v(-2.0, 0.0)
    }
    /// B's start (top) position; B moves down to `(0, 1)`.
    pub fn b_top() -> Vec2 {
        v(0.0, 2.0)
    }
    pub fn c_start() -> Vec2 {
        v(0.5, 2.0 - sqrt2())
    }
    /// The small disc once both large discs have moved.
    pub fn c_moved() -> Vec2 {
        v(sqrt2() - 2.0, -0.5)
    }
    /// Arc from c to a, radius 2 about t2.
    pub fn arc_ac() -> Piece {
        Piece::arc(t2(), 2.0, -FRAC_PI_6, 0.0)
    }
    /// Arc from a to d, radius 2 about B's top position.
    pub fn arc_ad() -> Piece {
        Piece::arc(b_top(), 2.0, -FRAC_PI_2, -FRAC_PI_3)
    }

    pub fn region() -> Region {
        let mut r = Region::default();
        r.add(Shape::rect(-3.0, -1.0, 0.0, 1.0));
        r.add(Shape::rect(-1.0, 0.0, 1.0, 3.0));
        r.cut(Shape::Loop(vec![arc_ac(), Piece::seg(a(), v(0.0, -1.0)), Piece::seg(v(0.0, -1.0), c())]));
        r.cut(Shape::Loop(vec![arc_ad(), Piece::seg(d(), v(1.0, 0.0)), Piece::seg(v(1.0, 0.0), a())]));
        r
    }
}

/// Named points of the parallel component in its own coordinates.
pub mod par {
    use super::*;
    pub fn a() -> Vec2 {
        v(0.0, 0.0)
    }
    pub fn b() -> Vec2 {
        v(1.0, -1.0)
    }
    pub fn c() -> Vec2 {
        v(sqrt3() - 1.0, -2.0)
    }
    pub fn d() -> Vec2 {
        v(2.0 - sqrt3(), 1.0)
    }
    pub fn t1() -> Vec2 {
        v(0.0, -1.0)
    }
    pub fn t2() -> Vec2 {
        v(-1.0, -1.0)
    }
    /// B′'s start position; B′ moves left to `(1, 0)`.
    pub fn b_start() -> Vec2 {
        v(2.0, 0.0)
    }
    pub fn c_start() -> Vec2 {
        v(2.0 - sqrt2(), 0.5)
    }
    pub fn c_moved() -> Vec2 {
        v(sqrt2() - 1.0, -1.5)
    }
    /// Arc from c′ to b′, radius 2 about t′2.
    pub fn arc_bc() -> Piece {
        Piece::arc(t2(), 2.0, -FRAC_PI_6, 0.0)
    }
    /// Arc from d′ to a′, radius 2 about B′'s start.
    pub fn arc_ad() -> Piece {
        Piece::arc(b_start(), 2.0, 5.0 * FRAC_PI_6, PI)
    }

    pub fn region() -> Region {
        let mut r = Region::default();
        r.add(Shape::rect(-2.0, -2.0, 1.0, 0.0));
        r.add(Shape::rect(0.0, -1.0, 3.0, 1.0));
        r.cut(Shape::Loop(vec![arc_bc(), Piece::seg(b(), v(1.0, -2.0)), Piece::seg(v(1.0, -2.0), c())]));
        r.cut(Shape::Loop(vec![arc_ad(), Piece::seg(a(), v(0.0, 1.0)), Piece::seg(v(0.0, 1.0), d())]));
        r
    }
}

/// How one large disc hands the push on to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Link {
    /// Same axis, two units ahead.
    Aligned,
    /// Parallel component; `left` puts the next axis one unit to the left.
    Parallel { left: bool },
    /// Perpendicular component turning left or right.
    Perp { left: bool },
}

/// A link realized in the chain frame.
#[derive(Clone, Debug)]
pub struct LinkGeometry {
    pub region: Region,
    /// Downstream pushed terminal and push direction.
    pub next: Vec2,
    pub next_dir: Vec2,
    /// Small disc positions for the all-retracted and all-pushed states.
    pub small: Option<(Vec2, Vec2)>,
}

/// Reflection across the chain axis.
fn flip() -> RigidTransform {
    RigidTransform::new(2, true, v(0.0, 0.0))
}

/// Rect swept by a large disc pushed along `dir` with pushed terminal `p`.
pub fn disc_rect(p: Vec2, dir: Vec2) -> Shape {
    let back = p - dir * 2.0;
    let front = p + dir;
    let side = dir.perp();
    let c1 = back + side;
    let c2 = front - side;
    Shape::rect(c1.x, c1.y, c2.x, c2.y)
}

impl Link {
    pub fn geometry(self) -> LinkGeometry {
        match self {
            Link::Aligned => {
                let mut region = Region::default();
                region.add(disc_rect(v(0.0, 0.0), v(1.0, 0.0)));
                region.add(disc_rect(v(2.0, 0.0), v(1.0, 0.0)));
                LinkGeometry { region, next: v(2.0, 0.0), next_dir: v(1.0, 0.0), small: None }
            }
            Link::Perp { left } => {
                // in the component's own frame B is upstream: rotate a quarter turn so B
                // is pushed along +x, then shift its pushed terminal to 0
                let t = RigidTransform::new(1, false, v(1.0, 0.0));
                let mut g = LinkGeometry {
                    region: perp::region().transformed(&t),
                    next: t.apply(perp::t2()),
                    next_dir: v(0.0, -1.0),
                    small: Some((t.apply(perp::c_start()), t.apply(perp::c_moved()))),
                };
                if left {
                    g = mirrored(g);
                }
                g
            }
            Link::Parallel { left } => {
                let t = RigidTransform::new(2, false, v(1.0, 0.0));
                let mut g = LinkGeometry {
                    region: par::region().transformed(&t),
                    next: t.apply(par::t2()),
                    next_dir: v(1.0, 0.0),
                    small: Some((t.apply(par::c_start()), t.apply(par::c_moved()))),
                };
                if !left {
                    g = mirrored(g);
                }
                g
            }
        }
    }
}

fn mirrored(g: LinkGeometry) -> LinkGeometry {
    let f = flip();
    LinkGeometry {
        region: g.region.transformed(&f),
        next: f.apply(g.next),
        next_dir: f.linear(g.next_dir),
        small: g.small.map(|(a, b)| (f.apply(a), f.apply(b))),
    }
}

/// Rigid map from the chain frame onto a pose: pushed terminal `p`,
/// push direction `dir` (axis-aligned unit vector).
pub fn frame(p: Vec2, dir: Vec2) -> RigidTransform {
    let rot = match (dir.x.round() as i32, dir.y.round() as i32) {
        (1, 0) => 0,
        (0, 1) => 1,
        (-1, 0) => 2,
        _ => 3,
    };
    RigidTransform::new(rot, false, p)
}
