use super::{norm_angle, v, Piece, Vec2};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// `p ↦ translate + R(rot·90°) · M(p)`, where `M` negates x when
/// `mirror` is set.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct RigidTransform {
    pub rot: u8,
    pub mirror: bool,
    pub translate: Vec2,
}

impl RigidTransform {
    pub const IDENTITY: RigidTransform = RigidTransform { rot: 0, mirror: false, translate: v(0.0, 0.0) };

    pub fn new(rot: u8, mirror: bool, translate: Vec2) -> Self {
        RigidTransform { rot: rot % 4, mirror, translate }
    }

    pub fn rotation(rot: u8) -> Self {
        Self::new(rot, false, v(0.0, 0.0))
    }

    pub fn translation(t: Vec2) -> Self {
        Self::new(0, false, t)
    }

    /// Rotation by `rot` quarter turns about `center`.
    pub fn rotation_about(rot: u8, center: Vec2) -> Self {
        let r = Self::rotation(rot);
        Self::new(rot, false, center - r.linear(center))
    }

    /// Reflection across the vertical line `x = axis`.
    pub fn mirror_x(axis: f64) -> Self {
        Self::new(0, true, v(2.0 * axis, 0.0))
    }

    pub fn linear(&self, p: Vec2) -> Vec2 {
        let q = if self.mirror { v(-p.x, p.y) } else { p };
        match self.rot % 4 {
            0 => q,
            1 => v(-q.y, q.x),
            2 => v(-q.x, -q.y),
            _ => v(q.y, -q.x),
        }
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        self.linear(p) + self.translate
    }

    fn apply_angle(&self, a: f64) -> f64 {
        let m = if self.mirror { PI - a } else { a };
        m + self.rot as f64 * FRAC_PI_2
    }

    pub fn apply_piece(&self, p: &Piece) -> Piece {
        match *p {
            Piece::Seg { a, b } => Piece::Seg { a: self.apply(a), b: self.apply(b) },
            Piece::Arc { c, r, a0, a1 } => {
                // a mirror reverses travel, so the image starts at the old end
                let s = self.apply_angle(if self.mirror { a1 } else { a0 });
                let span = a1 - a0;
                let b0 = norm_angle(s);
                Piece::Arc { c: self.apply(c), r, a0: b0, a1: b0 + span }
            }
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        let mirror = self.mirror ^ other.mirror;
        // linear parts: L_self ∘ L_other; find rot with R(rot)·M = that map
        let e1 = self.linear(other.linear(v(1.0, 0.0)));
        let e2 = self.linear(other.linear(v(0.0, 1.0)));
        let mut rot = 0;
        for k in 0..4u8 {
            let t = RigidTransform::new(k, mirror, v(0.0, 0.0));
            if t.linear(v(1.0, 0.0)).close(e1, 1e-12) && t.linear(v(0.0, 1.0)).close(e2, 1e-12) {
                rot = k;
            }
        }
        RigidTransform { rot, mirror, translate: self.apply(other.translate) }
    }

    pub fn inverse(&self) -> RigidTransform {
        for k in 0..4u8 {
            let lin = RigidTransform::new(k, self.mirror, v(0.0, 0.0));
            let c = lin.compose(&RigidTransform::new(self.rot, self.mirror, v(0.0, 0.0)));
            if c.rot == 0 && !c.mirror {
                return RigidTransform { rot: k, mirror: self.mirror, translate: -lin.linear(self.translate) };
            }
        }
        unreachable!("quarter-turn group is closed")
    }
}
