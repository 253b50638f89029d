use super::{Piece, Vec2};

const EPS: f64 = 1e-10;

/// Contact points between two pieces as parameter pairs `(t_p, t_q)`.
/// Overlapping collinear or co-circular pieces report each other's
/// endpoints that fall inside.
pub fn intersections(p: &Piece, q: &Piece) -> Vec<(f64, f64)> {
    let (lo1, hi1) = p.bbox();
    let (lo2, hi2) = q.bbox();
    if lo1.x > hi2.x + 1e-7 || lo2.x > hi1.x + 1e-7 || lo1.y > hi2.y + 1e-7 || lo2.y > hi1.y + 1e-7 {
        return vec![];
    }
    let pts = match (p, q) {
        (Piece::Seg { a, b }, Piece::Seg { a: c, b: d }) => seg_seg(*a, *b, *c, *d),
        (Piece::Seg { a, b }, Piece::Arc { c, r, .. }) => line_circle(*a, *b, *c, *r),
        (Piece::Arc { c, r, .. }, Piece::Seg { a, b }) => line_circle(*a, *b, *c, *r),
        (Piece::Arc { c: c1, r: r1, .. }, Piece::Arc { c: c2, r: r2, .. }) => {
            if c1.close(*c2, EPS) && (r1 - r2).abs() < EPS {
                vec![]
            } else {
                circle_circle(*c1, *r1, *c2, *r2)
            }
        }
    };
    let mut out = Vec::new();
    for x in pts {
        if let (Some(s), Some(t)) = (p.param_of(x, 1e-9), q.param_of(x, 1e-9)) {
            out.push((s, t));
        }
    }
    if overlapping_carriers(p, q) {
        for x in [q.start(), q.end()] {
            if let Some(s) = p.param_of(x, 1e-9) {
                out.push((s, q.param_of(x, 1e-9).unwrap_or(0.0)));
            }
        }
        for x in [p.start(), p.end()] {
            if let Some(t) = q.param_of(x, 1e-9) {
                out.push((p.param_of(x, 1e-9).unwrap_or(0.0), t));
            }
        }
    }
    out
}

fn overlapping_carriers(p: &Piece, q: &Piece) -> bool {
    match (p, q) {
        (Piece::Seg { a, b }, Piece::Seg { a: c, b: d }) => {
            let u = (*b - *a).unit();
            u.cross(*c - *a).abs() < 1e-9 && u.cross(*d - *a).abs() < 1e-9
        }
        (Piece::Arc { c: c1, r: r1, .. }, Piece::Arc { c: c2, r: r2, .. }) => c1.close(*c2, EPS) && (r1 - r2).abs() < EPS,
        _ => false,
    }
}

fn seg_seg(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> Vec<Vec2> {
    let r = b - a;
    let s = d - c;
    let den = r.cross(s);
    if den.abs() < 1e-14 * r.norm() * s.norm() {
        return vec![];
    }
    let t = (c - a).cross(s) / den;
    vec![a + r * t]
}

fn line_circle(a: Vec2, b: Vec2, c: Vec2, r: f64) -> Vec<Vec2> {
    let d = (b - a).unit();
    let f = a - c;
    let proj = f.dot(d);
    let foot = a - d * proj;
    let h2 = r * r - (foot - c).dot(foot - c);
    if h2 < -1e-9 {
        return vec![];
    }
    if h2 <= 1e-12 {
        return vec![foot];
    }
    let h = h2.sqrt();
    vec![foot - d * h, foot + d * h]
}

fn circle_circle(c1: Vec2, r1: f64, c2: Vec2, r2: f64) -> Vec<Vec2> {
    let dv = c2 - c1;
    let d = dv.norm();
    if d < EPS || d > r1 + r2 + 1e-9 || d < (r1 - r2).abs() - 1e-9 {
        return vec![];
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    let u = dv * (1.0 / d);
    let m = c1 + u * a;
    if h2 <= 1e-12 {
        return vec![m];
    }
    let h = h2.sqrt();
    vec![m + u.perp() * h, m - u.perp() * h]
}
