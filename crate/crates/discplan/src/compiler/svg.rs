use super::{Instance, Targets};
use crate::geom::{Piece, Vec2};
use std::fmt::Write;

const SCALE: f64 = 20.0;
const MARGIN: f64 = 2.0;

/// Chain boundary pieces into closed loops by matching endpoints. Each
/// entry is (piece, reversed).
fn loops(pieces: &[Piece]) -> Vec<Vec<(Piece, bool)>> {
    let mut used = vec![false; pieces.len()];
    let mut out = Vec::new();
    for s in 0..pieces.len() {
        if used[s] {
            continue;
        }
        used[s] = true;
        let mut lp = vec![(pieces[s], false)];
        let start = pieces[s].start();
        let mut end = pieces[s].end();
        while !end.close(start, 1e-7) {
            let next = (0..pieces.len()).filter(|&i| !used[i]).find_map(|i| {
                if pieces[i].start().close(end, 1e-7) {
                    Some((i, false))
                } else if pieces[i].end().close(end, 1e-7) {
                    Some((i, true))
                } else {
                    None
                }
            });
            let Some((i, rev)) = next else { break };
            used[i] = true;
            end = if rev { pieces[i].start() } else { pieces[i].end() };
            lp.push((pieces[i], rev));
        }
        out.push(lp);
    }
    out
}

/// Deterministic SVG: obstacles grey, free space white, small discs
/// orange, large discs blue, targets as small squares.
pub fn render_svg(inst: &Instance) -> String {
    let (lo, hi) = if inst.domain.pieces.is_empty() { (Vec2::default(), Vec2::default()) } else { inst.domain.bbox() };
    let (x0, y1) = (lo.x - MARGIN, hi.y + MARGIN);
    let w = (hi.x - lo.x + 2.0 * MARGIN) * SCALE;
    let h = (hi.y - lo.y + 2.0 * MARGIN) * SCALE;
    let px = |p: Vec2| ((p.x - x0) * SCALE, (y1 - p.y) * SCALE);
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}">"#).unwrap();
    writeln!(s, r##"<rect x="0" y="0" width="{w:.2}" height="{h:.2}" fill="#888888" stroke="black"/>"##).unwrap();
    let mut d = String::new();
    for lp in loops(&inst.domain.pieces) {
        let first = if lp[0].1 { lp[0].0.end() } else { lp[0].0.start() };
        let (fx, fy) = px(first);
        write!(d, "M{fx:.3},{fy:.3} ").unwrap();
        for (pc, rev) in lp {
            let to = if rev { pc.start() } else { pc.end() };
            let (tx, ty) = px(to);
            match pc {
                Piece::Seg { .. } => write!(d, "L{tx:.3},{ty:.3} ").unwrap(),
                Piece::Arc { r, a0, a1, .. } => {
                    let large = u8::from(a1 - a0 > std::f64::consts::PI);
                    // counter-clockwise in the plane is clockwise on screen
                    let sweep = u8::from(!rev);
                    if (a1 - a0 - std::f64::consts::TAU).abs() < 1e-9 {
                        let mid = pc.at(0.5);
                        let (mx, my) = px(mid);
                        write!(d, "A{0:.3},{0:.3} 0 0 {sweep} {mx:.3},{my:.3} ", r * SCALE).unwrap();
                    }
                    write!(d, "A{0:.3},{0:.3} 0 {large} {sweep} {tx:.3},{ty:.3} ", r * SCALE).unwrap();
                }
            }
        }
        d.push_str("Z ");
    }
    if !d.is_empty() {
        writeln!(s, r#"<path d="{}" fill="white" fill-rule="evenodd" stroke="black" stroke-width="0.5"/>"#, d.trim_end()).unwrap();
    }
    for c in &inst.classes {
        let color = if c.radius < 0.75 { "#f0a030" } else { "#3070d0" };
        for p in &c.starts {
            let (cx, cy) = px(*p);
            writeln!(s, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="{color}" fill-opacity="0.8" stroke="black"/>"#, c.radius * SCALE)
                .unwrap();
        }
    }
    let dots: Vec<Vec2> = match &inst.targets {
        Targets::Full(per) => per.iter().flatten().copied().collect(),
        Targets::Point(p) | Targets::PointInClass(p, _) => vec![*p],
    };
    for p in dots {
        let (cx, cy) = px(p);
        writeln!(s, r#"<rect x="{:.3}" y="{:.3}" width="4" height="4" fill="red"/>"#, cx - 2.0, cy - 2.0).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
