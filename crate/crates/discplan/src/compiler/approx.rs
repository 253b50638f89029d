use super::Instance;
use crate::geom::{Domain, Piece, Vec2};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcApproxParams {
    /// Largest allowed distance between an arc and its replacement chain.
    pub epsilon: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ApproxError {
    #[error("epsilon must be positive, got {0}")]
    BadEpsilon(f64),
}

/// Number of pieces for an arc of radius `r` spanning `span`: the smallest
/// power of two whose angular step θ meets `r (1/cos(θ/2) - 1) <= eps`.
/// Powers of two make the chains for smaller epsilons refinements of the
/// chains for larger ones.
pub fn angular_step(r: f64, span: f64, eps: f64) -> (usize, f64) {
    let mut n = 1usize;
    loop {
        let th = span / n as f64;
        if th <= std::f64::consts::FRAC_PI_2 && r * (1.0 / (th / 2.0).cos() - 1.0) <= eps {
            return (n, th);
        }
        n *= 2;
    }
}

/// Chain replacing one arc. When free space lies outside the circle the
/// chain is circumscribed (tangent segments); when it lies inside, the
/// chain is inscribed (chords). Either way it sits in the old free space,
/// so only free space is removed.
pub fn arc_chain(arc: &Piece, free_inside: bool, eps: f64) -> Vec<Piece> {
    let Piece::Arc { c, r, a0, a1 } = *arc else { return vec![*arc] };
    let (n, th) = angular_step(r, a1 - a0, eps);
    let mut pts = vec![c + Vec2::polar(r, a0)];
    if free_inside {
        for k in 1..n {
            pts.push(c + Vec2::polar(r, a0 + th * k as f64));
        }
    } else {
        let rr = r / (th / 2.0).cos();
        for k in 0..n {
            pts.push(c + Vec2::polar(rr, a0 + th * (k as f64 + 0.5)));
        }
    }
    pts.push(c + Vec2::polar(r, a1));
    pts.windows(2).map(|w| Piece::seg(w[0], w[1])).collect()
}

pub fn approximate_arcs(inst: &Instance, p: ArcApproxParams) -> Result<Instance, ApproxError> {
    if !(p.epsilon > 0.0) {
        return Err(ApproxError::BadEpsilon(p.epsilon));
    }
    Ok(Instance { domain: approximate_domain(&inst.domain, p.epsilon), ..inst.clone() })
}

/// Replace every arc of a domain; `eps` must be positive.
pub fn approximate_domain(dom: &Domain, eps: f64) -> Domain {
    let mut pieces = Vec::new();
    for pc in &dom.pieces {
        match pc {
            Piece::Arc { .. } => pieces.extend(arc_chain(pc, dom.free_inside(pc), eps)),
            Piece::Seg { .. } => pieces.push(*pc),
        }
    }
    Domain { pieces }
}

/// Largest distance from a point of the arc to its chain, and from a chain
/// vertex back to the arc, by dense sampling.
pub fn max_deviation(arc: &Piece, chain: &[Piece]) -> f64 {
    let to_chain = |q: Vec2| chain.iter().map(|c| c.dist(q)).fold(f64::INFINITY, f64::min);
    let mut worst: f64 = 0.0;
    for k in 0..=2000 {
        worst = worst.max(to_chain(arc.at(k as f64 / 2000.0)));
    }
    for c in chain {
        for k in 0..=50 {
            worst = worst.max(arc.dist(c.at(k as f64 / 50.0)));
        }
    }
    worst
}
