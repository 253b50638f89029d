//! Mechanical checks of the gadget lemmas: closed-form tangency values,
//! reduced-DOF searches on components and close-ups, static chain
//! feasibility for connectors, and scripted witness schedules.

use super::bfs::{reachable, Assembly, Body, CspaceError, Robot};
use super::domains::{flood, permanent_occupancy, Lattice};
use super::schedule::{validate_schedule, Schedule};
use super::{first_conflict, position_valid};
use crate::compiler::approximate_domain;
use crate::gadget::chain::Chain;
use crate::gadget::components::{par, perp, Link};
use crate::gadget::{
    and_gadget, connector_gadget, or_gadget, parallel_component, perpendicular_component, ConnectorKind, Dir, GadgetGeometry,
    RobotClass, NOTCH_WALL,
};
use crate::geom::{v, Domain, RigidTransform, Vec2};
use crate::TOL;
use std::fmt;
use thiserror::Error;

pub const COMPONENT_DELTA: f64 = 0.02;
pub const CLOSEUP_DELTA: f64 = 0.05;
pub const SCHEDULE_DT: f64 = 1e-3;
/// Published value the AND notch is tuned to.
pub const AND_THRESHOLD: f64 = 0.8539;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckParams {
    /// Lattice step for searches.
    pub delta: f64,
    /// Replace arcs by chains of this tolerance before checking.
    pub epsilon: Option<f64>,
    pub budget: usize,
}

impl CheckParams {
    pub fn component() -> Self {
        CheckParams { delta: COMPONENT_DELTA, epsilon: None, budget: 20_000_000 }
    }

    pub fn closeup() -> Self {
        CheckParams { delta: CLOSEUP_DELTA, ..Self::component() }
    }

    /// Extra allowance for positive claims on approximated geometry, which
    /// loses up to epsilon of free space on each side of a contact.
    fn positive_slack(&self) -> f64 {
        self.epsilon.map_or(0.0, |e| 2.0 * e)
    }

    fn domain(&self, g: &GadgetGeometry) -> Domain {
        self.approx(g.region.boundary())
    }

    fn approx(&self, d: Domain) -> Domain {
        match self.epsilon {
            Some(e) => approximate_domain(&d, e),
            None => d,
        }
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

impl Finding {
    pub fn new(id: &str, pass: bool, detail: String) -> Self {
        Finding { id: id.into(), pass, detail }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.detail)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum TangencyError {
    #[error("{what}: root find did not converge (residual {residual:e})")]
    NoConvergence { what: &'static str, residual: f64 },
}

/// Critical displacements, closed form next to the numeric solve.
#[derive(Clone, Debug, PartialEq)]
pub struct Thresholds {
    pub perpendicular: f64,
    pub perpendicular_closed: f64,
    pub parallel: f64,
    pub parallel_closed: f64,
    /// Drop of a blocking disc needed before `out` can enter an AND gadget.
    pub and_gate: f64,
    pub and_gate_closed: f64,
}

pub fn perpendicular_closed() -> f64 {
    2f64.sqrt() - 1.0
}

pub fn parallel_closed() -> f64 {
    5f64.sqrt() / 2.0 - 0.5
}

/// Closed form of the AND threshold. Relative to the left blocking disc's
/// pushed terminal, the notch spans `[0.1, 1 - wall]` one unit up; the best
/// a small disc can do is wedge between the notch's two bottom corners,
/// and the blocking disc must drop until it clears that small disc.
pub fn and_gate_closed(notch_wall: f64) -> f64 {
    let (x0, x1) = (0.1, 1.0 - notch_wall);
    let half = (x1 - x0) / 2.0;
    let dx = x0 + half;
    let rise = 1.0 - (0.25 - half * half).sqrt();
    (2.25 - dx * dx).sqrt() - rise
}

/// Root of an increasing-or-decreasing `f` on `[lo, hi]`.
fn bisect(what: &'static str, f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64, TangencyError> {
    let flo = f(lo);
    if flo * f(hi) > 0.0 {
        return Err(TangencyError::NoConvergence { what, residual: flo.abs().min(f(hi).abs()) });
    }
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if (f(m) > 0.0) == (flo > 0.0) {
            lo = m;
        } else {
            hi = m;
        }
    }
    let x = 0.5 * (lo + hi);
    let residual = f(x).abs();
    if residual > 1e-12 {
        return Err(TangencyError::NoConvergence { what, residual });
    }
    Ok(x)
}

/// Displacement of the downstream disc from its first terminal at the
/// moment the small disc, held on the line through the arc point and
/// touching the upstream disc at rest, also touches the downstream disc.
fn component_tangency(what: &'static str, t1: Vec2, t2: Vec2, small: Vec2) -> Result<f64, TangencyError> {
    let dir = (t2 - t1).unit();
    bisect(what, |d| (t1 + dir * d).dist(small) - 1.5, 0.0, t1.dist(t2))
}

/// Solve every tangency system; `eps` selects approximated geometry for
/// the AND search.
pub fn tangency_thresholds(eps: Option<f64>) -> Result<Thresholds, TangencyError> {
    // C on the vertical through a, touching B at its top position
    let c = v(perp::a().x, perp::b_top().y - 1.5);
    let perpendicular = component_tangency("perpendicular", perp::t1(), perp::t2(), c)?;
    // C′ on the horizontal through a′, touching B′ at its start
    let c = v(par::b_start().x - 1.5, par::a().y);
    let parallel = component_tangency("parallel", par::t1(), par::t2(), c)?;
    let and_gate = and_gate_search(eps)?;
    Ok(Thresholds {
        perpendicular,
        perpendicular_closed: perpendicular_closed(),
        parallel,
        parallel_closed: parallel_closed(),
        and_gate,
        and_gate_closed: and_gate_closed(NOTCH_WALL),
    })
}

/// Canonical AND/OR gadget: out north, inputs west and east.
fn canonical(or: bool) -> GadgetGeometry {
    let g = if or { or_gadget(Dir::N, Dir::W, Dir::E) } else { and_gadget(Dir::N, Dir::W, Dir::E) };
    g.expect("canonical node gadget")
}

/// Index of the large robot whose pushed terminal is `p`.
fn large_at(g: &GadgetGeometry, p: Vec2) -> usize {
    g.robots
        .iter()
        .position(|r| r.class == RobotClass::Large && r.terminals[1].close(p, 1e-9))
        .expect("large disc at a known terminal")
}

fn segments(g: &GadgetGeometry) -> Vec<(Vec2, Vec2)> {
    g.robots.iter().filter(|r| r.class == RobotClass::Large).map(|r| (r.terminals[0], r.terminals[1])).collect()
}

/// Drop of the left blocking disc, from its pushed terminal `c`, needed
/// to clear a small disc at `p` sitting above it.
fn drop_needed(p: Vec2, c: Vec2) -> f64 {
    let h = 2.25 - (p.x - c.x).powi(2);
    if h <= 0.0 {
        0.0
    } else if p.y < c.y {
        f64::INFINITY
    } else {
        (h.sqrt() - (p.y - c.y)).max(0.0)
    }
}

/// Numeric AND threshold: both small discs must leave room for the
/// pushed out disc while the right blocking disc rests at its retracted
/// terminal. Minimise the drop the left blocking disc needs over every
/// such pair, first on a lattice over the exact free space, then by
/// zooming on one disc at a time.
fn and_gate_search(eps: Option<f64>) -> Result<f64, TangencyError> {
    let g = canonical(false);
    let p = CheckParams { delta: CLOSEUP_DELTA, epsilon: eps, budget: 0 };
    let dom = p.domain(&g);
    let a = v(9.0, 10.0);
    let c = v(7.0, 9.0);
    let c2 = v(11.0, 8.0);
    let large = segments(&g);
    let free = |q: Vec2| position_valid(&dom, q, 0.5, 0.0) && !permanent_occupancy(q, 0.5, &large);
    let ok = |q: Vec2| free(q) && q.dist(a) >= 1.5 - TOL && q.dist(c2) >= 1.5 - TOL;
    let cost = |q: Vec2, r: Vec2| drop_needed(q, c).max(drop_needed(r, c));
    let b = g.closeup.as_ref().expect("close-up").small[0];
    let lat = flood(g.robots[b].start, CLOSEUP_DELTA, free, 100_000);
    let pts: Vec<Vec2> = lat.points().filter(|&q| ok(q)).collect();
    let mut best = (f64::INFINITY, a, a);
    for (i, &q) in pts.iter().enumerate() {
        for &r in &pts[i + 1..] {
            if q.dist(r) >= 1.0 - TOL && cost(q, r) < best.0 {
                best = (cost(q, r), q, r);
            }
        }
    }
    if !best.0.is_finite() {
        return Err(TangencyError::NoConvergence { what: "and gate", residual: f64::INFINITY });
    }
    let mut step = CLOSEUP_DELTA;
    for _ in 0..12 {
        step /= 4.0;
        for side in 0..2 {
            let (mov, other) = if side == 0 { (best.1, best.2) } else { (best.2, best.1) };
            for i in -8..=8 {
                for j in -8..=8 {
                    let q = mov + v(i as f64 * step, j as f64 * step);
                    if ok(q) && q.dist(other) >= 1.0 - TOL && cost(q, other) < best.0 {
                        best = if side == 0 { (cost(q, other), q, other) } else { (cost(q, other), other, q) };
                    }
                }
            }
        }
    }
    Ok(best.0)
}

/// Lattice of valid centres for a disc of radius `r` from `anchor`. Small
/// discs also skip points a large disc always covers.
fn lattice(dom: &Domain, anchor: Vec2, r: f64, delta: f64, slack: f64, large: &[(Vec2, Vec2)]) -> Lattice {
    let small = r < 0.75;
    flood(anchor, delta, |q| position_valid(dom, q, r, slack) && !(small && permanent_occupancy(q, r - slack, large)), 200_000)
}

fn robot(r: f64, body: Body) -> Robot {
    Robot { r, body }
}

/// Slack for grid searches. Small discs often slide along a circle they
/// exactly fit, so their pockets are searched on a lattice four times finer
/// than the large discs' with this much overlap allowed; both stay well
/// below the margins the claims leave.
fn grid_slack(p: &CheckParams) -> f64 {
    p.delta / 4.0
}

/// Searches for one two-disc component: robot 1 (upstream) is pushed from
/// its first terminal, robot 0 (downstream) moves from `t1` towards `t2`,
/// and the small robot 2 floats. Returns the negative and positive findings.
fn component_search(name: &str, g: &GadgetGeometry, p: &CheckParams, threshold: f64) -> Result<Vec<Finding>, CspaceError> {
    let t1 = g.robots[0].terminals[0];
    let (u0, u1) = (g.robots[1].terminals[0], g.robots[1].terminals[1]);
    let dom = p.domain(g);
    let large = segments(g);
    let fine = p.delta / 4.0;
    let build = |slack: f64| Assembly {
        robots: vec![
            robot(1.0, Body::Stepped(lattice(&dom, t1, 1.0, p.delta, slack, &large))),
            robot(1.0, Body::Stepped(lattice(&dom, u0, 1.0, p.delta, slack, &large))),
            robot(0.5, Body::Floating(lattice(&dom, g.robots[2].start, 0.5, fine, slack, &large))),
        ],
        slack,
    };
    let start = [t1, u0, g.robots[2].start];
    let dir = (u1 - u0).unit();
    let margin = 2.0 * p.delta;
    // the upstream disc has left its start while the downstream one lags
    let bad = |lag: f64| move |c: &[Vec2]| (c[1] - u0).dot(dir) >= p.delta - TOL && c[0].dist(t1) < lag;
    let neg_asm = build(grid_slack(p));
    let neg = reachable(&neg_asm, &start, bad(threshold - margin), p.budget)?;
    // the largest lag the grid still rules out
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..12 {
        let mid = 0.5 * (lo + hi);
        if reachable(&neg_asm, &start, bad(mid), p.budget)?.found {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let pos_asm = build(grid_slack(p) + p.positive_slack());
    let Body::Stepped(ul) = &pos_asm.robots[1].body else { unreachable!() };
    let far = ul.points().map(|q| (q - u0).dot(dir)).fold(0.0, f64::max);
    let pos = reachable(&pos_asm, &start, |c| (c[1] - u0).dot(dir) >= far - TOL, p.budget)?;
    let moved = pos.path.as_ref().map_or(0.0, |path| path.last().unwrap()[0].dist(t1));
    Ok(vec![
        Finding::new(
            &format!("{name}.negative"),
            !neg.found,
            format!(
                "no state with the upstream disc moved while the downstream disc is within {:.4} of its start ({} states; grid bound {lo:.4})",
                threshold - margin,
                neg.states
            ),
        ),
        Finding::new(
            &format!("{name}.positive"),
            pos.found && far > 1.0 - p.delta - TOL,
            format!("upstream disc reaches its far end {far:.4}; downstream disc then moved {moved:.4} ({} states)", pos.states),
        ),
    ])
}

fn threshold_finding(id: &str, numeric: f64, closed: f64, tol: f64) -> Finding {
    Finding::new(id, (numeric - closed).abs() <= tol, format!("numeric {numeric:.10} closed form {closed:.10}"))
}

/// Perpendicular component: the upstream disc cannot move down before the
/// other has moved sqrt(2) - 1.
pub fn check_perpendicular(p: &CheckParams) -> Result<Vec<Finding>, CspaceError> {
    let g = perpendicular_component(&RigidTransform::IDENTITY);
    let t = tangency_thresholds(None).map_err(|e| CspaceError::BadStart(e.to_string()))?;
    let mut out = vec![threshold_finding("perpendicular.threshold", t.perpendicular, perpendicular_closed(), 1e-9)];
    out.extend(component_search("perpendicular", &g, p, perpendicular_closed())?);
    Ok(out)
}

/// Parallel component: the analogue with threshold sqrt(5)/2 - 1/2.
pub fn check_parallel(p: &CheckParams) -> Result<Vec<Finding>, CspaceError> {
    let g = parallel_component(&RigidTransform::IDENTITY);
    let t = tangency_thresholds(None).map_err(|e| CspaceError::BadStart(e.to_string()))?;
    let mut out = vec![threshold_finding("parallel.threshold", t.parallel, parallel_closed(), 1e-9)];
    out.extend(component_search("parallel", &g, p, parallel_closed())?);
    Ok(out)
}

/// Chain of a parallel and a perpendicular component: once the first disc
/// leaves its retracted terminal the last one must already be pushed.
pub fn check_chain(p: &CheckParams) -> Result<Vec<Finding>, CspaceError> {
    let ch = Chain::build(v(0.0, 0.0), v(1.0, 0.0), &[Link::Parallel { left: true }, Link::Perp { left: false }]);
    let dom = p.approx(ch.region.boundary());
    let large: Vec<(Vec2, Vec2)> = (0..ch.discs.len()).map(|i| (ch.retracted(i), ch.discs[i].0)).collect();
    let build = |slack: f64| {
        let mut robots: Vec<Robot> = large.iter().map(|&(r0, _)| robot(1.0, Body::Stepped(lattice(&dom, r0, 1.0, p.delta, slack, &large)))).collect();
        for &(s0, _) in &ch.smalls {
            robots.push(robot(0.5, Body::Floating(lattice(&dom, s0, 0.5, p.delta / 4.0, slack, &large))));
        }
        Assembly { robots, slack }
    };
    let start: Vec<Vec2> = large.iter().map(|l| l.0).chain(ch.smalls.iter().map(|s| s.0)).collect();
    let n = large.len() - 1;
    let bad = |c: &[Vec2]| c[0].dist(large[0].0) > p.delta + TOL && c[n].dist(large[n].1) > p.delta + TOL;
    let neg = reachable(&build(grid_slack(p)), &start, bad, p.budget)?;
    let pos = reachable(&build(grid_slack(p) + p.positive_slack()), &start, |c| c[0].dist(large[0].1) < TOL, p.budget)?;
    let (a, b) = (2.0 - 2f64.sqrt(), parallel_closed());
    Ok(vec![
        Finding::new("chain.inequality", a < b, format!("2-sqrt(2) = {a:.6} < sqrt(5)/2-1/2 = {b:.6}")),
        Finding::new(
            "chain.negative",
            !neg.found,
            format!("no state with the first disc off its retracted terminal and the last off its pushed terminal by more than {} ({} states)", p.delta, neg.states),
        ),
        Finding::new("chain.positive", pos.found, format!("first disc reaches its pushed terminal ({} states)", pos.states)),
    ])
}

const OUT_PUSHED: Vec2 = v(9.0, 10.0);
const LEFT_BLOCK: Vec2 = v(7.0, 9.0);
const RIGHT_BLOCK: Vec2 = v(11.0, 9.0);

/// Close-up search: the out disc (floating on its terminal segment), the
/// two small discs (stepped) and the two blocking discs pinned pushed or
/// retracted. Reports whether the out disc can reach its pushed terminal.
fn closeup_search(g: &GadgetGeometry, p: &CheckParams, pushed: [bool; 2], slack: f64) -> Result<super::SearchResult, CspaceError> {
    let dom = p.domain(g);
    let large = segments(g);
    let cu = g.closeup.as_ref().expect("close-up");
    let a0 = g.robots[large_at(g, OUT_PUSHED)].terminals[0];
    let out = flood(OUT_PUSHED, p.delta, |q| (q.x - OUT_PUSHED.x).abs() < TOL && q.y <= a0.y + TOL && position_valid(&dom, q, 1.0, slack), 1000);
    let block = |c: Vec2, push: bool| if push { c } else { c - v(0.0, 1.0) };
    let robots = vec![
        robot(1.0, Body::Floating(out)),
        robot(0.5, Body::Stepped(lattice(&dom, cu.strip[0], 0.5, p.delta, slack, &large))),
        robot(0.5, Body::Stepped(lattice(&dom, cu.strip[1], 0.5, p.delta, slack, &large))),
        robot(1.0, Body::Pinned(block(LEFT_BLOCK, pushed[0]))),
        robot(1.0, Body::Pinned(block(RIGHT_BLOCK, pushed[1]))),
    ];
    let start = [a0, cu.strip[0], cu.strip[1], block(LEFT_BLOCK, pushed[0]), block(RIGHT_BLOCK, pushed[1])];
    reachable(&Assembly { robots, slack }, &start, |c| c[0].dist(OUT_PUSHED) < TOL, p.budget)
}

/// Port states as `configure` takes them, in port order.
fn states(g: &GadgetGeometry, out: bool, left: bool, right: bool) -> Vec<bool> {
    let cu = g.closeup.as_ref().expect("close-up");
    let mut s = vec![false; g.ports.len()];
    s[cu.out] = out;
    s[cu.left] = left;
    s[cu.right] = right;
    s
}

/// Scripted witness from `from` port states: move the small discs through
/// `legs` (one leg per entry, each a list of `(small index, target)`),
/// then push the out chain. The last frame must match the placement the
/// compiler uses for `out` inside.
fn witness(g: &GadgetGeometry, p: &CheckParams, left_in: bool, right_in: bool, legs: &[&[(usize, Vec2)]]) -> Finding {
    let cu = g.closeup.clone().expect("close-up");
    let mut h = g.clone();
    h.configure(&states(g, false, left_in, right_in));
    let mut frames = vec![h.robots.iter().map(|r| r.start).collect::<Vec<_>>()];
    for leg in legs {
        let mut f = frames.last().unwrap().clone();
        for &(k, to) in *leg {
            f[cu.small[k]] = to;
        }
        frames.push(f);
    }
    let mut f = frames.last().unwrap().clone();
    for (i, r) in h.robots.iter().enumerate() {
        if r.driver == Some(cu.out) {
            f[i] = r.terminals[1];
        }
    }
    frames.push(f);
    let mut done = g.clone();
    done.configure(&states(g, true, left_in, right_in));
    let matches = done.robots.iter().zip(frames.last().unwrap()).all(|(r, q)| r.start.close(*q, 1e-9));
    let radii: Vec<f64> = h.robots.iter().map(|r| r.class.radius()).collect();
    let s = Schedule::from_frames(&frames);
    let id = format!("{}.witness", if g.kind == crate::gadget::GadgetKind::And { "and" } else { "or" });
    match validate_schedule(&p.domain(g), &radii, &s, SCHEDULE_DT, p.positive_slack()) {
        Ok(rep) => Finding::new(
            &id,
            matches,
            format!("{} legs, {} samples at dt {SCHEDULE_DT}, certified {}, ends at the compiled placement {matches}", frames.len() - 1, rep.samples, rep.certified),
        ),
        Err(e) => Finding::new(&id, false, e.to_string()),
    }
}

fn search_finding(id: &str, want: bool, r: &super::SearchResult, what: &str) -> Finding {
    Finding::new(id, r.found == want, format!("{what}: {} ({} states)", if r.found { "reachable" } else { "unreachable" }, r.states))
}

/// AND gadget: `out` enters only when both inputs are out.
pub fn check_and(p: &CheckParams) -> Result<Vec<Finding>, CspaceError> {
    let g = canonical(false);
    let slack = grid_slack(p);
    let mut out = Vec::new();
    match and_gate_search(p.epsilon) {
        Ok(t) => {
            let tol = 5e-5 + 2.0 * p.epsilon.unwrap_or(0.0);
            out.push(Finding::new(
                "and.threshold",
                (t - AND_THRESHOLD).abs() <= tol && (and_gate_closed(NOTCH_WALL) - AND_THRESHOLD).abs() <= 5e-5,
                format!("numeric {t:.6} closed form {:.6} target {AND_THRESHOLD}", and_gate_closed(NOTCH_WALL)),
            ));
        }
        Err(e) => out.push(Finding::new("and.threshold", false, e.to_string())),
    }
    let r = closeup_search(&g, p, [true, false], slack)?;
    out.push(search_finding("and.negative.in1", false, &r, "out pushed with the left input inside"));
    let r = closeup_search(&g, p, [false, true], slack)?;
    out.push(search_finding("and.negative.in2", false, &r, "out pushed with the right input inside"));
    let r = closeup_search(&g, p, [false, false], slack + p.positive_slack())?;
    out.push(search_finding("and.positive", true, &r, "out pushed with both inputs outside"));
    let cu = g.closeup.clone().expect("close-up");
    out.push(witness(&g, p, false, false, &[&[(0, cu.open_left[0]), (1, cu.open_left[1])]]));
    Ok(out)
}

/// Protected OR: `out` enters when at least one input is out, and both
/// small discs fit in the freed pocket.
pub fn check_or(p: &CheckParams) -> Result<Vec<Finding>, CspaceError> {
    let g = canonical(true);
    let slack = grid_slack(p);
    let mut out = Vec::new();
    let r = closeup_search(&g, p, [true, true], slack)?;
    out.push(search_finding("or.negative", false, &r, "out pushed with both inputs inside"));
    let r = closeup_search(&g, p, [false, true], slack + p.positive_slack())?;
    out.push(search_finding("or.positive.in1", true, &r, "out pushed with only the left input outside"));
    let r = closeup_search(&g, p, [true, false], slack + p.positive_slack())?;
    out.push(search_finding("or.positive.in2", true, &r, "out pushed with only the right input outside"));
    let cu = g.closeup.clone().expect("close-up");
    let mut w = witness(&g, p, false, true, &[&[(0, cu.open_left[0])], &[(1, cu.open_left[1])]]);
    w.id = "or.witness.in1".into();
    out.push(w);
    let mut w = witness(&g, p, true, false, &[&[(1, cu.open_right[1])], &[(0, cu.open_right[0])]]);
    w.id = "or.witness.in2".into();
    out.push(w);
    for (id, left_in, right_in) in [("or.pocket.left", false, true), ("or.pocket.right", true, false)] {
        let mut h = g.clone();
        h.configure(&states(&g, true, left_in, right_in));
        let radii: Vec<f64> = h.robots.iter().map(|r| r.class.radius()).collect();
        let c: Vec<Vec2> = h.robots.iter().map(|r| r.start).collect();
        let bad = first_conflict(&p.domain(&g), &radii, &c, p.positive_slack());
        let spots = [c[cu.small[0]], c[cu.small[1]]];
        out.push(Finding::new(
            id,
            bad.is_none(),
            match bad {
                None => format!("both small discs fit at {:?} beside the open blocking disc", spots.map(|q| (q.x, q.y))),
                Some(v) => v.to_string(),
            },
        ));
    }
    Ok(out)
}

/// Connector mutual exclusion by propagation along the chain. Each large
/// disc sits at a fraction `s` of the way from retracted to pushed, on a
/// grid of step delta. Neighbours must not overlap, and a link's small
/// disc needs a spot in its pocket clear of both neighbours. Every test is
/// loosened by delta, more than the grids can hide, so the feasible sets
/// over-approximate the continuum. Starting from the first disc pushed,
/// the last disc must not be able to sit retracted.
pub fn check_connector(kind: ConnectorKind, ports: (Dir, Dir), p: &CheckParams) -> Result<Finding, CspaceError> {
    let g = connector_gadget(kind, ports).map_err(CspaceError::BadStart)?;
    let dom = p.domain(&g);
    let slack = p.delta;
    let large = segments(&g);
    let n = large.len();
    let steps = (1.0 / p.delta).round() as usize;
    let at = |i: usize, k: usize| large[i].0 + (large[i].1 - large[i].0) * (k as f64 / steps as f64);
    // pocket lattice per link, if the link has a small disc
    let mut pockets: Vec<Vec<Lattice>> = vec![Vec::new(); n - 1];
    for r in g.robots.iter().filter(|r| r.class == RobotClass::Small) {
        let link = (0..n - 1)
            .min_by(|&i, &j| {
                let d = |i: usize| r.start.dist(large[i].0) + r.start.dist(large[i + 1].0);
                d(i).partial_cmp(&d(j)).unwrap()
            })
            .expect("chain has links");
        pockets[link].push(lattice(&dom, r.start, 0.5, p.delta / 2.0, slack, &large));
    }
    let mut reach = vec![false; steps + 1];
    reach[steps] = true;
    for i in 0..n - 1 {
        let mut next = vec![false; steps + 1];
        for (k2, nx) in next.iter_mut().enumerate() {
            let q2 = at(i + 1, k2);
            *nx = (0..=steps).filter(|&k| reach[k]).any(|k| {
                let q1 = at(i, k);
                q1.dist(q2) >= 2.0 - TOL - slack
                    && pockets[i].iter().all(|l| l.points().any(|s| s.dist(q1) >= 1.5 - TOL - slack && s.dist(q2) >= 1.5 - TOL - slack))
            });
        }
        reach = next;
        if !reach.iter().any(|&b| b) {
            break;
        }
    }
    let least = reach.iter().position(|&b| b).map(|k| k as f64 / steps as f64);
    let id = format!("connector.{}.{}{}", if kind == ConnectorKind::Straight { "straight" } else { "corner" }, ports.0, ports.1);
    Ok(match least {
        Some(s) => Finding::new(
            &id,
            s > 0.0 && reach[steps],
            format!("first disc pushed leaves the last disc at fraction >= {s:.2} of the way to pushed; fully pushed feasible {}", reach[steps]),
        ),
        None => Finding::new(&id, false, "no feasible placement with the first disc pushed".into()),
    })
}

/// Both connector shapes, the corner turning either way.
pub fn check_connectors(p: &CheckParams) -> Result<Vec<Finding>, CspaceError> {
    [(ConnectorKind::Straight, (Dir::W, Dir::E)), (ConnectorKind::Corner, (Dir::W, Dir::N)), (ConnectorKind::Corner, (Dir::W, Dir::S))]
        .into_iter()
        .map(|(k, d)| check_connector(k, d, p))
        .collect()
}
