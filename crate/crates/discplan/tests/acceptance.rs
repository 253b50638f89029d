//! Acceptance suite: one PASS/FAIL line per criterion, with runtimes.

use discplan::compiler::{arc_chain, compile, max_deviation, read_instance, render_svg, write_instance, Compiled, Payload, Variant};
use discplan::cspace::lemmas::{self, CheckParams, Finding};
use discplan::equivalence::{abstract_reachable, build_network, equivalence_report, ReportOptions};
use discplan::gadget::{and_gadget, connector_gadget, or_gadget, parallel_component, perpendicular_component, ConnectorKind, Dir};
use discplan::geom::{Domain, Piece, RigidTransform};
use discplan::layout::{cell_plan, embed, read_layout, sample_graph, write_layout, CellPlan};
use discplan::ncl::{decide, first_valid_state, read_graph, write_graph, ConstraintGraph, NclQuery};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

mod common;

use common::{audit::audit, k4, oracle, random_k4};

type Outcome = Result<String, String>;

fn all_pass(fs: &[Finding]) -> Outcome {
    let failed: Vec<String> = fs.iter().filter(|f| !f.pass).map(|f| f.to_string()).collect();
    if failed.is_empty() {
        Ok(format!("{} checks", fs.len()))
    } else {
        Err(failed.join(" | "))
    }
}

fn near(what: &str, got: f64, want: f64, tol: f64) -> Outcome {
    if (got - want).abs() <= tol {
        Ok(format!("{what} {got:.10}"))
    } else {
        Err(format!("{what} {got:.10}, expected {want:.10} within {tol:e}"))
    }
}

fn compiled(g: &ConstraintGraph) -> (CellPlan, Compiled) {
    let plan = cell_plan(g, &embed(g, 0).unwrap()).unwrap();
    let s = first_valid_state(g).unwrap().unwrap();
    let c = compile(g, &plan, &s, Variant::MultiToMulti, &Payload::Goal(s.clone())).unwrap();
    (plan, c)
}

fn c1() -> Outcome {
    let graphs = oracle::k4_designations();
    let mut checks = 0;
    for g in &graphs {
        checks += oracle::agree(g).map_err(|e| format!("{}: {e}", write_graph(g, None).replace('\n', "; ")))?;
    }
    Ok(format!("{} K4 designations, {checks} checks agree", graphs.len()))
}

fn component(p: &CheckParams, eps: Option<f64>, which: &str) -> Outcome {
    let t = lemmas::tangency_thresholds(eps).map_err(|e| e.to_string())?;
    let (numeric, closed, want, fs) = match which {
        "perpendicular" => (t.perpendicular, t.perpendicular_closed, 2f64.sqrt() - 1.0, lemmas::check_perpendicular(p)),
        _ => (t.parallel, t.parallel_closed, (5f64.sqrt() - 1.0) / 2.0, lemmas::check_parallel(p)),
    };
    let a = near("closed", closed, want, 1e-9)?;
    if which == "parallel" {
        // the published constant is quoted to seven places
        near("quoted", closed, 0.6180340, 5e-8)?;
    }
    let b = near("numeric", numeric, closed, 1e-9)?;
    let c = all_pass(&fs.map_err(|e| e.to_string())?)?;
    Ok(format!("{a}, {b}, {c}"))
}

fn c4(p: &CheckParams) -> Outcome {
    let (lo, hi) = (2.0 - 2f64.sqrt(), lemmas::parallel_closed());
    if !(lo < hi) {
        return Err(format!("2 - sqrt 2 = {lo} is not below {hi}"));
    }
    let r = all_pass(&lemmas::check_chain(p).map_err(|e| e.to_string())?)?;
    Ok(format!("{r}, {lo:.6} < {hi:.6}"))
}

fn c5(p: &CheckParams, eps: Option<f64>) -> Outcome {
    let t = lemmas::tangency_thresholds(eps).map_err(|e| e.to_string())?;
    let shift = eps.map_or(0.0, |e| 2.0 * e);
    let a = near("threshold", t.and_gate, lemmas::AND_THRESHOLD, 5e-5 + shift)?;
    let b = all_pass(&lemmas::check_and(p).map_err(|e| e.to_string())?)?;
    Ok(format!("{a}, {b}"))
}

fn c6(p: &CheckParams) -> Outcome {
    all_pass(&lemmas::check_or(p).map_err(|e| e.to_string())?)
}

fn c7(p: &CheckParams) -> Outcome {
    let fs = lemmas::check_connectors(p).map_err(|e| e.to_string())?;
    let r = all_pass(&fs)?;
    Ok(format!("{r} ({})", fs.iter().map(|f| f.id.as_str()).collect::<Vec<_>>().join(", ")))
}

fn c8() -> Outcome {
    let mut n = 0;
    for (name, g) in [("k4", k4()), ("sample", sample_graph())] {
        let (plan, c) = compiled(&g);
        let bad = audit(&c, &plan, 0.1);
        if !bad.is_empty() {
            return Err(format!("{name}: {}", bad.join("; ")));
        }
        n += c.instance.robot_count();
    }
    Ok(format!("K4 and sample graph clean ({n} robots)"))
}

fn worst_arc(dom: &Domain, eps: f64) -> (usize, f64) {
    let mut worst: f64 = 0.0;
    let mut arcs = 0;
    for pc in dom.pieces.iter().filter(|p| matches!(p, Piece::Arc { .. })) {
        arcs += 1;
        worst = worst.max(max_deviation(pc, &arc_chain(pc, dom.free_inside(pc), eps)));
    }
    (arcs, worst)
}

fn c9() -> Outcome {
    let eps = 1e-3;
    let mut domains: Vec<Domain> = [k4(), sample_graph()].iter().map(|g| compiled(g).1.instance.domain).collect();
    let id = RigidTransform::IDENTITY;
    for g in [
        and_gadget(Dir::N, Dir::W, Dir::E).unwrap(),
        or_gadget(Dir::N, Dir::W, Dir::E).unwrap(),
        connector_gadget(ConnectorKind::Straight, (Dir::W, Dir::E)).unwrap(),
        connector_gadget(ConnectorKind::Corner, (Dir::W, Dir::N)).unwrap(),
        perpendicular_component(&id),
        parallel_component(&id),
    ] {
        domains.push(g.region.boundary());
    }
    let (mut arcs, mut worst) = (0, 0.0f64);
    for d in &domains {
        let (a, w) = worst_arc(d, eps);
        arcs += a;
        worst = worst.max(w);
    }
    if worst > eps {
        return Err(format!("arc deviation {worst:e} exceeds {eps:e}"));
    }
    let exact = lemmas::tangency_thresholds(None).map_err(|e| e.to_string())?;
    let approx = lemmas::tangency_thresholds(Some(eps)).map_err(|e| e.to_string())?;
    let shift = (exact.and_gate - approx.and_gate).abs().max((exact.perpendicular - approx.perpendicular).abs()).max((exact.parallel - approx.parallel).abs());
    if shift > 2.0 * eps {
        return Err(format!("thresholds shift by {shift:e}"));
    }
    let comp = CheckParams { epsilon: Some(eps), ..CheckParams::component() };
    let close = CheckParams { epsilon: Some(eps), ..CheckParams::closeup() };
    let reruns: [(&str, Outcome); 6] = [
        ("2", component(&comp, Some(eps), "perpendicular")),
        ("3", component(&comp, Some(eps), "parallel")),
        ("4", c4(&comp)),
        ("5", c5(&close, Some(eps))),
        ("6", c6(&close)),
        ("7", c7(&comp)),
    ];
    let failed: Vec<String> = reruns.iter().filter_map(|(k, r)| r.as_ref().err().map(|e| format!("criterion {k}: {e}"))).collect();
    if !failed.is_empty() {
        return Err(failed.join(" | "));
    }
    Ok(format!("{arcs} arcs, max deviation {worst:.2e}, threshold shift {shift:.2e}, criteria 2-7 pass"))
}

fn c10() -> Outcome {
    let g = k4();
    let plan = cell_plan(&g, &embed(&g, 0).unwrap()).unwrap();
    let r = equivalence_report(&g, &plan, &ReportOptions::default()).map_err(|e| e.to_string())?;
    if !r.pass() {
        return Err(r.to_string().replace('\n', " | "));
    }
    let exhaustive = r.findings.iter().find(|f| f.id == "queries").map(|f| f.detail.clone()).unwrap_or_default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let (mut asked, mut yes) = (0, 0);
    while asked < 100 {
        let Some(g) = random_k4(rng.gen()) else { continue };
        let plan = cell_plan(&g, &embed(&g, rng.gen_range(0..4)).unwrap()).unwrap();
        let net = build_network(&g, &plan).map_err(|e| e.to_string())?;
        let valid: Vec<u32> = (0..64).filter(|&m| oracle::good(&g, m)).collect();
        let (s, t) = (oracle::state(&g, *valid.choose(&mut rng).unwrap()), oracle::state(&g, *valid.choose(&mut rng).unwrap()));
        let (want, _) = decide(&g, &NclQuery::StateToState { from: s.clone(), to: t.clone() }).map_err(|e| e.to_string())?;
        let goal = net.encode(&g, &t).map_err(|e| e.to_string())?;
        let (got, _) = abstract_reachable(&net, net.encode(&g, &s).map_err(|e| e.to_string())?, |a| a == goal, 1_000_000).map_err(|e| e.to_string())?;
        if want != got {
            return Err(format!("random query {asked}: NCL {want}, network {got} on {}", write_graph(&g, None).replace('\n', "; ")));
        }
        asked += 1;
        yes += usize::from(want);
    }
    Ok(format!("K4 {exhaustive}; 100 random queries agree ({yes} reachable)"))
}

fn c11() -> Outcome {
    for g in [k4(), sample_graph()] {
        let s = first_valid_state(&g).unwrap();
        let text = write_graph(&g, s.as_ref());
        let (h, t) = read_graph(&text).map_err(|e| e.to_string())?;
        if write_graph(&h, t.as_ref()) != text {
            return Err("graph text does not round-trip".into());
        }
        let l = embed(&g, 0).unwrap();
        let lt = write_layout(&l);
        if write_layout(&read_layout(&lt).map_err(|e| e.to_string())?) != lt {
            return Err("layout text does not round-trip".into());
        }
        let (_, c) = compiled(&g);
        let it = write_instance(&c.instance);
        let back = read_instance(&it).map_err(|e| e.to_string())?;
        if write_instance(&back) != it || back != c.instance {
            return Err("instance text does not round-trip".into());
        }
        if render_svg(&c.instance) != render_svg(&back) || render_svg(&c.instance) != render_svg(&compiled(&g).1.instance) {
            return Err("SVG render is not deterministic".into());
        }
    }
    Ok("graph, layout and instance text byte-exact; SVG deterministic".into())
}

fn main() -> ExitCode {
    // skip when cargo test filters or lists tests
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let comp = CheckParams::component();
    let close = CheckParams::closeup();
    let criteria: Vec<(u32, &str, f64, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "ncl oracle equivalence", 60.0, Box::new(c1)),
        (2, "perpendicular threshold", 120.0, Box::new(move || component(&comp, None, "perpendicular"))),
        (3, "parallel threshold", 120.0, Box::new(move || component(&comp, None, "parallel"))),
        (4, "chain property", f64::INFINITY, Box::new(move || c4(&comp))),
        (5, "and gadget contract", f64::INFINITY, Box::new(move || c5(&close, None))),
        (6, "protected-or contract", f64::INFINITY, Box::new(move || c6(&close))),
        (7, "connector contract", f64::INFINITY, Box::new(move || c7(&comp))),
        (8, "structural audit", 60.0, Box::new(c8)),
        (9, "arc approximation soundness", f64::INFINITY, Box::new(c9)),
        (10, "abstract equivalence", 120.0, Box::new(c10)),
        (11, "round trips", f64::INFINITY, Box::new(c11)),
    ];
    let mut failed = 0;
    for (k, name, limit, run) in &criteria {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(|| run())).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        let r = match r {
            Ok(d) if secs > *limit => Err(format!("{d}; took {secs:.1} s, limit {limit} s")),
            r => r,
        };
        match &r {
            Ok(d) => println!("PASS {k} {name}: {d} ({secs:.1} s)"),
            Err(e) => {
                failed += 1;
                println!("FAIL {k} {name}: {e} ({secs:.1} s)");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
