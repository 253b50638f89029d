use discplan::compiler::*;
use discplan::layout::{cell_plan, embed, sample_graph, CellPlan};
use discplan::ncl::{first_valid_state, flip, legal_flips, ConstraintGraph};
mod common;

use common::audit::audit;
use common::*;

fn build(g: &ConstraintGraph, seed: u64) -> (CellPlan, Compiled) {
    let plan = cell_plan(g, &embed(g, seed).unwrap()).unwrap();
    let s = first_valid_state(g).unwrap().unwrap();
    let c = compile(g, &plan, &s, Variant::MultiToMulti, &Payload::Goal(s.clone())).unwrap();
    (plan, c)
}

#[test]
fn compiled_instances_pass_the_structural_audit() {
    for (name, g) in [("k4", k4()), ("sample", sample_graph())] {
        let (plan, c) = build(&g, 0);
        let bad = audit(&c, &plan, 0.1);
        assert!(bad.is_empty(), "{name}: {bad:#?}");
    }
}

#[test]
fn audit_catches_a_displaced_edge_robot() {
    let (plan, mut c) = build(&k4(), 0);
    let i = *c.edge_of.keys().next().unwrap();
    c.robots[i].start.x += 0.5;
    assert!(audit(&c, &plan, 0.1).iter().any(|m| m.contains("terminal")));
    let (plan, mut c) = build(&k4(), 0);
    c.region.add(discplan::geom::Shape::rect(18.2, 2.0, 18.8, 3.0));
    assert!(!audit(&c, &plan, 0.1).is_empty());
}

#[test]
fn instance_text_round_trips() {
    for g in [k4(), sample_graph()] {
        let (_, c) = build(&g, 0);
        for inst in [c.instance.clone(), approximate_arcs(&c.instance, ArcApproxParams { epsilon: 1e-3 }).unwrap()] {
            let text = write_instance(&inst);
            let back = read_instance(&text).unwrap();
            assert_eq!(back, inst);
            assert_eq!(write_instance(&back), text);
        }
    }
}

#[test]
fn svg_is_deterministic_and_draws_every_robot() {
    let (_, a) = build(&k4(), 0);
    let (_, b) = build(&k4(), 0);
    let svg = render_svg(&a.instance);
    assert_eq!(svg, render_svg(&b.instance));
    assert_eq!(svg.matches("<circle").count(), a.instance.robot_count());
    assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
}

#[test]
fn goal_targets_follow_a_flip() {
    let g = k4();
    let plan = cell_plan(&g, &embed(&g, 0).unwrap()).unwrap();
    let s = first_valid_state(&g).unwrap().unwrap();
    let e = legal_flips(&g, &s).unwrap().into_iter().next().unwrap();
    let t = flip(&g, &s, &e).unwrap();
    let c = compile(&g, &plan, &s, Variant::MultiToMulti, &Payload::Goal(t)).unwrap();
    let Targets::Full(goal) = &c.instance.targets else { panic!("full targets expected") };
    let moved: usize = goal.iter().zip(&c.instance.classes).map(|(gs, cl)| gs.iter().zip(&cl.starts).filter(|(p, q)| !p.close(**q, 1e-9)).count()).sum();
    assert!(moved > 0);
    assert_eq!(goal.iter().map(Vec::len).sum::<usize>(), c.instance.robot_count());
}

#[test]
fn single_target_variants() {
    let g = k4();
    let plan = cell_plan(&g, &embed(&g, 0).unwrap()).unwrap();
    let s = first_valid_state(&g).unwrap().unwrap();
    let c = compile(&g, &plan, &s, Variant::MultiToSingleInClass, &Payload::Edge("e0".into())).unwrap();
    assert!(matches!(c.instance.targets, Targets::PointInClass(_, 1)));
    assert_eq!(c.instance.variant(), Variant::MultiToSingleInClass);
    assert!(compile(&g, &plan, &s, Variant::MultiToSingle, &Payload::Goal(s.clone())).is_err());
}

#[test]
fn arc_chains_stay_within_epsilon() {
    let (_, c) = build(&k4(), 0);
    let dom = &c.instance.domain;
    let mut arcs = 0;
    for pc in dom.pieces.iter().filter(|p| matches!(p, discplan::geom::Piece::Arc { .. })) {
        arcs += 1;
        let chain = arc_chain(pc, dom.free_inside(pc), 1e-3);
        assert!(max_deviation(pc, &chain) <= 1e-3 + 1e-12);
    }
    assert!(arcs > 0);
}
