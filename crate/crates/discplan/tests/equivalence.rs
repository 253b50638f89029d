use discplan::equivalence::*;
use discplan::layout::{cell_plan, embed, sample_graph, CellPlan};
use discplan::ncl::{first_valid_state, ConstraintGraph};
mod common;

use common::*;

fn plan(g: &ConstraintGraph, seed: u64) -> CellPlan {
    cell_plan(g, &embed(g, seed).unwrap()).unwrap()
}

fn report(g: &ConstraintGraph, opts: &ReportOptions) -> EquivalenceReport {
    equivalence_report(g, &plan(g, 0), opts).unwrap()
}

#[test]
fn k4_network_has_one_chain_per_edge() {
    let g = k4();
    let net = build_network(&g, &plan(&g, 0)).unwrap();
    assert_eq!(net.chains.len(), 6);
    let c = net.collapsed();
    assert_eq!(c.vars.len(), 6);
    assert_eq!(c.contracts.len(), 4);
}

#[test]
fn identity_goal_needs_no_moves() {
    let g = k4();
    let net = build_network(&g, &plan(&g, 0)).unwrap();
    let a = net.encode(&g, &first_valid_state(&g).unwrap().unwrap()).unwrap();
    assert_eq!(abstract_reachable(&net, a, |x| x == a, 1000).unwrap(), (true, vec![]));
    assert_eq!(net.decode(&g, a).unwrap(), first_valid_state(&g).unwrap().unwrap());
}

#[test]
fn k4_report_passes() {
    let r = report(&k4(), &ReportOptions::default());
    assert!(r.pass(), "{r}");
    let ids: Vec<&str> = r.findings.iter().map(|f| f.id.as_str()).collect();
    assert_eq!(ids, ["structure", "transparency", "bisimulation", "queries"]);
}

#[test]
fn random_k4_designations_agree() {
    let mut tried = 0;
    for seed in 0..40 {
        let Some(g) = random_k4(seed) else { continue };
        tried += 1;
        for layout_seed in 0..2 {
            let r = equivalence_report(&g, &plan(&g, layout_seed), &ReportOptions { seed, ..Default::default() }).unwrap();
            assert!(r.pass(), "seed {seed}:\n{r}");
        }
    }
    assert!(tried >= 20);
}

#[test]
fn corrupted_and_is_caught() {
    let mut caught = 0;
    for seed in 0..40 {
        let Some(g) = random_k4(seed) else { continue };
        if !g.nodes.iter().any(|n| n.kind == discplan::ncl::NodeKind::And) {
            continue;
        }
        let r = report(&g, &ReportOptions { corrupt_and: true, ..Default::default() });
        caught += usize::from(r.findings.iter().any(|f| f.id == "queries" && !f.pass));
    }
    assert!(caught > 0);
}

#[test]
fn sample_graph_report_passes() {
    let g = sample_graph();
    let r = report(&g, &ReportOptions { trials: 100, ..Default::default() });
    assert!(r.pass(), "{r}");
}

#[test]
fn empty_graph_report_is_empty() {
    let g = ConstraintGraph::default();
    let r = equivalence_report(&g, &CellPlan::default(), &ReportOptions::default()).unwrap();
    assert!(r.findings.is_empty() && r.pass());
}
