use discplan::ncl::*;
mod common;

use common::oracle;
use common::*;

#[test]
fn k4_designations_match_brute_force() {
    let all = oracle::k4_designations();
    assert_eq!(all.len(), 81 + 4 * 3 + 3);
    let mut checks = 0;
    for g in &all {
        assert!(validate_graph(g).is_empty(), "{:?}", validate_graph(g));
        checks += oracle::agree(g).unwrap_or_else(|e| panic!("{}\n{e}", write_graph(g, None)));
    }
    assert!(checks > 10_000);
}

#[test]
fn graph_text_round_trips() {
    for g in [k4(), prism(), cube(), discplan::layout::sample_graph()] {
        let s = first_valid_state(&g).unwrap();
        let text = write_graph(&g, s.as_ref());
        let (h, t) = read_graph(&text).unwrap();
        assert_eq!((&h, &t), (&g, &s));
        assert_eq!(write_graph(&h, t.as_ref()), text);
    }
}

#[test]
fn identity_query_has_empty_witness() {
    let g = k4();
    let s = first_valid_state(&g).unwrap().unwrap();
    let (ok, w) = decide(&g, &NclQuery::StateToState { from: s.clone(), to: s.clone() }).unwrap();
    assert!(ok);
    assert!(w.unwrap().flips.is_empty());
}

#[test]
fn planarity_of_known_graphs() {
    assert_eq!(is_planar(&k4()), Some(true));
    assert_eq!(is_planar(&prism()), Some(true));
    assert_eq!(is_planar(&cube()), Some(true));
    let mut k33 = ConstraintGraph::default();
    for i in 0..6 {
        k33.add_node(&format!("n{i}"), NodeKind::ProtectedOr);
    }
    for a in 0..3 {
        for b in 3..6 {
            k33.add_edge(&format!("e{a}{b}"), &format!("n{a}"), &format!("n{b}"), 2);
        }
    }
    assert_eq!(is_planar(&k33), Some(false));
    assert!(validate_graph(&k33).iter().any(|v| v.to_string().contains("planar")));
}

#[test]
fn bad_graphs_name_the_culprit() {
    let (g, _) = read_graph("node a AND\nnode b POR\nedge x a b 1\n").unwrap();
    let v: Vec<String> = validate_graph(&g).iter().map(|x| x.to_string()).collect();
    assert!(v.iter().any(|m| m.contains('a')), "{v:?}");
    assert!(read_graph("node a XOR\n").is_err());
}
