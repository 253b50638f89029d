use discplan::cspace::lemmas::{and_gate_closed, tangency_thresholds, AND_THRESHOLD};
use discplan::gadget::NOTCH_WALL;

#[test]
fn tangency_values_match_closed_forms() {
    let t = tangency_thresholds(None).unwrap();
    println!("{t:?}");
    assert!((t.perpendicular - t.perpendicular_closed).abs() < 1e-9);
    assert!((t.parallel - t.parallel_closed).abs() < 1e-9);
    assert!((and_gate_closed(NOTCH_WALL) - AND_THRESHOLD).abs() < 5e-5);
    assert!((t.and_gate - AND_THRESHOLD).abs() < 5e-5, "numeric {}", t.and_gate);
}

#[test]
fn components_hold_their_thresholds() {
    use discplan::cspace::lemmas::{check_parallel, check_perpendicular, CheckParams};
    for f in check_perpendicular(&CheckParams::component()).unwrap().into_iter().chain(check_parallel(&CheckParams::component()).unwrap()) {
        println!("{f}");
        assert!(f.pass, "{f}");
    }
}

#[test]
fn chain_end_discs_are_exclusive() {
    use discplan::cspace::lemmas::{check_chain, CheckParams};
    for f in check_chain(&CheckParams::component()).unwrap() {
        println!("{f}");
        assert!(f.pass, "{f}");
    }
}

#[test]
fn node_gadget_contracts() {
    use discplan::cspace::lemmas::{check_and, check_or, CheckParams};
    for f in check_and(&CheckParams::closeup()).unwrap().into_iter().chain(check_or(&CheckParams::closeup()).unwrap()) {
        println!("{f}");
        assert!(f.pass, "{f}");
    }
}

#[test]
fn connector_ends_are_exclusive() {
    use discplan::cspace::lemmas::{check_connectors, CheckParams};
    for f in check_connectors(&CheckParams::component()).unwrap() {
        println!("{f}");
        assert!(f.pass, "{f}");
    }
}

#[test]
fn lemma_suite_survives_arc_approximation() {
    use discplan::cspace::lemmas::*;
    let comp = CheckParams { epsilon: Some(1e-3), ..CheckParams::component() };
    let close = CheckParams { epsilon: Some(1e-3), ..CheckParams::closeup() };
    let mut all = check_perpendicular(&comp).unwrap();
    all.extend(check_parallel(&comp).unwrap());
    all.extend(check_chain(&comp).unwrap());
    all.extend(check_and(&close).unwrap());
    all.extend(check_or(&close).unwrap());
    all.extend(check_connectors(&comp).unwrap());
    for f in all {
        println!("{f}");
        assert!(f.pass, "{f}");
    }
}
