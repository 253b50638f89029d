use discplan::compiler::{arc_chain, max_deviation};
use discplan::cspace::{read_schedule, write_schedule, Schedule};
use discplan::geom::{v, Piece, RigidTransform};
use discplan::ncl::{flip, is_protected_safe, is_valid_state, legal_flips};
use proptest::prelude::*;
mod common;

use common::oracle;

fn transform() -> impl Strategy<Value = RigidTransform> {
    (0u8..4, any::<bool>(), -50.0..50.0f64, -50.0..50.0f64).prop_map(|(r, m, x, y)| RigidTransform::new(r, m, v(x, y)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn transforms_are_isometries(t in transform(), a in (-20.0..20.0f64, -20.0..20.0f64), b in (-20.0..20.0f64, -20.0..20.0f64)) {
        let (p, q) = (v(a.0, a.1), v(b.0, b.1));
        prop_assert!((t.apply(p).dist(t.apply(q)) - p.dist(q)).abs() < 1e-12);
        prop_assert!(t.inverse().apply(t.apply(p)).close(p, 1e-9));
        prop_assert!(t.compose(&t.inverse()).apply(q).close(q, 1e-9));
    }

    #[test]
    fn four_quarter_turns_are_identity(c in (-5.0..5.0f64, -5.0..5.0f64), p in (-20.0..20.0f64, -20.0..20.0f64)) {
        let r = RigidTransform::rotation_about(1, v(c.0, c.1));
        let t = r.compose(&r).compose(&r).compose(&r);
        prop_assert!(t.apply(v(p.0, p.1)).close(v(p.0, p.1), 1e-9));
    }

    #[test]
    fn arc_chains_respect_epsilon(r in 0.5..3.0f64, a0 in 0.0..6.0f64, span in 0.05..6.2f64, inside in any::<bool>(), e in 1e-4..1e-1f64) {
        let arc = Piece::arc(v(1.0, 2.0), r, a0, a0 + span);
        let chain = arc_chain(&arc, inside, e);
        prop_assert!(max_deviation(&arc, &chain) <= e * (1.0 + 1e-9));
        prop_assert!(chain[0].start().close(arc.start(), 1e-9));
        prop_assert!(chain[chain.len() - 1].end().close(arc.end(), 1e-9));
    }

    #[test]
    fn schedule_text_round_trips(paths in prop::collection::vec(prop::collection::vec((-30.0..30.0f64, -30.0..30.0f64), 0..4), 1..5)) {
        let s = Schedule {
            paths: paths
                .iter()
                .map(|mid| {
                    let n = mid.len() + 2;
                    let mut p = vec![(0.0, v(0.0, 0.0))];
                    p.extend(mid.iter().enumerate().map(|(i, &(x, y))| ((i + 1) as f64 / (n - 1) as f64, v(x, y))));
                    p.push((1.0, v(1.0, 1.0)));
                    p
                })
                .collect(),
        };
        prop_assert_eq!(read_schedule(&write_schedule(&s)).unwrap(), s);
    }

    #[test]
    fn legal_flips_keep_states_valid(k in 0usize..96, pick in any::<prop::sample::Index>()) {
        let all = oracle::k4_designations();
        let g = &all[k % all.len()];
        let valid: Vec<u32> = (0..64).filter(|&m| oracle::good(g, m)).collect();
        prop_assume!(!valid.is_empty());
        let s = oracle::state(g, valid[pick.index(valid.len())]);
        for e in legal_flips(g, &s).unwrap() {
            let t = flip(g, &s, &e).unwrap();
            prop_assert!(is_valid_state(g, &t).unwrap() && is_protected_safe(g, &t).unwrap());
            prop_assert_eq!(flip(g, &t, &e).unwrap(), s.clone());
        }
    }
}
