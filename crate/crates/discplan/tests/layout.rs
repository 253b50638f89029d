use discplan::layout::*;
mod common;

use common::*;

#[test]
fn embeds_small_cubic_graphs() {
    for (name, g) in [("k4", k4()), ("prism", prism()), ("cube", cube()), ("sample", sample_graph())] {
        for seed in 0..5 {
            let l = embed(&g, seed).unwrap_or_else(|e| panic!("{name} seed {seed}: {e}"));
            let v = validate_layout(&g, &l);
            assert!(v.is_empty(), "{name}: {v:?}");
            let plan = cell_plan(&g, &l).unwrap();
            let nodes = plan.count(CellRole::AndGadget) + plan.count(CellRole::PorGadget);
            assert_eq!(nodes, g.nodes.len());
            let pass: usize = l.routes.values().map(|r| r.len() - 2).sum();
            let conn = plan.count(CellRole::ConnectorStraight) + plan.count(CellRole::ConnectorCorner);
            assert_eq!(conn, pass);
        }
    }
}
