//! Draw a constraint graph on the grid and list what each cell holds.
//!
//! `cargo run --example grid_layout [seed]`

use discplan::layout::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(0);
    let g = sample_graph();
    let l = embed(&g, seed)?;
    assert!(validate_layout(&g, &l).is_empty());
    print!("{}", write_layout(&l));

    let plan = cell_plan(&g, &l).map_err(|v| format!("{v:?}"))?;
    for (cell, info) in &plan.cells {
        let ports: Vec<String> = info.ports.iter().map(|(d, e)| format!("{d}:{e}")).collect();
        println!("{cell:?} {:?} {}", info.role, ports.join(" "));
    }
    for role in [CellRole::AndGadget, CellRole::PorGadget, CellRole::ConnectorStraight, CellRole::ConnectorCorner] {
        println!("{role:?}: {}", plan.count(role));
    }
    Ok(())
}
