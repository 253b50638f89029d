//! Replace every circular arc of a compiled instance by a polygonal
//! chain and measure how far each chain strays from its arc.
//!
//! `cargo run --example arc_approximation [epsilon]`

use discplan::compiler::*;
use discplan::geom::Piece;
use discplan::layout::{cell_plan, embed};
use discplan::ncl::{first_valid_state, read_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let eps: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1e-3);
    let (g, _) = read_graph(
        "node a POR\nnode b POR\nnode c POR\nnode d POR\n\
         edge ab a b 2\nedge ac a c 2\nedge ad a d 2\nedge bc b c 2\nedge bd b d 2\nedge cd c d 2\n\
         por-inputs a ab ac\npor-inputs b ab bc\npor-inputs c ac bc\npor-inputs d ad bd\n",
    )?;
    let plan = cell_plan(&g, &embed(&g, 0)?).map_err(|v| format!("{v:?}"))?;
    let s = first_valid_state(&g)?.unwrap();
    let inst = compile(&g, &plan, &s, Variant::MultiToMulti, &Payload::Goal(s.clone()))?.instance;

    let dom = &inst.domain;
    let arcs: Vec<&Piece> = dom.pieces.iter().filter(|p| matches!(p, Piece::Arc { .. })).collect();
    let worst = arcs.iter().map(|a| max_deviation(a, &arc_chain(a, dom.free_inside(a), eps))).fold(0.0, f64::max);
    println!("{} arcs, worst deviation {worst:.3e} (epsilon {eps:e})", arcs.len());

    let approx = approximate_arcs(&inst, ArcApproxParams { epsilon: eps })?;
    println!("{} boundary pieces before, {} after", dom.pieces.len(), approx.domain.pieces.len());
    assert!(approx.domain.pieces.iter().all(|p| matches!(p, Piece::Seg { .. })));
    Ok(())
}
