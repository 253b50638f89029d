//! Compile the eight-node sample graph into a disc-robot instance and
//! write its text form and an SVG drawing.
//!
//! `cargo run --example compile_instance [out-dir]`

use discplan::compiler::*;
use discplan::cspace::is_valid_configuration;
use discplan::layout::{cell_plan, embed, sample_graph};
use discplan::ncl::{first_valid_state, flip, legal_flips};
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let g = sample_graph();
    let plan = cell_plan(&g, &embed(&g, 0)?).map_err(|v| format!("{v:?}"))?;
    let start = first_valid_state(&g)?.expect("sample graph has a valid orientation");

    // the goal is one legal flip away
    let e = legal_flips(&g, &start)?.into_iter().next().expect("some flip is legal");
    let goal = flip(&g, &start, &e)?;
    let c = compile(&g, &plan, &start, Variant::MultiToMulti, &Payload::Goal(goal))?;
    let inst = &c.instance;
    let starts: Vec<_> = inst.discs().into_iter().map(|(p, _)| p).collect();
    println!(
        "{} small + {} large robots, {} boundary pieces, start valid: {}",
        inst.classes[0].starts.len(),
        inst.classes[1].starts.len(),
        inst.domain.pieces.len(),
        is_valid_configuration(inst, &starts)
    );

    let text = write_instance(inst);
    assert_eq!(read_instance(&text)?, *inst);
    std::fs::write(dir.join("sample.instance"), &text)?;
    std::fs::write(dir.join("sample.svg"), render_svg(inst))?;
    println!("wrote {}", dir.join("sample.{instance,svg}").display());

    // the variant that asks for a single robot to reach a point
    let single = compile(&g, &plan, &start, Variant::MultiToSingle, &Payload::Edge(e.clone()))?;
    if let Targets::Point(p) = single.instance.targets {
        println!("flip {e}: some robot must reach ({:.1}, {:.1})", p.x, p.y);
    }
    Ok(())
}
