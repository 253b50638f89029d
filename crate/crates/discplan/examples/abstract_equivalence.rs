//! Wire gadget contracts into a network of shared edge robots and check
//! that it answers reachability exactly like the constraint graph, then
//! break the AND contract and watch the check fail.
//!
//! `cargo run --release --example abstract_equivalence [--certify]`

use discplan::equivalence::*;
use discplan::layout::{cell_plan, embed, sample_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let certify = std::env::args().any(|a| a == "--certify");
    let g = sample_graph();
    let plan = cell_plan(&g, &embed(&g, 0)?).map_err(|v| format!("{v:?}"))?;

    let net = build_network(&g, &plan)?;
    println!("{} cells, {} edge robots; collapsed: {} variables", net.contracts.len(), net.vars.len(), net.collapsed().vars.len());

    let opts = ReportOptions { trials: 100, seed: 7, certify, ..Default::default() };
    let r = equivalence_report(&g, &plan, &opts)?;
    print!("{r}");

    let broken = equivalence_report(&g, &plan, &ReportOptions { corrupt_and: true, ..opts })?;
    println!("with AND out unguarded: {}", if broken.pass() { "not detected" } else { "detected" });
    for f in broken.findings.iter().filter(|f| !f.pass) {
        println!("  {f}");
    }
    Ok(())
}
