//! Critical displacements of the two chain components, closed form next
//! to the numeric solve, then lattice searches confirming them.
//!
//! `cargo run --release --example component_thresholds`

use discplan::cspace::lemmas::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = tangency_thresholds(None)?;
    println!("perpendicular {:.10} (closed {:.10})", t.perpendicular, t.perpendicular_closed);
    println!("parallel      {:.10} (closed {:.10})", t.parallel, t.parallel_closed);
    println!("and gate      {:.10} (closed {:.10})", t.and_gate, t.and_gate_closed);

    let p = CheckParams::component();
    for f in check_perpendicular(&p)?.iter().chain(&check_parallel(&p)?).chain(&check_chain(&p)?) {
        println!("{f}");
    }
    Ok(())
}
