//! Certify the AND, protected-OR and connector contracts: scripted
//! witness schedules for what must be possible, exhaustive lattice
//! searches for what must not.
//!
//! `cargo run --release --example gadget_contracts`

use discplan::cspace::lemmas::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let close = CheckParams::closeup();
    let mut all = check_and(&close)?;
    all.extend(check_or(&close)?);
    all.extend(check_connectors(&CheckParams::component())?);
    for f in &all {
        println!("{f}");
    }
    let failed = all.iter().filter(|f| !f.pass).count();
    println!("{} checks, {failed} failed", all.len());
    Ok(())
}
