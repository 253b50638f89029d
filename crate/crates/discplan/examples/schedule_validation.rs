//! Validate motion schedules against a gadget: a parked schedule passes,
//! one that drives a disc into a wall is rejected with the time and the
//! offending robot.
//!
//! `cargo run --example schedule_validation`

use discplan::compiler::gadget_instance;
use discplan::cspace::*;
use discplan::gadget::{connector_gadget, ConnectorKind, Dir};
use discplan::geom::v;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = connector_gadget(ConnectorKind::Straight, (Dir::W, Dir::E))?;
    g.configure(&[true, false]);
    let inst = gadget_instance(&g);
    let start: Vec<_> = inst.discs().into_iter().map(|(p, _)| p).collect();
    let r = radii(&inst);

    let parked = Schedule::stationary(&start);
    let rep = validate_schedule(&inst.domain, &r, &parked, 1e-3, 0.0)?;
    println!("parked: valid, {} samples, certified {}", rep.samples, rep.certified);

    // push the last robot a full unit sideways over one time unit
    let mut end = start.clone();
    let k = end.len() - 1;
    end[k] = end[k] + v(0.0, 1.0);
    let shove = Schedule::from_frames(&[start, end]);
    match validate_schedule(&inst.domain, &r, &shove, 1e-3, 0.0) {
        Ok(_) => println!("shove: unexpectedly valid"),
        Err(e) => println!("shove: {e}"),
    }

    let text = write_schedule(&shove);
    assert_eq!(read_schedule(&text)?, shove);
    println!("schedule text: {} lines", text.lines().count());
    Ok(())
}
