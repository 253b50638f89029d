//! Render every gadget kind on its own, in each terminal configuration.
//!
//! `cargo run --example gadget_atlas [out-dir]`

use discplan::compiler::{gadget_instance, render_svg};
use discplan::gadget::*;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let mut gadgets = vec![
        ("and", and_gadget(Dir::N, Dir::W, Dir::E)?, vec![[false, true, true], [true, false, false]]),
        ("or", or_gadget(Dir::N, Dir::W, Dir::E)?, vec![[false, true, true], [true, false, true]]),
    ];
    let mut conns = vec![
        ("straight", connector_gadget(ConnectorKind::Straight, (Dir::W, Dir::E))?),
        ("corner", connector_gadget(ConnectorKind::Corner, (Dir::W, Dir::N))?),
    ];
    for (name, g, states) in &mut gadgets {
        for s in states.iter() {
            g.configure(s);
            let tag: String = s.iter().map(|&b| if b { 'i' } else { 'o' }).collect();
            let path = dir.join(format!("{name}-{tag}.svg"));
            std::fs::write(&path, render_svg(&gadget_instance(g)))?;
            println!("{name} {tag}: {} robots -> {}", g.robots.len(), path.display());
        }
    }
    for (name, g) in &mut conns {
        g.configure(&[true, false]);
        let path = dir.join(format!("{name}.svg"));
        std::fs::write(&path, render_svg(&gadget_instance(g)))?;
        println!("{name}: {} robots -> {}", g.robots.len(), path.display());
    }
    Ok(())
}
