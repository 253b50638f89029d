use discplan::gadget::*;
use discplan::geom::{Domain, Vec2};

fn valid(dom: &Domain, discs: &[(Vec2, f64)]) -> Result<(), String> {
    for (i, &(p, r)) in discs.iter().enumerate() {
        if !dom.disc_fits(p, r, 1e-9) {
            return Err(format!("disc {i} at ({:.4},{:.4}) r={r} clearance {:.4}", p.x, p.y, dom.clearance(p)));
        }
        for (j, &(q, s)) in discs.iter().enumerate().skip(i + 1) {
            if p.dist(q) < r + s - 1e-9 {
                return Err(format!("discs {i},{j} overlap"));
            }
        }
    }
    Ok(())
}

fn node_states(kind: GadgetKind) -> Vec<[bool; 3]> {
    let mut v = vec![];
    for m in 0..8u8 {
        let s = [m & 1 != 0, m & 2 != 0, m & 4 != 0];
        let ok = match kind {
            GadgetKind::And => !s[0] || (!s[1] && !s[2]),
            _ => !s[0] || !s[1] || !s[2],
        };
        if ok {
            v.push(s);
        }
    }
    v
}

#[test]
fn node_gadget_placements_are_valid() {
    for out in Dir::ALL {
        for in1 in Dir::ALL {
            for in2 in Dir::ALL {
                if out == in1 || out == in2 || in1 == in2 {
                    continue;
                }
                for kind in [GadgetKind::And, GadgetKind::ProtectedOr] {
                    let mut g = if kind == GadgetKind::And { and_gadget(out, in1, in2) } else { or_gadget(out, in1, in2) }.unwrap();
                    let dom = g.region.boundary();
                    for s in node_states(kind) {
                        g.configure(&s);
                        valid(&dom, &g.discs()).unwrap_or_else(|e| panic!("{kind:?} out={out} in={in1},{in2} {s:?}: {e}"));
                    }
                }
            }
        }
    }
}

#[test]
fn connector_placements_are_valid() {
    for p0 in Dir::ALL {
        for p1 in Dir::ALL {
            let kind = if p1 == p0.opposite() {
                ConnectorKind::Straight
            } else if p1 != p0 {
                ConnectorKind::Corner
            } else {
                continue;
            };
            let mut g = connector_gadget(kind, (p0, p1)).unwrap();
            let dom = g.region.boundary();
            for s in [false, true] {
                g.configure(&[s, !s]);
                valid(&dom, &g.discs()).unwrap_or_else(|e| panic!("{kind:?} {p0}{p1} {s}: {e}"));
            }
        }
    }
}

#[test]
fn validity_check_rejects_displaced_discs() {
    let g = and_gadget(Dir::N, Dir::W, Dir::E).unwrap();
    let dom = g.region.boundary();
    for i in 0..g.robots.len() {
        for d in [Vec2 { x: 0.3, y: 0.3 }, Vec2 { x: -0.3, y: -0.3 }] {
            let mut discs = g.discs();
            discs[i].0 = discs[i].0 + d;
            // small discs in the strip may have room to move diagonally; large discs never do
            if g.robots[i].class == RobotClass::Large {
                assert!(valid(&dom, &discs).is_err(), "robot {} moved by {d:?} still valid", g.robots[i].label);
            }
        }
    }
    assert!(!dom.contains(Vec2 { x: 50.0, y: 50.0 }));
    assert!(!dom.contains(Vec2 { x: 3.0, y: 15.0 }));
}
