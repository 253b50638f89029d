use super::components::{disc_rect, frame, Link};
use crate::geom::{Region, Vec2};

/// A run of large discs joined by links, realized in cell coordinates.
#[derive(Clone, Debug)]
pub struct Chain {
    pub region: Region,
    /// Pushed terminal and push direction of every large disc, upstream first.
    pub discs: Vec<(Vec2, Vec2)>,
    /// Small discs: (position with the chain retracted, position pushed).
    pub smalls: Vec<(Vec2, Vec2)>,
    pub links: Vec<Link>,
}

impl Chain {
    pub fn build(start: Vec2, dir: Vec2, links: &[Link]) -> Chain {
        let mut region = Region::default();
        region.add(disc_rect(start, dir));
        let mut discs = vec![(start, dir)];
        let mut smalls = Vec::new();
        let (mut p, mut d) = (start, dir);
        for link in links {
            let g = link.geometry();
            let t = frame(p, d);
            region.extend(&g.region.transformed(&t));
            if let Some((a, b)) = g.small {
                smalls.push((t.apply(a), t.apply(b)));
            }
            p = t.apply(g.next);
            d = t.linear(g.next_dir);
            discs.push((p, d));
        }
        Chain { region, discs, smalls, links: links.to_vec() }
    }

    /// Retracted terminal of disc `i`.
    pub fn retracted(&self, i: usize) -> Vec2 {
        let (p, d) = self.discs[i];
        p - d
    }
}

impl Chain {
    pub fn transformed(&self, t: &crate::geom::RigidTransform) -> Chain {
        Chain {
            region: self.region.transformed(t),
            discs: self.discs.iter().map(|&(p, d)| (t.apply(p), t.linear(d))).collect(),
            smalls: self.smalls.iter().map(|&(a, b)| (t.apply(a), t.apply(b))).collect(),
            links: self.links.clone(),
        }
    }
}
