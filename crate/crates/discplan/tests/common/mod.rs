#![allow(dead_code)]

pub mod audit;
pub mod oracle;

use discplan::ncl::{read_graph, validate_graph, ConstraintGraph};

pub fn graph(text: &str) -> ConstraintGraph {
    let g = read_graph(text).unwrap().0;
    assert!(validate_graph(&g).is_empty(), "{:?}", validate_graph(&g));
    g
}

/// All-POR cubic graph from an edge list; inputs are each node's first two edges.
pub fn por_graph(n: usize, edges: &[(usize, usize)]) -> ConstraintGraph {
    let mut s = String::new();
    for i in 0..n {
        s += &format!("node n{i} POR\n");
    }
    let mut inc = vec![vec![]; n];
    for (k, &(a, b)) in edges.iter().enumerate() {
        s += &format!("edge e{k} n{a} n{b} 2\n");
        inc[a].push(k);
        inc[b].push(k);
    }
    for (i, es) in inc.iter().enumerate() {
        s += &format!("por-inputs n{i} e{} e{}\n", es[0], es[1]);
    }
    graph(&s)
}

pub fn k4() -> ConstraintGraph {
    por_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn prism() -> ConstraintGraph {
    por_graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
}

pub fn cube() -> ConstraintGraph {
    por_graph(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)])
}


/// A random valid designation of K4: weight-1 edges form a triangle, a
/// 4-cycle or nothing, nodes touching them are AND and the rest are
/// protected OR with shuffled inputs. Returns `None` for the rare draw
/// with no valid state.
pub fn random_k4(seed: u64) -> Option<ConstraintGraph> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let light: Vec<usize> = match rng.gen_range(0..3) {
        0 => vec![],
        1 => {
            // triangle avoiding one node
            let skip = rng.gen_range(0..4);
            (0..6).filter(|&k| pairs[k].0 != skip && pairs[k].1 != skip).collect()
        }
        _ => {
            // 4-cycle is the complement of a perfect matching
            let m = [[0, 5], [1, 4], [2, 3]][rng.gen_range(0..3)];
            (0..6).filter(|k| !m.contains(k)).collect()
        }
    };
    let and = |n: usize| light.iter().any(|&k| pairs[k].0 == n || pairs[k].1 == n);
    let mut s = String::new();
    for n in 0..4 {
        s += &format!("node n{n} {}\n", if and(n) { "AND" } else { "POR" });
    }
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let (a, b) = if rng.gen() { (a, b) } else { (b, a) };
        s += &format!("edge e{k} n{a} n{b} {}\n", if light.contains(&k) { 1 } else { 2 });
    }
    for n in (0..4).filter(|&n| !and(n)) {
        let mut inc: Vec<usize> = (0..6).filter(|&k| pairs[k].0 == n || pairs[k].1 == n).collect();
        inc.shuffle(&mut rng);
        s += &format!("por-inputs n{n} e{} e{}\n", inc[0], inc[1]);
    }
    let g = read_graph(&s).ok()?.0;
    if !validate_graph(&g).is_empty() || discplan::ncl::first_valid_state(&g).ok()??.toward.is_empty() {
        return None;
    }
    Some(g)
}
