use super::{ConstraintGraph, NclState, NodeKind};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

/// Parse the line format; `orient` lines, if any, form a state.
/// Blank lines and `#` comments are ignored.
pub fn read_graph(text: &str) -> Result<(ConstraintGraph, Option<NclState>), ParseError> {
    let mut g = ConstraintGraph::default();
    let mut state: Option<NclState> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "node" => {
                if tok.len() != 3 {
                    return Err(err(ln, "expected `node <id> AND|POR`"));
                }
                let kind = match tok[2] {
                    "AND" => NodeKind::And,
                    "POR" => NodeKind::ProtectedOr,
                    k => return Err(err(ln, format!("unknown node kind `{k}`"))),
                };
                g.add_node(tok[1], kind);
            }
            "edge" => {
                if tok.len() != 5 {
                    return Err(err(ln, "expected `edge <id> <a> <b> <1|2>`"));
                }
                let w: u8 = tok[4].parse().map_err(|_| err(ln, format!("bad weight `{}`", tok[4])))?;
                g.add_edge(tok[1], tok[2], tok[3], w);
            }
            "por-inputs" => {
                if tok.len() != 4 {
                    return Err(err(ln, "expected `por-inputs <node> <edge> <edge>`"));
                }
                if g.por_inputs.contains_key(tok[1]) {
                    return Err(err(ln, format!("inputs of `{}` declared twice", tok[1])));
                }
                g.set_por_inputs(tok[1], tok[2], tok[3]);
            }
            "orient" => {
                if tok.len() != 3 {
                    return Err(err(ln, "expected `orient <edge> <toward-node>`"));
                }
                let s = state.get_or_insert_with(NclState::default);
                if s.toward.contains_key(tok[1]) {
                    return Err(err(ln, format!("edge `{}` oriented twice", tok[1])));
                }
                s.orient(tok[1], tok[2]);
            }
            other => return Err(err(ln, format!("unknown declaration `{other}`"))),
        }
    }
    Ok((g, state))
}

/// Canonical text: nodes, edges, input designations (in node order), then
/// orientations (in edge order).
pub fn write_graph(g: &ConstraintGraph, state: Option<&NclState>) -> String {
    let mut out = String::new();
    for n in &g.nodes {
        out.push_str(&format!("node {} {}\n", n.id, n.kind.keyword()));
    }
    for e in &g.edges {
        out.push_str(&format!("edge {} {} {} {}\n", e.id, e.a, e.b, e.weight));
    }
    let mut written = std::collections::BTreeSet::new();
    for n in &g.nodes {
        if let Some((a, b)) = g.por_inputs.get(&n.id) {
            out.push_str(&format!("por-inputs {} {a} {b}\n", n.id));
            written.insert(n.id.clone());
        }
    }
    for (node, (a, b)) in &g.por_inputs {
        if !written.contains(node) {
            out.push_str(&format!("por-inputs {node} {a} {b}\n"));
        }
    }
    if let Some(s) = state {
        for e in &g.edges {
            if let Some(t) = s.toward.get(&e.id) {
                out.push_str(&format!("orient {} {t}\n", e.id));
            }
        }
        for (e, t) in &s.toward {
            if g.edge(e).is_none() {
                out.push_str(&format!("orient {e} {t}\n"));
            }
        }
    }
    out
}
