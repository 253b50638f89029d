use super::{Cell, GridLayout, LayoutError};

fn err(line: usize, msg: impl Into<String>) -> LayoutError {
    LayoutError::Parse { line, msg: msg.into() }
}

fn cell(tok: &str, line: usize) -> Result<Cell, LayoutError> {
    let (x, y) = tok.split_once(',').ok_or_else(|| err(line, format!("expected `x,y`, got `{tok}`")))?;
    let p = |s: &str| s.trim().parse::<i32>().map_err(|_| err(line, format!("bad coordinate `{s}`")));
    Ok((p(x)?, p(y)?))
}

/// `place <node> <x> <y>` and `route <edge> <x,y> <x,y> ...` lines.
pub fn read_layout(text: &str) -> Result<GridLayout, LayoutError> {
    let mut l = GridLayout::default();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "place" => {
                if tok.len() != 4 {
                    return Err(err(ln, "expected `place <node> <x> <y>`"));
                }
                let c = cell(&format!("{},{}", tok[2], tok[3]), ln)?;
                if l.nodes.insert(tok[1].to_string(), c).is_some() {
                    return Err(err(ln, format!("node `{}` placed twice", tok[1])));
                }
            }
            "route" => {
                if tok.len() < 4 {
                    return Err(err(ln, "expected `route <edge> <x,y> <x,y> ...`"));
                }
                let cells = tok[2..].iter().map(|t| cell(t, ln)).collect::<Result<Vec<_>, _>>()?;
                if l.routes.insert(tok[1].to_string(), cells).is_some() {
                    return Err(err(ln, format!("edge `{}` routed twice", tok[1])));
                }
            }
            k => return Err(err(ln, format!("unknown directive `{k}`"))),
        }
    }
    Ok(l)
}

pub fn write_layout(l: &GridLayout) -> String {
    let mut s = String::new();
    for (id, (x, y)) in &l.nodes {
        s.push_str(&format!("place {id} {x} {y}\n"));
    }
    for (id, r) in &l.routes {
        let cells: Vec<String> = r.iter().map(|(x, y)| format!("{x},{y}")).collect();
        s.push_str(&format!("route {id} {}\n", cells.join(" ")));
    }
    s
}
