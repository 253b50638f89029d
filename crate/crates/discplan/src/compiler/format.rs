use super::{ClassSet, Instance, Targets, Variant};
use crate::geom::{v, Domain, Piece, Vec2};
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct InstanceParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> InstanceParseError {
    InstanceParseError { line, msg: msg.into() }
}

/// Text form. `f64` display is the shortest decimal that reads back to
/// the same bits, so the round trip is lossless.
pub fn write_instance(inst: &Instance) -> String {
    let mut s = String::from("[domain]\n");
    for p in &inst.domain.pieces {
        match *p {
            Piece::Seg { a, b } => writeln!(s, "seg {} {} {} {}", a.x, a.y, b.x, b.y),
            Piece::Arc { c, r, a0, a1 } => writeln!(s, "arc {} {} {} {} {}", c.x, c.y, r, a0, a1),
        }
        .unwrap();
    }
    for c in &inst.classes {
        writeln!(s, "[robots r={}]", c.radius).unwrap();
        for p in &c.starts {
            writeln!(s, "start {} {}", p.x, p.y).unwrap();
        }
    }
    s.push_str("[targets]\n");
    writeln!(s, "variant {}", inst.variant().keyword()).unwrap();
    match &inst.targets {
        Targets::Full(per) => {
            for (k, ts) in per.iter().enumerate() {
                for p in ts {
                    writeln!(s, "target {k} {} {}", p.x, p.y).unwrap();
                }
            }
        }
        Targets::Point(p) => writeln!(s, "point {} {}", p.x, p.y).unwrap(),
        Targets::PointInClass(p, k) => {
            writeln!(s, "point {} {}", p.x, p.y).unwrap();
            writeln!(s, "class {k}").unwrap();
        }
    }
    s
}

enum Section {
    None,
    Domain,
    Robots,
    Targets,
}

fn nums(tok: &[&str], n: usize, line: usize) -> Result<Vec<f64>, InstanceParseError> {
    if tok.len() != n {
        return Err(err(line, format!("expected {n} numbers, got {}", tok.len())));
    }
    tok.iter().map(|t| t.parse::<f64>().map_err(|_| err(line, format!("bad number `{t}`")))).collect()
}

/// Parse the text form. Validity of the placement is not checked here.
pub fn read_instance(text: &str) -> Result<Instance, InstanceParseError> {
    let mut sec = Section::None;
    let mut pieces = Vec::new();
    let mut classes: Vec<ClassSet> = Vec::new();
    let mut variant: Option<Variant> = None;
    let mut full: Vec<Vec<Vec2>> = Vec::new();
    let mut point: Option<Vec2> = None;
    let mut class: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            sec = match line {
                "[domain]" => Section::Domain,
                "[targets]" => Section::Targets,
                _ => match line.strip_prefix("[robots r=").and_then(|r| r.strip_suffix(']')) {
                    Some(r) => {
                        let radius = r.parse::<f64>().map_err(|_| err(ln, format!("bad radius `{r}`")))?;
                        classes.push(ClassSet { radius, starts: vec![] });
                        Section::Robots
                    }
                    None => return Err(err(ln, format!("unknown section header `{line}`"))),
                },
            };
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match (&sec, tok[0]) {
            (Section::Domain, "seg") => {
                let n = nums(&tok[1..], 4, ln)?;
                pieces.push(Piece::Seg { a: v(n[0], n[1]), b: v(n[2], n[3]) });
            }
            (Section::Domain, "arc") => {
                let n = nums(&tok[1..], 5, ln)?;
                if n[2] <= 0.0 {
                    return Err(err(ln, "arc radius must be positive"));
                }
                pieces.push(Piece::Arc { c: v(n[0], n[1]), r: n[2], a0: n[3], a1: n[4] });
            }
            (Section::Domain, "poly") => {
                let n = nums(&tok[1..], tok.len() - 1, ln)?;
                if n.len() < 4 || n.len() % 2 != 0 {
                    return Err(err(ln, "poly needs at least two points"));
                }
                let pts: Vec<Vec2> = n.chunks(2).map(|c| v(c[0], c[1])).collect();
                pieces.extend(pts.windows(2).map(|w| Piece::Seg { a: w[0], b: w[1] }));
            }
            (Section::Robots, "start") => {
                let n = nums(&tok[1..], 2, ln)?;
                classes.last_mut().unwrap().starts.push(v(n[0], n[1]));
            }
            (Section::Targets, "variant") => {
                variant = Some(tok.get(1).and_then(|s| Variant::parse(s)).ok_or_else(|| err(ln, "unknown variant"))?);
            }
            (Section::Targets, "target") => {
                let k: usize = tok.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| err(ln, "bad class index"))?;
                let n = nums(&tok[2..], 2, ln)?;
                if full.len() <= k {
                    full.resize(k + 1, vec![]);
                }
                full[k].push(v(n[0], n[1]));
            }
            (Section::Targets, "point") => {
                let n = nums(&tok[1..], 2, ln)?;
                point = Some(v(n[0], n[1]));
            }
            (Section::Targets, "class") => {
                class = Some(tok.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| err(ln, "bad class index"))?);
            }
            (Section::None, _) => return Err(err(ln, "content before the first section header")),
            (_, k) => return Err(err(ln, format!("unexpected `{k}` here"))),
        }
    }
    let targets = match variant.ok_or_else(|| err(text.lines().count().max(1), "missing variant"))? {
        Variant::MultiToMulti => {
            full.resize(classes.len().max(full.len()), vec![]);
            Targets::Full(full)
        }
        Variant::MultiToSingle => Targets::Point(point.ok_or_else(|| err(0, "missing target point"))?),
        Variant::MultiToSingleInClass => Targets::PointInClass(
            point.ok_or_else(|| err(0, "missing target point"))?,
            class.ok_or_else(|| err(0, "missing target class"))?,
        ),
    };
    Ok(Instance { domain: Domain { pieces }, classes, targets })
}
