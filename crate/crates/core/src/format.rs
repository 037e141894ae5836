//! Plain-text formats for complexes, tree families and orbit presentations.
//!
//! All formats are UTF-8, line oriented, and ignore blank lines and lines
//! starting with `#`.
//!
//! * Facet file: one facet per line as decimal vertex ids separated by
//!   spaces. Canonical output sorts each facet and the list of facets.
//! * Tree family: a header `d n V`, then edge lines `e u v`, then one line
//!   `t i v1 v2 ...` per tree.
//! * Orbit presentation: a header `m class1 class2 ...`, then one basic facet
//!   per line as labeled tokens such as `a0 a1 b3`.

use std::fmt::Write as _;

use crate::catalog::parse_label;
use crate::complex::{Complex, Face, Vertex};
use crate::construct::{HostGraph, Label, OrbitPresentation, TreeFamily};
use crate::error::{Error, Result};

fn parse_error<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column, message: message.into() })
}

/// Content lines with their 1-based line numbers, and each token with its
/// 1-based column.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(n, line)| {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, c) in line.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push((line[..s].chars().count() + 1, &line[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push((line[..s].chars().count() + 1, &line[s..]));
        }
        Some((n + 1, tokens))
    })
}

fn number<T: std::str::FromStr>(line: usize, (column, token): (usize, &str), what: &str) -> Result<T> {
    token.parse().or_else(|_| parse_error(line, column, format!("expected {what}, found `{token}`")))
}

/// Parses a facet file.
pub fn parse_facets(text: &str) -> Result<Complex> {
    let mut facets = Vec::new();
    let mut size = None;
    for (line, tokens) in content_lines(text) {
        let ids = tokens
            .iter()
            .map(|&t| number::<Vertex>(line, t, "a vertex id"))
            .collect::<Result<Vec<_>>>()?;
        let face = match Face::new(ids) {
            Ok(f) => f,
            Err(_) => return parse_error(line, 1, "facet repeats a vertex"),
        };
        match size {
            None => size = Some(face.len()),
            Some(s) if s != face.len() => {
                return parse_error(line, 1, format!("facet has {} vertices, expected {s}", face.len()));
            }
            _ => {}
        }
        facets.push(face);
    }
    if facets.is_empty() {
        return parse_error(1, 1, "no facets");
    }
    Complex::new(facets)
}

/// Canonical facet file text.
pub fn write_facets(k: &Complex) -> String {
    let mut out = String::new();
    for f in k.facets() {
        writeln!(out, "{f}").expect("writing to a string");
    }
    out
}

/// Parses a tree family file.
pub fn parse_tree_family(text: &str) -> Result<TreeFamily> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return parse_error(1, 1, "missing header `d n V`");
    };
    if header.len() != 3 {
        return parse_error(hline, 1, "header must be `d n V`");
    }
    let d: usize = number(hline, header[0], "d")?;
    let n: usize = number(hline, header[1], "the number of trees")?;
    let nv: usize = number(hline, header[2], "the number of host vertices")?;
    let mut edges = Vec::new();
    let mut trees: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, tokens) in lines {
        let (col, kind) = tokens[0];
        let vertex = |t: (usize, &str)| -> Result<usize> {
            let v: usize = number(line, t, "a host vertex")?;
            if v >= nv {
                return parse_error(line, t.0, format!("host vertex {v} out of range 0..{nv}"));
            }
            Ok(v)
        };
        match kind {
            "e" => {
                if tokens.len() != 3 {
                    return parse_error(line, col, "edge line must be `e u v`");
                }
                let (u, v) = (vertex(tokens[1])?, vertex(tokens[2])?);
                if u == v {
                    return parse_error(line, tokens[2].0, "loop edge");
                }
                edges.push((u, v));
            }
            "t" => {
                if tokens.len() < 2 {
                    return parse_error(line, col, "tree line must be `t i v1 v2 ...`");
                }
                let i: usize = number(line, tokens[1], "a tree index")?;
                if i >= n {
                    return parse_error(line, tokens[1].0, format!("tree index {i} out of range 0..{n}"));
                }
                if trees[i].is_some() {
                    return parse_error(line, tokens[1].0, format!("tree {i} listed twice"));
                }
                trees[i] = Some(tokens[2..].iter().map(|&t| vertex(t)).collect::<Result<_>>()?);
            }
            other => return parse_error(line, col, format!("unknown line kind `{other}`")),
        }
    }
    let trees = trees
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| Error::Parse { line: hline, column: 1, message: format!("tree {i} is missing") }))
        .collect::<Result<Vec<_>>>()?;
    TreeFamily::new(HostGraph::new(nv, edges)?, trees, d)
}

/// Canonical tree family text.
pub fn write_tree_family(f: &TreeFamily) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", f.d, f.trees.len(), f.host.num_vertices()).expect("writing to a string");
    for (u, v) in f.host.edges() {
        writeln!(out, "e {u} {v}").expect("writing to a string");
    }
    for (i, t) in f.trees.iter().enumerate() {
        let vs: Vec<String> = t.iter().map(|v| v.to_string()).collect();
        writeln!(out, "t {i} {}", vs.join(" ")).expect("writing to a string");
    }
    out
}

/// Parses an orbit presentation file.
pub fn parse_orbit_presentation(text: &str) -> Result<OrbitPresentation> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return parse_error(1, 1, "missing header `m classes...`");
    };
    if header.len() < 2 {
        return parse_error(hline, 1, "header must be `m class1 class2 ...`");
    }
    let m: usize = number(hline, header[0], "the group order")?;
    if m == 0 {
        return parse_error(hline, header[0].0, "group order must be positive");
    }
    let classes: Vec<String> = header[1..].iter().map(|(_, t)| t.to_string()).collect();
    for &(col, c) in &header[1..] {
        if c.is_empty() || !c.chars().all(|ch| ch.is_alphabetic()) {
            return parse_error(hline, col, format!("class name `{c}` must be alphabetic"));
        }
    }
    let mut basic = Vec::new();
    for (line, tokens) in lines {
        let facet = tokens
            .iter()
            .map(|&(col, t)| match parse_label(t, &classes) {
                Some(l) if l.index < m => Ok(l),
                Some(l) => parse_error(line, col, format!("label index {} out of range 0..{m}", l.index)),
                None => parse_error(line, col, format!("malformed label `{t}`")),
            })
            .collect::<Result<Vec<Label>>>()?;
        basic.push(facet);
    }
    if basic.is_empty() {
        return parse_error(hline, 1, "no basic facets");
    }
    OrbitPresentation::new(m, classes, basic)
}

/// Canonical orbit presentation text.
pub fn write_orbit_presentation(p: &OrbitPresentation) -> String {
    let mut out = format!("{} {}\n", p.order, p.classes.join(" "));
    for f in &p.basic {
        let tokens: Vec<String> = f.iter().map(|l| format!("{}{}", p.classes[l.class], l.index)).collect();
        writeln!(out, "{}", tokens.join(" ")).expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::construct::expand_orbit;

    #[test]
    fn facet_round_trip() {
        let k = parse_facets("# comment\n3 2 1\n\n1 2 4\n").unwrap();
        assert_eq!(write_facets(&k), "1 2 3\n1 2 4\n");
        assert_eq!(parse_facets(&write_facets(&k)).unwrap(), k);
    }

    #[test]
    fn facet_errors_carry_location() {
        match parse_facets("0 1 2\n0 1 x3\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_facets("0 1 2\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_facets("0 0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_facets("# only\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn tree_family_round_trip() {
        let f = catalog::a541_tree_family();
        let text = write_tree_family(&f);
        assert_eq!(parse_tree_family(&text).unwrap(), f);
    }

    #[test]
    fn tree_family_errors() {
        assert!(matches!(parse_tree_family("1 1 2\ne 0 5\nt 0 0\n"), Err(Error::Parse { line: 2, column: 5, .. })));
        assert!(matches!(parse_tree_family("1 2 2\ne 0 1\nt 0 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree_family("1 1 2\nq 0 1\n"), Err(Error::Parse { line: 2, column: 1, .. })));
    }

    #[test]
    fn orbit_round_trip() {
        let p = catalog::orbit_presentation("B5_26").unwrap();
        let text = write_orbit_presentation(&p);
        assert!(text.starts_with("13 a b\na0 a10 a11 a12 b9 b10\n"));
        let q = parse_orbit_presentation(&text).unwrap();
        assert_eq!(expand_orbit(&q).unwrap(), expand_orbit(&p).unwrap());
        assert!(matches!(parse_orbit_presentation("7 a\na7\n"), Err(Error::Parse { line: 2, column: 1, .. })));
        assert!(matches!(parse_orbit_presentation("7 a\na1 d2\n"), Err(Error::Parse { line: 2, column: 4, .. })));
    }
}
