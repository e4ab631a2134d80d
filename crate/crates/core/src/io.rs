//! Line-oriented text formats.
//!
//! ```text
//! polygon            triangulation              graph
//! v 0 0              p 0 0 1 0 0 1              n 2
//! v 1 0              t 0 0 1 0 0 1              e 0 1
//! v 0 1                                         e 0 1
//!                                               e 0 1
//! ```
//!
//! `#` starts a comment line. The `p` line of a triangulation lists the
//! polygon's vertices inline, or names a polygon file. A genus-one circle is
//! written as a `graph` header followed by a single `circle` line.

use std::fmt::{self, Write as _};

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Skeleton};
use crate::lattice::{pt, GeometryError, LatticePoint, LatticePolygon};
use crate::regularity::format_height;
use crate::skeleton::ProvenancedSkeleton;
use crate::triangulation::{Triangle, Triangulation, TriangulationError};
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid polygon: {0}")]
    Geometry(#[from] GeometryError),
    #[error("invalid triangulation: {0}")]
    Triangulation(#[from] TriangulationError),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

impl FormatError {
    pub fn is_parse(&self) -> bool {
        matches!(self, FormatError::Parse(_))
    }
}

/// A whitespace token with its 1-based column.
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = Vec::new();
        let mut start = None;
        for (j, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    toks.push(Tok { text: &raw[s..j], col: s + 1 });
                }
            } else if start.is_none() {
                start = Some(j);
            }
        }
        out.push(Line { no: i + 1, toks });
    }
    out
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, col, msg: msg.into() }
}

fn int(line: &Line, k: usize) -> Result<i64, ParseError> {
    let t = line.toks.get(k).ok_or_else(|| {
        let col = line.toks.last().map_or(1, |t| t.col + t.text.len());
        err(line.no, col, "expected an integer")
    })?;
    t.text.parse().map_err(|_| err(line.no, t.col, format!("expected an integer, found `{}`", t.text)))
}

fn expect_arity(line: &Line, n: usize) -> Result<(), ParseError> {
    if line.toks.len() != n {
        let col = line.toks.get(n).map_or(1, |t| t.col);
        return Err(err(line.no, col, format!("expected {} fields, found {}", n, line.toks.len())));
    }
    Ok(())
}

fn header<'a>(ls: &'a [Line<'a>], word: &str) -> Result<&'a [Line<'a>], ParseError> {
    match ls.first() {
        Some(l) if l.toks[0].text == word && l.toks.len() == 1 => Ok(&ls[1..]),
        Some(l) => Err(err(l.no, l.toks[0].col, format!("expected `{word}` header"))),
        None => Err(err(1, 1, format!("empty input, expected `{word}` header"))),
    }
}

/// Vertex lists of every `polygon` stanza in `text`.
fn polygon_stanzas(text: &str) -> Result<Vec<(usize, Vec<LatticePoint>)>, ParseError> {
    let ls = lines(text);
    let mut out: Vec<(usize, Vec<LatticePoint>)> = Vec::new();
    for l in &ls {
        match l.toks[0].text {
            "polygon" => {
                expect_arity(l, 1)?;
                out.push((l.no, Vec::new()));
            }
            "v" => {
                expect_arity(l, 3)?;
                let Some(cur) = out.last_mut() else {
                    return Err(err(l.no, 1, "vertex line before `polygon` header"));
                };
                cur.1.push(pt(int(l, 1)?, int(l, 2)?));
            }
            other => return Err(err(l.no, l.toks[0].col, format!("unexpected `{other}`"))),
        }
    }
    if out.is_empty() {
        return Err(err(1, 1, "expected `polygon` header"));
    }
    Ok(out)
}

pub fn parse_polygon(text: &str) -> Result<LatticePolygon, FormatError> {
    let mut all = parse_polygons(text)?;
    if all.len() != 1 {
        return Err(err(1, 1, format!("expected one polygon, found {}", all.len())).into());
    }
    Ok(all.pop().unwrap())
}

/// All polygons of a multi-stanza file.
pub fn parse_polygons(text: &str) -> Result<Vec<LatticePolygon>, FormatError> {
    polygon_stanzas(text)?
        .into_iter()
        .map(|(_, vs)| LatticePolygon::new(vs).map_err(FormatError::from))
        .collect()
}

pub fn write_polygon(p: &LatticePolygon) -> String {
    let mut s = String::from("polygon\n");
    for v in p.vertices() {
        let _ = writeln!(s, "v {} {}", v.x, v.y);
    }
    s
}

/// Polygon vertices and triangles, before validation.
pub fn parse_triangulation_parts(
    text: &str,
    load: &dyn Fn(&str) -> Result<String, String>,
) -> Result<(LatticePolygon, Vec<Triangle>), FormatError> {
    let ls = lines(text);
    let body = header(&ls, "triangulation")?;
    let Some(pl) = body.first().filter(|l| l.toks[0].text == "p") else {
        let (no, col) = body.first().map_or((ls[0].no + 1, 1), |l| (l.no, l.toks[0].col));
        return Err(err(no, col, "expected `p` line").into());
    };
    let polygon = if pl.toks.len() == 2 && pl.toks[1].text.parse::<i64>().is_err() {
        let src = load(pl.toks[1].text).map_err(|m| err(pl.no, pl.toks[1].col, m))?;
        parse_polygon(&src)?
    } else {
        if pl.toks.len() < 7 || pl.toks.len() % 2 == 0 {
            return Err(err(pl.no, 1, "expected an even number of coordinates for at least 3 vertices").into());
        }
        let mut vs = Vec::new();
        for k in (1..pl.toks.len()).step_by(2) {
            vs.push(pt(int(pl, k)?, int(pl, k + 1)?));
        }
        LatticePolygon::new(vs)?
    };
    let mut tris = Vec::new();
    for l in &body[1..] {
        if l.toks[0].text != "t" {
            return Err(err(l.no, l.toks[0].col, format!("expected `t`, found `{}`", l.toks[0].text)).into());
        }
        expect_arity(l, 7)?;
        let c: Vec<i64> = (1..7).map(|k| int(l, k)).collect::<Result<_, _>>()?;
        tris.push(Triangle::new(pt(c[0], c[1]), pt(c[2], c[3]), pt(c[4], c[5])));
    }
    Ok((polygon, tris))
}

/// Parses and validates a triangulation whose `p` line is inline.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, FormatError> {
    parse_triangulation_with(text, &|name| Err(format!("cannot resolve polygon file `{name}`")))
}

pub fn parse_triangulation_with(
    text: &str,
    load: &dyn Fn(&str) -> Result<String, String>,
) -> Result<Triangulation, FormatError> {
    let (p, tris) = parse_triangulation_parts(text, load)?;
    Ok(Triangulation::validate(p, &tris)?)
}

pub fn write_triangulation(t: &Triangulation) -> String {
    let mut s = String::from("triangulation\np");
    for v in t.polygon().vertices() {
        let _ = write!(s, " {} {}", v.x, v.y);
    }
    s.push('\n');
    for tr in t.triangles() {
        let _ = writeln!(s, "t {} {} {} {} {} {}", tr.a.x, tr.a.y, tr.b.x, tr.b.y, tr.c.x, tr.c.y);
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let ls = lines(text);
    let body = header(&ls, "graph")?;
    let Some(first) = body.first() else {
        return Err(err(ls[0].no + 1, 1, "expected `n` or `circle` line").into());
    };
    if first.toks[0].text == "circle" {
        expect_arity(first, 1)?;
        if let Some(l) = body.get(1) {
            return Err(err(l.no, 1, "unexpected line after `circle`").into());
        }
        return Ok(Graph::Circle);
    }
    if first.toks[0].text != "n" {
        return Err(err(first.no, first.toks[0].col, "expected `n` line").into());
    }
    expect_arity(first, 2)?;
    let n = int(first, 1)?;
    if n < 0 {
        return Err(err(first.no, first.toks[1].col, "vertex count must be non-negative").into());
    }
    let mut edges = Vec::new();
    for l in &body[1..] {
        if l.toks[0].text != "e" {
            return Err(err(l.no, l.toks[0].col, format!("expected `e`, found `{}`", l.toks[0].text)).into());
        }
        expect_arity(l, 3)?;
        let (a, b) = (int(l, 1)?, int(l, 2)?);
        for (k, v) in [(1, a), (2, b)] {
            if v < 0 || v >= n {
                return Err(err(l.no, l.toks[k].col, format!("vertex {v} out of range 0..{n}")).into());
            }
        }
        edges.push((a as usize, b as usize));
    }
    Ok(Graph::Skeleton(Skeleton::new(n as usize, edges)?))
}

pub fn write_graph(g: &Graph) -> String {
    match g {
        Graph::Circle => "graph\ncircle\n".to_string(),
        Graph::Skeleton(s) => {
            let mut out = format!("graph\nn {}\n", s.vertex_count());
            for &(u, v) in s.edges() {
                let _ = writeln!(out, "e {u} {v}");
            }
            out
        }
    }
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut s = String::from("graph skeleton {\n");
    match g {
        Graph::Circle => s.push_str("  c [shape=point];\n  c -- c;\n"),
        Graph::Skeleton(k) => {
            for v in 0..k.vertex_count() {
                let _ = writeln!(s, "  {v};");
            }
            for (e, &(u, v)) in k.edges().iter().enumerate() {
                let _ = writeln!(s, "  {u} -- {v} [label=\"e{e}\"];");
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn skeleton_to_json(ps: &ProvenancedSkeleton) -> Value {
    let (n, edges): (usize, Vec<Value>) = match &ps.graph {
        Graph::Circle => (0, vec![]),
        Graph::Skeleton(s) => (s.vertex_count(), s.edges().iter().map(|&(u, v)| json!([u, v])).collect()),
    };
    let loops: Vec<usize> = match &ps.graph {
        Graph::Circle => vec![],
        Graph::Skeleton(s) => (0..n).map(|v| s.loop_count(v)).collect(),
    };
    let cycle_map: serde_json::Map<String, Value> =
        ps.cycle_map.iter().map(|(z, es)| (format!("{},{}", z.x, z.y), json!(es))).collect();
    let bridges: Vec<Value> = ps
        .bridge_map
        .iter()
        .map(|(e, splits)| {
            json!({
                "edge": e,
                "splits": splits.iter().map(|s| json!({
                    "segment": [[s.segment.0.x, s.segment.0.y], [s.segment.1.x, s.segment.1.y]],
                    "left_genus": s.left_genus,
                    "right_genus": s.right_genus,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "circle": ps.graph.is_circle(),
        "genus": ps.graph.genus(),
        "vertices": n,
        "edges": edges,
        "loops": loops,
        "certificate": ps.graph.certificate(),
        "cycle_map": cycle_map,
        "bridges": bridges,
    })
}

/// `h x y p/q` per lattice point.
pub fn write_heights(t: &Triangulation, h: &[BigRational]) -> String {
    let mut s = String::new();
    for (p, v) in t.points().iter().zip(h) {
        let _ = writeln!(s, "h {} {} {}", p.x, p.y, format_height(v));
    }
    s
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_triangulation(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_carry_position() {
        let e = parse_graph("graph\nn 2\ne 0 x\n").unwrap_err();
        assert_eq!(e, FormatError::Parse(ParseError { line: 3, col: 5, msg: "expected an integer, found `x`".into() }));
        let e = parse_polygon("# c\npolygon\nv 1\n").unwrap_err();
        assert!(matches!(e, FormatError::Parse(ParseError { line: 3, .. })));
        let e = parse_graph("grph\n").unwrap_err();
        assert!(matches!(e, FormatError::Parse(ParseError { line: 1, col: 1, .. })));
    }

    #[test]
    fn graph_round_trip() {
        for text in ["graph\nn 2\ne 0 0\ne 0 1\ne 1 1\n", "graph\ncircle\n"] {
            let g = parse_graph(text).unwrap();
            assert_eq!(write_graph(&g), text);
        }
    }

    #[test]
    fn multi_stanza() {
        let ps = parse_polygons("polygon\nv 0 0\nv 1 0\nv 0 1\npolygon\nv 0 0\nv 2 0\nv 0 2\n").unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(parse_polygon(&write_polygon(&ps[1])).unwrap(), ps[1]);
    }
}
