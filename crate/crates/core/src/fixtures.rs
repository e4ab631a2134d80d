//! Bundled example data: two triangulated genus-6 polygons with their
//! skeletons, eight genus-6 graphs, and the obstruction catalog.

use crate::graph::Graph;
use crate::io::{parse_graph, parse_polygon, parse_triangulation};
use crate::lattice::LatticePolygon;
use crate::triangulation::Triangulation;

pub const FIG1_POLY: &str = include_str!("../../../fixtures/fig1.poly");
pub const FIG1_TRI: &str = include_str!("../../../fixtures/fig1.tri");
pub const FIG1_GRAPH: &str = include_str!("../../../fixtures/fig1.graph");
pub const FIG10_POLY: &str = include_str!("../../../fixtures/fig10.poly");
pub const FIG10_TRI: &str = include_str!("../../../fixtures/fig10.tri");
pub const FIG10_GRAPH: &str = include_str!("../../../fixtures/fig10.graph");
pub const CATALOG: &str = include_str!("../../../fixtures/catalog.txt");

/// The eight genus-6 graphs, keyed `a` to `h`.
pub const FIG2_GRAPHS: [(char, &str); 8] = [
    ('a', include_str!("../../../fixtures/fig2_a.graph")),
    ('b', include_str!("../../../fixtures/fig2_b.graph")),
    ('c', include_str!("../../../fixtures/fig2_c.graph")),
    ('d', include_str!("../../../fixtures/fig2_d.graph")),
    ('e', include_str!("../../../fixtures/fig2_e.graph")),
    ('f', include_str!("../../../fixtures/fig2_f.graph")),
    ('g', include_str!("../../../fixtures/fig2_g.graph")),
    ('h', include_str!("../../../fixtures/fig2_h.graph")),
];

pub fn fig1_polygon() -> LatticePolygon {
    parse_polygon(FIG1_POLY).expect("bundled fixture parses")
}

pub fn fig1_triangulation() -> Triangulation {
    parse_triangulation(FIG1_TRI).expect("bundled fixture validates")
}

pub fn fig1_skeleton() -> Graph {
    parse_graph(FIG1_GRAPH).expect("bundled fixture parses")
}

pub fn fig10_polygon() -> LatticePolygon {
    parse_polygon(FIG10_POLY).expect("bundled fixture parses")
}

pub fn fig10_triangulation() -> Triangulation {
    parse_triangulation(FIG10_TRI).expect("bundled fixture validates")
}

pub fn fig10_skeleton() -> Graph {
    parse_graph(FIG10_GRAPH).expect("bundled fixture parses")
}

pub fn fig2_graph(key: char) -> Graph {
    let (_, text) = FIG2_GRAPHS.iter().find(|(k, _)| *k == key).expect("keys are a to h");
    parse_graph(text).expect("bundled fixture parses")
}
