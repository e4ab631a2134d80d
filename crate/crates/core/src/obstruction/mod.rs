//! Forbidden patterns for skeletons of smooth tropical plane curves.
//!
//! Polygon-level conditions are translated to graph-level ones through the
//! planar embedding a realization induces: a *compatible embedding* is a
//! planar rotation system with a distinguished outer face such that every
//! bridge lies on the outer face only, every bounded face is a simple cycle,
//! and two bounded faces share at most one edge. In a realization the
//! bounded faces are the cycles around interior lattice points, so every
//! realizable graph has at least one compatible embedding.

mod catalog;
mod corollary;
mod heavy;
mod polygon;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{Cycle, Embedding, Skeleton};

pub use catalog::{detect_catalog, Catalog, CatalogEntry, CatalogError, Pattern, Predicate};
pub use corollary::{heavy_one_loop_family, CorollaryGraph};
pub use heavy::{
    contact_graph, detect_double_heavy, face_matches, heavy_item, detect_heavy_cycle, double_heavy_two_loops_obstructed,
    heavy_one_loop_obstructed, heavy_two_loops_obstructed, ContactGraph, HeavyCycleMatch, HeavyKind, MatchError,
    Violation,
};
pub use polygon::{validate_polygon_level, Check, PolygonReport, ValidationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ObstructionKind {
    SprawlingNode,
    SprawlingTriangle,
    Crowded,
    TieFighter,
    HeavyTwoLoops,
    CutEdgeRecursion,
    HeavyOneLoop,
    DoubleHeavyTwoLoops,
    EnveLoopCatalog,
}

impl ObstructionKind {
    pub const ALL: [ObstructionKind; 9] = [
        ObstructionKind::SprawlingNode,
        ObstructionKind::SprawlingTriangle,
        ObstructionKind::Crowded,
        ObstructionKind::TieFighter,
        ObstructionKind::HeavyTwoLoops,
        ObstructionKind::CutEdgeRecursion,
        ObstructionKind::HeavyOneLoop,
        ObstructionKind::DoubleHeavyTwoLoops,
        ObstructionKind::EnveLoopCatalog,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObstructionKind::SprawlingNode => "SprawlingNode",
            ObstructionKind::SprawlingTriangle => "SprawlingTriangle",
            ObstructionKind::Crowded => "Crowded",
            ObstructionKind::TieFighter => "TieFighter",
            ObstructionKind::HeavyTwoLoops => "HeavyTwoLoops",
            ObstructionKind::CutEdgeRecursion => "CutEdgeRecursion",
            ObstructionKind::HeavyOneLoop => "HeavyOneLoop",
            ObstructionKind::DoubleHeavyTwoLoops => "DoubleHeavyTwoLoops",
            ObstructionKind::EnveLoopCatalog => "EnveLoopCatalog",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// The substructure an obstruction matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// A vertex all of whose edges are bridges.
    Vertex(usize),
    /// A 3-cycle with a bridge at each vertex.
    Triangle([usize; 3]),
    /// A catalog entry, by name.
    Catalog(String),
    /// A heavy or double heavy match and the condition it violates.
    Heavy { matched: Box<HeavyCycleMatch>, violation: Violation },
    /// A bridge one of whose sides is obstructed.
    CutEdge { edge: usize, piece: Box<Obstruction> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub witness: Witness,
}

/// A planar embedding together with an outer face meeting the conditions
/// above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleEmbedding {
    pub embedding: Embedding,
    pub outer: usize,
    /// The bounded faces as cycles.
    pub bounded: Vec<Cycle>,
}

fn face_cycle(f: &crate::graph::Face) -> Cycle {
    Cycle { vertices: f.vertices.clone(), edges: f.edges.clone() }
}

/// Every compatible embedding, up to mirror image.
pub fn compatible_embeddings(g: &Skeleton) -> Vec<CompatibleEmbedding> {
    let bridges: BTreeSet<usize> = g.cut_edges().into_iter().collect();
    let mut out = Vec::new();
    for emb in Embedding::all_planar(g) {
        let with_bridge: Vec<usize> = (0..emb.faces.len())
            .filter(|&i| emb.faces[i].edges.iter().any(|e| bridges.contains(e)))
            .collect();
        let candidates: Vec<usize> = match with_bridge.len() {
            0 => (0..emb.faces.len()).collect(),
            1 => with_bridge,
            _ => continue,
        };
        for outer in candidates {
            let bounded: Vec<usize> = (0..emb.faces.len()).filter(|&i| i != outer).collect();
            if bounded.iter().any(|&i| !emb.faces[i].is_simple()) {
                continue;
            }
            let sets: Vec<BTreeSet<usize>> = bounded.iter().map(|&i| emb.faces[i].edge_set()).collect();
            let crowded = (0..sets.len())
                .any(|a| (a + 1..sets.len()).any(|b| sets[a].intersection(&sets[b]).count() >= 2));
            if crowded {
                continue;
            }
            let cycles = bounded.iter().map(|&i| face_cycle(&emb.faces[i])).collect();
            out.push(CompatibleEmbedding { embedding: emb.clone(), outer, bounded: cycles });
        }
    }
    out
}

/// No compatible embedding exists.
pub fn is_crowded(g: &Skeleton) -> bool {
    compatible_embeddings(g).is_empty()
}

pub fn detect_crowded(g: &Skeleton) -> Option<Obstruction> {
    is_crowded(g).then(|| Obstruction { kind: ObstructionKind::Crowded, witness: Witness::Catalog("crowded".into()) })
}

/// Number of bridges at each vertex.
fn bridge_degrees(g: &Skeleton) -> Vec<usize> {
    let mut d = vec![0; g.vertex_count()];
    for e in g.cut_edges() {
        let (u, v) = g.edge(e);
        d[u] += 1;
        d[v] += 1;
    }
    d
}

/// A vertex whose removal leaves three components; in a trivalent graph
/// this means all three of its edges are bridges.
pub fn detect_sprawling_node(g: &Skeleton) -> Option<Obstruction> {
    let d = bridge_degrees(g);
    (0..g.vertex_count())
        .find(|&v| d[v] == 3)
        .map(|v| Obstruction { kind: ObstructionKind::SprawlingNode, witness: Witness::Vertex(v) })
}

/// A 3-cycle each of whose vertices carries a bridge leading away from it.
pub fn detect_sprawling_triangle(g: &Skeleton) -> Option<Obstruction> {
    let d = bridge_degrees(g);
    for c in g.simple_cycles() {
        if c.vertices.len() != 3 || c.vertices.iter().any(|&v| d[v] == 0) {
            continue;
        }
        // The bridges are the third edges, so deleting the triangle leaves
        // their far sides, each of positive genus.
        let rest = g.components_excluding(&c.edges);
        let pieces = rest.iter().filter(|comp| comp.len() > 1).count();
        if pieces == 3 {
            let mut t = [c.vertices[0], c.vertices[1], c.vertices[2]];
            t.sort();
            return Some(Obstruction { kind: ObstructionKind::SprawlingTriangle, witness: Witness::Triangle(t) });
        }
    }
    None
}

/// Genus of the subgraph induced on `vertices` (assumed connected).
pub(crate) fn induced_genus(g: &Skeleton, vertices: &BTreeSet<usize>) -> usize {
    let e = g.edges().iter().filter(|(u, v)| vertices.contains(u) && vertices.contains(v)).count();
    (e + 1).saturating_sub(vertices.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::tests::{dumbbell, k4, theta, triple_loop_star};

    #[test]
    fn sprawling_node_examples() {
        assert_eq!(detect_sprawling_node(&triple_loop_star()).unwrap().witness, Witness::Vertex(0));
        assert!(detect_sprawling_node(&k4()).is_none());
        let fig1 = fixtures::fig1_skeleton();
        assert!(detect_sprawling_node(fig1.as_skeleton().unwrap()).is_none());
    }

    #[test]
    fn sprawling_triangle_examples() {
        // triangle 0 1 2 with loops hung at 3 4 5
        let g = Skeleton::new(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5), (3, 3), (4, 4), (5, 5)]).unwrap();
        assert_eq!(detect_sprawling_triangle(&g).unwrap().witness, Witness::Triangle([0, 1, 2]));
        assert!(detect_sprawling_triangle(&k4()).is_none());
        let f = fixtures::fig2_graph('f');
        assert!(detect_sprawling_triangle(f.as_skeleton().unwrap()).is_none());
    }

    #[test]
    fn compatible_embeddings_of_small_graphs() {
        assert!(!compatible_embeddings(&theta()).is_empty());
        assert!(!compatible_embeddings(&dumbbell()).is_empty());
        assert!(!compatible_embeddings(&k4()).is_empty());
        for e in compatible_embeddings(&dumbbell()) {
            assert_eq!(e.bounded.len(), 2);
        }
        for g in [fixtures::fig1_skeleton(), fixtures::fig10_skeleton()] {
            let es = compatible_embeddings(g.as_skeleton().unwrap());
            assert!(!es.is_empty());
            assert!(es.iter().all(|e| e.bounded.len() == 6));
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ObstructionKind::ALL {
            assert_eq!(ObstructionKind::from_name(k.name()), Some(k));
        }
    }
}
