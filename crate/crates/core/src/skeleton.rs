//! From a triangulation's dual graph to its trivalent skeleton.
//!
//! Leaves are pruned repeatedly, then every maximal path through 2-valent
//! nodes is replaced by one edge. Each skeleton edge remembers the dual arcs
//! (equivalently, the triangulation segments) it replaces; the maps from
//! interior points to cycles and from bridges to split edges are read off
//! from that record.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, Skeleton};
use crate::lattice::LatticePoint;
use crate::triangulation::{SplitEdge, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error("polygon has no interior lattice points")]
    GenusZero,
}

/// Result of pruning and smoothing a multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    pub graph: Graph,
    /// Original edge ids replaced by each new edge, in path order. For a
    /// circle, the single entry lists the whole cycle.
    pub edge_paths: Vec<Vec<usize>>,
    /// Original vertex of each new vertex.
    pub anchors: Vec<usize>,
}

/// Prunes degree-one vertices and smooths degree-two vertices of a connected
/// multigraph. `None` if nothing survives (a tree).
pub fn retract(n: usize, edges: &[(usize, usize)]) -> Option<Retraction> {
    let mut deg = vec![0usize; n];
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        deg[u] += 1;
        deg[v] += 1;
        inc[u].push(e);
        if u != v {
            inc[v].push(e);
        }
    }
    let mut alive = vec![true; edges.len()];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if deg[v] != 1 {
            continue;
        }
        let e = *inc[v].iter().find(|&&e| alive[e]).unwrap();
        alive[e] = false;
        let (a, b) = edges[e];
        let w = if a == v { b } else { a };
        deg[v] -= 1;
        deg[w] -= 1;
        if deg[w] == 1 {
            stack.push(w);
        }
    }
    let other = |e: usize, v: usize| if edges[e].0 == v { edges[e].1 } else { edges[e].0 };
    let anchors: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    if anchors.is_empty() {
        let start = (0..n).find(|&v| deg[v] == 2)?;
        // A single cycle: walk it once.
        let mut path = Vec::new();
        let mut used = vec![false; edges.len()];
        let mut cur = start;
        loop {
            let Some(&e) = inc[cur].iter().find(|&&e| alive[e] && !used[e]) else { break };
            used[e] = true;
            path.push(e);
            cur = other(e, cur);
        }
        return Some(Retraction { graph: Graph::Circle, edge_paths: vec![path], anchors: vec![] });
    }
    let mut index = vec![usize::MAX; n];
    for (k, &a) in anchors.iter().enumerate() {
        index[a] = k;
    }
    let mut used = vec![false; edges.len()];
    let mut new_edges = Vec::new();
    let mut edge_paths = Vec::new();
    for &a in &anchors {
        for &e0 in &inc[a] {
            // A loop at an anchor appears once in `inc`.
            if !alive[e0] || used[e0] {
                continue;
            }
            used[e0] = true;
            let mut path = vec![e0];
            let mut cur = other(e0, a);
            let mut last = e0;
            while index[cur] == usize::MAX {
                let e = *inc[cur].iter().find(|&&e| alive[e] && e != last).unwrap();
                used[e] = true;
                path.push(e);
                last = e;
                cur = other(e, cur);
            }
            new_edges.push((index[a], index[cur]));
            edge_paths.push(path);
        }
    }
    let s = Skeleton::raw(anchors.len(), new_edges);
    Some(Retraction { graph: Graph::Skeleton(s), edge_paths, anchors })
}

/// A skeleton together with its dictionary back to the triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenancedSkeleton {
    pub graph: Graph,
    /// Skeleton edges on the cycle around each interior point. Empty for the
    /// circle, whose only cycle is the whole graph.
    pub cycle_map: BTreeMap<LatticePoint, Vec<usize>>,
    /// Split edges crossed by each skeleton bridge.
    pub bridge_map: BTreeMap<usize, Vec<SplitEdge>>,
    /// Triangle (index into the triangulation) of each skeleton vertex.
    pub vertex_triangles: Vec<usize>,
    /// Triangulation segments crossed by each skeleton edge, in order.
    pub edge_segments: Vec<Vec<(LatticePoint, LatticePoint)>>,
}

pub fn skeletonize(t: &Triangulation) -> Result<ProvenancedSkeleton, SkeletonError> {
    if t.polygon().genus() == 0 {
        return Err(SkeletonError::GenusZero);
    }
    let dual = t.dual_graph();
    let arcs: Vec<(usize, usize)> = dual.arcs.iter().map(|&(a, b, _)| (a, b)).collect();
    let r = retract(dual.nodes.len(), &arcs).expect("positive genus leaves a cycle");
    let edge_segments: Vec<Vec<(LatticePoint, LatticePoint)>> =
        r.edge_paths.iter().map(|p| p.iter().map(|&a| dual.arcs[a].2).collect()).collect();
    let mut arc_owner = vec![usize::MAX; arcs.len()];
    for (e, p) in r.edge_paths.iter().enumerate() {
        for &a in p {
            arc_owner[a] = e;
        }
    }
    let mut cycle_map = BTreeMap::new();
    let is_circle = r.graph.is_circle();
    for &z in t.polygon().interior_lattice_points() {
        let mut es: Vec<usize> = Vec::new();
        if !is_circle {
            for (a, &(_, _, (p, q))) in dual.arcs.iter().enumerate() {
                if (p == z || q == z) && !es.contains(&arc_owner[a]) {
                    es.push(arc_owner[a]);
                }
            }
            es.sort();
        }
        cycle_map.insert(z, es);
    }
    let mut bridge_map = BTreeMap::new();
    if let Graph::Skeleton(s) = &r.graph {
        for e in s.cut_edges() {
            let splits = edge_segments[e]
                .iter()
                .filter(|(p, q)| t.polygon().is_boundary_point(*p) && t.polygon().is_boundary_point(*q))
                .map(|&(p, q)| t.split_edge_of(p, q))
                .collect();
            bridge_map.insert(e, splits);
        }
    }
    Ok(ProvenancedSkeleton {
        graph: r.graph,
        cycle_map,
        bridge_map,
        vertex_triangles: r.anchors,
        edge_segments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{pt, LatticePolygon};
    use crate::triangulation::enumerate_triangulations;

    #[test]
    fn genus_zero_rejected() {
        let p = LatticePolygon::new(vec![pt(0, 0), pt(2, 0), pt(0, 2)]).unwrap();
        let t = enumerate_triangulations(&p, 16).unwrap().next().unwrap();
        assert_eq!(skeletonize(&t), Err(SkeletonError::GenusZero));
    }

    #[test]
    fn genus_one_is_circle() {
        let p = LatticePolygon::new(vec![pt(0, 0), pt(3, 0), pt(0, 3)]).unwrap();
        for t in enumerate_triangulations(&p, 16).unwrap() {
            let s = skeletonize(&t).unwrap();
            assert_eq!(s.graph, Graph::Circle);
            assert_eq!(s.graph.genus(), 1);
        }
    }

    #[test]
    fn trivalent_input_is_fixed() {
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let r = retract(4, &k4).unwrap();
        assert_eq!(r.graph, Graph::Skeleton(Skeleton::raw(4, k4)));
        assert!(r.edge_paths.iter().enumerate().all(|(i, p)| p == &vec![i]));
        let dumbbell = [(0, 0), (0, 1), (1, 1)];
        let r = retract(2, &dumbbell).unwrap();
        assert_eq!(r.graph, Graph::Skeleton(Skeleton::raw(2, dumbbell)));
    }

    #[test]
    fn pendant_tree_pruned() {
        // theta with a pendant path of length two hung off a subdivided edge
        let g = [(0, 2), (2, 1), (0, 1), (0, 1), (2, 3), (3, 4)];
        let r = retract(5, &g).unwrap();
        assert_eq!(r.graph.certificate(), Skeleton::raw(2, [(0, 1), (0, 1), (0, 1)]).certificate());
    }
}
