//! Trivalent multigraphs with loops and parallel edges.
//!
//! Edges are stored as `(u, v)` with `u <= v`; a loop `(v, v)` contributes
//! two to the degree of `v`. Edge ids are positions in the edge list and are
//! stable for the lifetime of a value.

mod canon;
mod embedding;
mod generate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_form, CanonicalForm};
pub use embedding::{Embedding, Face};
pub use generate::{
    enumerate_trivalent_planar, enumerate_trivalent_planar_backtracking, enumerate_trivalent_graphs,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} has degree {1}, expected 3")]
    NotTrivalent(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge endpoint {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("edge {0} is not a cut edge")]
    NotACutEdge(usize),
    #[error("genus {0} is out of range")]
    OutOfRange(usize),
    #[error("graph has no vertices")]
    Empty,
}

/// A connected trivalent multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Skeleton {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// A skeleton of genus at least two, or the vertexless circle of genus one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Graph {
    Circle,
    Skeleton(Skeleton),
}

impl Graph {
    pub fn genus(&self) -> usize {
        match self {
            Graph::Circle => 1,
            Graph::Skeleton(s) => s.genus(),
        }
    }

    pub fn certificate(&self) -> String {
        match self {
            Graph::Circle => "circle".to_string(),
            Graph::Skeleton(s) => s.certificate(),
        }
    }

    pub fn as_skeleton(&self) -> Option<&Skeleton> {
        match self {
            Graph::Circle => None,
            Graph::Skeleton(s) => Some(s),
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, Graph::Circle)
    }

    pub fn is_planar(&self) -> bool {
        self.as_skeleton().is_none_or(Skeleton::is_planar)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph::Circle => write!(f, "circle"),
            Graph::Skeleton(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} edges=", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

/// One side of a bridge split, smoothed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphComponentPiece {
    pub graph: Graph,
    /// Edge of `graph` that absorbed the smoothed endpoint of the removed
    /// bridge; `None` for a circle.
    pub attachment_edge: Option<usize>,
    /// Original vertex id to vertex id in `graph`, for surviving vertices.
    pub vertex_map: Vec<Option<usize>>,
}

/// A simple cycle: cyclic vertex sequence and the edge ids between
/// consecutive vertices (`edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.edges.iter().copied().collect()
    }
}

impl Skeleton {
    /// Validated constructor: in-range endpoints, trivalent, connected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let s = Self::raw(n, edges);
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if let Some(&(_, v)) = s.edges.iter().find(|&&(_, v)| v >= n) {
            return Err(GraphError::VertexOutOfRange(v));
        }
        for v in 0..n {
            let d = s.degree(v);
            if d != 3 {
                return Err(GraphError::NotTrivalent(v, d));
            }
        }
        if !s.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(s)
    }

    /// Unchecked multigraph; degrees arbitrary.
    pub(crate) fn raw(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Self { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    /// Edge ids incident to `v`; a loop is listed once.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v).collect()
    }

    /// The endpoint of `e` other than `v` (`v` itself for a loop).
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Number of edges minus vertices plus components; equals
    /// `E - V + 1` when connected.
    pub fn genus(&self) -> usize {
        let c = self.components_excluding(&[]).len();
        self.edges.len() + c - self.n
    }

    pub fn is_connected(&self) -> bool {
        self.components_excluding(&[]).len() <= 1
    }

    /// Connected components (as sorted vertex lists) of the graph with the
    /// edges in `removed` deleted.
    pub fn components_excluding(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let nx = p[x];
                p[x] = r;
                x = nx;
            }
            r
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if removed.contains(&e) {
                continue;
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Bridges, by depth-first low-link on edge ids.
    pub fn cut_edges(&self) -> Vec<usize> {
        let n = self.n;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent edge, next adjacency index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
                if *i < adj[v].len() {
                    let (w, e) = adj[v][*i];
                    *i += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_cut_edge(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u != v && self.components_excluding(&[e]).len() > self.components_excluding(&[]).len()
    }

    /// Every simple cycle: loops, pairs of parallel edges, and longer
    /// cycles, each once.
    pub fn simple_cycles(&self) -> Vec<Cycle> {
        let mut out = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                out.push(Cycle { vertices: vec![u], edges: vec![e] });
            }
        }
        let inc: Vec<Vec<usize>> = (0..self.n).map(|v| self.incident(v)).collect();
        for s in 0..self.n {
            let mut vs = vec![s];
            let mut es = Vec::new();
            let mut on = vec![false; self.n];
            on[s] = true;
            self.cycle_dfs(s, &inc, &mut vs, &mut es, &mut on, &mut out);
        }
        out
    }

    fn cycle_dfs(
        &self,
        s: usize,
        inc: &[Vec<usize>],
        vs: &mut Vec<usize>,
        es: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Cycle>,
    ) {
        let v = *vs.last().unwrap();
        for &e in &inc[v] {
            if self.is_loop(e) || es.contains(&e) {
                continue;
            }
            let w = self.other_end(e, v);
            if w == s {
                let closes = match vs.len() {
                    1 => false,
                    2 => es[0] < e,
                    _ => vs[1] < v,
                };
                if closes {
                    let mut edges = es.clone();
                    edges.push(e);
                    out.push(Cycle { vertices: vs.clone(), edges });
                }
            } else if w > s && !on[w] {
                on[w] = true;
                vs.push(w);
                es.push(e);
                self.cycle_dfs(s, inc, vs, es, on, out);
                es.pop();
                vs.pop();
                on[w] = false;
            }
        }
    }

    pub fn certificate(&self) -> String {
        canonical_form(self).certificate
    }

    pub fn is_planar(&self) -> bool {
        Embedding::first_planar(self).is_some()
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::raw(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// The two smoothed components of `G - e`, the first containing the
    /// lower endpoint of `e`.
    pub fn split_at_cut_edge(&self, e: usize) -> Result<(GraphComponentPiece, GraphComponentPiece), GraphError> {
        if e >= self.edges.len() || !self.is_cut_edge(e) {
            return Err(GraphError::NotACutEdge(e));
        }
        let (u, v) = self.edges[e];
        let comps = self.components_excluding(&[e]);
        let piece = |root: usize| {
            let comp = comps.iter().find(|c| c.contains(&root)).unwrap();
            let keep: Vec<usize> = (0..self.edges.len())
                .filter(|&f| f != e && comp.contains(&self.edges[f].0))
                .collect();
            self.smoothed_subgraph(comp, &keep, Some(root))
        };
        Ok((piece(u), piece(v)))
    }

    /// The subgraph on `vertices` with edge ids `keep`, with every 2-valent
    /// vertex smoothed away. Vertices of any other degree than 2 or 3 are
    /// kept as they are, so callers must pass a subgraph that becomes
    /// trivalent. `track` names a vertex whose absorbing edge is reported.
    pub(crate) fn smoothed_subgraph(
        &self,
        vertices: &[usize],
        keep: &[usize],
        track: Option<usize>,
    ) -> GraphComponentPiece {
        // Work on an edge list where each entry is a path (a, b) with
        // possibly removed interior vertices.
        let mut edges: Vec<Option<(usize, usize)>> = keep.iter().map(|&f| Some(self.edges[f])).collect();
        let mut alive: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut tracked_edge: Option<usize> = None;
        loop {
            let deg2 = alive.iter().copied().find(|&x| {
                edges.iter().flatten().map(|&(a, b)| (a == x) as usize + (b == x) as usize).sum::<usize>() == 2
            });
            let Some(x) = deg2 else { break };
            let inc: Vec<usize> = (0..edges.len())
                .filter(|&i| edges[i].is_some_and(|(a, b)| a == x || b == x))
                .collect();
            if inc.len() == 1 {
                // x carries only a loop.
                if alive.len() == 1 {
                    let vertex_map = vec![None; self.n];
                    return GraphComponentPiece { graph: Graph::Circle, attachment_edge: None, vertex_map };
                }
                break;
            }
            let (i, j) = (inc[0], inc[1]);
            let (a0, b0) = edges[i].unwrap();
            let (a1, b1) = edges[j].unwrap();
            let p = if a0 == x { b0 } else { a0 };
            let q = if a1 == x { b1 } else { a1 };
            edges[i] = Some((p.min(q), p.max(q)));
            edges[j] = None;
            if Some(x) == track || tracked_edge == Some(j) {
                tracked_edge = Some(i);
            }
            alive.remove(&x);
        }
        let mut vertex_map = vec![None; self.n];
        for (k, &x) in alive.iter().enumerate() {
            vertex_map[x] = Some(k);
        }
        let mut new_edges = Vec::new();
        let mut attachment_edge = None;
        for (i, e) in edges.iter().enumerate() {
            if let Some((a, b)) = *e {
                if tracked_edge == Some(i) {
                    attachment_edge = Some(new_edges.len());
                }
                new_edges.push((vertex_map[a].unwrap(), vertex_map[b].unwrap()));
            }
        }
        let s = Skeleton::raw(alive.len(), new_edges);
        GraphComponentPiece { graph: Graph::Skeleton(s), attachment_edge, vertex_map }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn theta() -> Skeleton {
        Skeleton::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    pub fn dumbbell() -> Skeleton {
        Skeleton::new(2, [(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    pub fn k4() -> Skeleton {
        Skeleton::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn k33() -> Skeleton {
        Skeleton::new(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()
    }

    pub fn triple_loop_star() -> Skeleton {
        Skeleton::new(4, [(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)]).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(Skeleton::new(2, [(0, 1), (0, 1)]), Err(GraphError::NotTrivalent(0, 2)));
        assert_eq!(
            Skeleton::new(4, [(0, 0), (0, 1), (1, 1), (2, 2), (2, 3), (3, 3)]),
            Err(GraphError::Disconnected)
        );
        assert_eq!(Skeleton::new(2, [(0, 5), (0, 1), (0, 1)]), Err(GraphError::VertexOutOfRange(5)));
    }

    #[test]
    fn dumbbell_basics() {
        let d = dumbbell();
        assert_eq!(d.genus(), 2);
        assert_eq!(d.cut_edges(), vec![1]);
        assert_eq!(d.simple_cycles().len(), 2);
        assert!(d.is_planar());
    }

    #[test]
    fn k4_and_k33() {
        let k = k4();
        assert_eq!(k.genus(), 3);
        assert!(k.cut_edges().is_empty());
        assert_eq!(k.simple_cycles().len(), 7);
        assert!(k.is_planar());
        assert_eq!(k33().genus(), 4);
        assert!(!k33().is_planar());
    }

    #[test]
    fn theta_cycles() {
        // three pairs of parallel edges
        assert_eq!(theta().simple_cycles().len(), 3);
        assert!(theta().cut_edges().is_empty());
    }

    #[test]
    fn split_dumbbell() {
        let (a, b) = dumbbell().split_at_cut_edge(1).unwrap();
        assert_eq!(a.graph, Graph::Circle);
        assert_eq!(b.graph, Graph::Circle);
        assert_eq!(dumbbell().split_at_cut_edge(0), Err(GraphError::NotACutEdge(0)));
    }

    #[test]
    fn split_star() {
        let s = triple_loop_star();
        let (a, b) = s.split_at_cut_edge(0).unwrap();
        assert_eq!(a.graph.genus() + b.graph.genus(), 3);
        let big = if a.graph.is_circle() { b } else { a };
        assert_eq!(big.graph.certificate(), dumbbell().certificate());
        assert!(big.attachment_edge.is_some());
    }
}
