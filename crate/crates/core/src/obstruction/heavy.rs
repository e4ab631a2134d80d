//! Heavy cycles, double heavy cycles and the conditions a realization
//! imposes on them.
//!
//! A heavy cycle `C` carries bridges `e1`, `e2` at distinct nodes `v1`, `v2`
//! to pieces `G1`, `G2`; the heavy component `H` is the component of
//! `G - e1 - e2` containing `C`, and must have genus at least two (so that a
//! third positive-genus part meets `C`). For a double heavy pair, `C1` and
//! `C2` share exactly one edge, `v` is an endpoint of it, `v1` and `v2` are
//! the neighbours of `v` along `C1` and `C2`, both bridged to loops, and `H`
//! has genus at least three.
//!
//! Collinear interior points of a heavy component translate to a *chain*:
//! in a compatible embedding, the bounded faces of `H` together with the
//! vertices of `H` carrying three bridges form the contact graph, where two
//! faces touch when they share a vertex and a bridge links whatever it joins.
//! `H` is a chain when that graph is a path.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::{induced_genus, CompatibleEmbedding, Obstruction, ObstructionKind, Witness};
use crate::graph::{Cycle, Graph, Skeleton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum HeavyKind {
    /// Neither bridged piece is a loop.
    Plain,
    /// `G1` is a loop, `G2` is not.
    OneLoop,
    TwoLoops,
    DoubleTwoLoops,
}

impl HeavyKind {
    fn obstruction(self) -> Option<ObstructionKind> {
        match self {
            HeavyKind::Plain => None,
            HeavyKind::OneLoop => Some(ObstructionKind::HeavyOneLoop),
            HeavyKind::TwoLoops => Some(ObstructionKind::HeavyTwoLoops),
            HeavyKind::DoubleTwoLoops => Some(ObstructionKind::DoubleHeavyTwoLoops),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeavyCycleMatch {
    pub kind: HeavyKind,
    /// The heavy cycle, or the double heavy pair.
    pub cycles: Vec<Cycle>,
    /// Endpoint of the shared edge of a double heavy pair.
    pub pivot: Option<usize>,
    pub v1: usize,
    pub v2: usize,
    pub e1: usize,
    pub e2: usize,
    /// Smoothed far sides of `e1` and `e2`.
    pub g1: Graph,
    pub g2: Graph,
    /// Vertices of the heavy component, sorted.
    pub heavy_vertices: Vec<usize>,
    pub heavy_genus: usize,
}

/// The failed condition behind an obstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The heavy component has too large (or for a double heavy pair, not
    /// exactly four) genus.
    HeavyGenus(usize),
    /// The non-loop piece `G2` of a one-loop match has genus above three.
    SideGenus(usize),
    /// The heavy component is not a chain in any compatible embedding.
    NotChain,
    /// The heavy cycle is not an end of the chain.
    NotTerminal,
    /// At genus six, a genus-two `G2` has a bridge.
    SplitInSide,
    /// Any two of the four faces of the heavy component touch.
    CompleteContact,
    /// No vertex of the heavy component lies on three of its faces.
    NoTripleVertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("match is not a heavy cycle with one loop")]
    NotOneLoopMatch,
    #[error("match is not a heavy cycle with two loops")]
    NotTwoLoopsMatch,
    #[error("match is not a double heavy cycle with two loops")]
    NotDoubleHeavyMatch,
}

fn bridge_at(g: &Skeleton, v: usize, bridges: &BTreeSet<usize>) -> Option<usize> {
    g.incident(v).into_iter().find(|e| bridges.contains(e))
}

/// Smoothed far side of bridge `e` as seen from `v`.
fn far_piece(g: &Skeleton, e: usize, v: usize) -> Graph {
    let (a, b) = g.split_at_cut_edge(e).expect("bridge");
    if g.edge(e).0 == v {
        b.graph
    } else {
        a.graph
    }
}

fn component_of(g: &Skeleton, removed: &[usize], v: usize) -> BTreeSet<usize> {
    g.components_excluding(removed).into_iter().find(|c| c.contains(&v)).unwrap().into_iter().collect()
}

pub(crate) fn heavy_on_cycle(g: &Skeleton, c: &Cycle, bridges: &BTreeSet<usize>) -> Vec<HeavyCycleMatch> {
    let bridged: Vec<(usize, usize)> =
        c.vertices.iter().filter_map(|&v| bridge_at(g, v, bridges).map(|e| (v, e))).collect();
    let mut out = Vec::new();
    for i in 0..bridged.len() {
        for j in i + 1..bridged.len() {
            let ((mut v1, mut e1), (mut v2, mut e2)) = (bridged[i], bridged[j]);
            let heavy = component_of(g, &[e1, e2], v1);
            let heavy_genus = induced_genus(g, &heavy);
            if heavy_genus < 2 {
                continue;
            }
            let (mut g1, mut g2) = (far_piece(g, e1, v1), far_piece(g, e2, v2));
            let kind = match (g1.is_circle(), g2.is_circle()) {
                (true, true) => HeavyKind::TwoLoops,
                (false, false) => HeavyKind::Plain,
                _ => HeavyKind::OneLoop,
            };
            if !g1.is_circle() && g2.is_circle() {
                std::mem::swap(&mut g1, &mut g2);
                std::mem::swap(&mut v1, &mut v2);
                std::mem::swap(&mut e1, &mut e2);
            }
            out.push(HeavyCycleMatch {
                kind,
                cycles: vec![c.clone()],
                pivot: None,
                v1,
                v2,
                e1,
                e2,
                g1,
                g2,
                heavy_vertices: heavy.into_iter().collect(),
                heavy_genus,
            });
        }
    }
    out
}

/// The edge of `c` at `v` other than `s`, with its far endpoint.
fn next_along(g: &Skeleton, c: &Cycle, v: usize, s: usize) -> Option<(usize, usize)> {
    let k = c.edges.len();
    (0..k).find_map(|i| {
        let e = c.edges[i];
        if e == s {
            return None;
        }
        let (a, b) = (c.vertices[i], c.vertices[(i + 1) % k]);
        if a == v {
            Some((e, b))
        } else if b == v {
            Some((e, a))
        } else {
            None
        }
    })
    .filter(|&(e, _)| !g.is_loop(e))
}

pub(crate) fn double_heavy_on(
    g: &Skeleton,
    c1: &Cycle,
    c2: &Cycle,
    bridges: &BTreeSet<usize>,
) -> Vec<HeavyCycleMatch> {
    let shared: Vec<usize> = c1.edge_set().intersection(&c2.edge_set()).copied().collect();
    let mut out = Vec::new();
    if shared.len() != 1 || g.is_loop(shared[0]) {
        return out;
    }
    let s = shared[0];
    let (a, b) = g.edge(s);
    for v in [a, b] {
        let (Some((x, v1)), Some((y, v2))) = (next_along(g, c1, v, s), next_along(g, c2, v, s)) else {
            continue;
        };
        if x == y || v1 == v2 {
            continue;
        }
        let (Some(e1), Some(e2)) = (bridge_at(g, v1, bridges), bridge_at(g, v2, bridges)) else {
            continue;
        };
        let (g1, g2) = (far_piece(g, e1, v1), far_piece(g, e2, v2));
        if !g1.is_circle() || !g2.is_circle() {
            continue;
        }
        let heavy = component_of(g, &[e1, e2], v);
        let heavy_genus = induced_genus(g, &heavy);
        if heavy_genus < 3 {
            continue;
        }
        out.push(HeavyCycleMatch {
            kind: HeavyKind::DoubleTwoLoops,
            cycles: vec![c1.clone(), c2.clone()],
            pivot: Some(v),
            v1,
            v2,
            e1,
            e2,
            g1,
            g2,
            heavy_vertices: heavy.into_iter().collect(),
            heavy_genus,
        });
    }
    out
}

/// Heavy matches over all simple cycles.
pub fn detect_heavy_cycle(g: &Skeleton) -> Vec<HeavyCycleMatch> {
    let bridges: BTreeSet<usize> = g.cut_edges().into_iter().collect();
    g.simple_cycles().iter().flat_map(|c| heavy_on_cycle(g, c, &bridges)).collect()
}

/// Double heavy matches with two loops over all pairs of simple cycles.
pub fn detect_double_heavy(g: &Skeleton) -> Vec<HeavyCycleMatch> {
    let bridges: BTreeSet<usize> = g.cut_edges().into_iter().collect();
    let cycles = g.simple_cycles();
    let mut out = Vec::new();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            out.extend(double_heavy_on(g, &cycles[i], &cycles[j], &bridges));
        }
    }
    out
}

/// Faces of a heavy component and how they touch; nodes are numbered faces
/// first, then hubs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactGraph {
    /// Indices into the face list passed to [`contact_graph`].
    pub faces: Vec<usize>,
    /// Vertices carrying three bridges.
    pub hubs: Vec<usize>,
    pub adj: Vec<BTreeSet<usize>>,
}

impl ContactGraph {
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn node_of_face(&self, face: usize) -> Option<usize> {
        self.faces.iter().position(|&f| f == face)
    }

    fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_path(&self) -> bool {
        let edges: usize = self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2;
        self.is_connected()
            && self.adj.iter().all(|a| a.len() <= 2)
            && edges + 1 == self.len().max(1)
    }

    /// Every pair of nodes is adjacent.
    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|a| a.len() + 1 == self.len())
    }
}

/// Contact graph of the heavy component on `heavy` within an embedding
/// whose bounded faces are `faces`; bridges in `removed` are ignored.
pub fn contact_graph(g: &Skeleton, faces: &[Cycle], heavy: &BTreeSet<usize>, removed: &[usize]) -> ContactGraph {
    let inside: Vec<usize> =
        (0..faces.len()).filter(|&i| faces[i].vertices.iter().all(|v| heavy.contains(v))).collect();
    let bridges: Vec<usize> = g.cut_edges().into_iter().filter(|e| !removed.contains(e)).collect();
    let mut bdeg = vec![0; g.vertex_count()];
    for &e in &bridges {
        let (u, v) = g.edge(e);
        bdeg[u] += 1;
        bdeg[v] += 1;
    }
    let hubs: Vec<usize> = heavy.iter().copied().filter(|&v| bdeg[v] == 3).collect();
    let n = inside.len() + hubs.len();
    let mut adj = vec![BTreeSet::new(); n];
    let vsets: Vec<BTreeSet<usize>> = inside.iter().map(|&i| faces[i].vertices.iter().copied().collect()).collect();
    for a in 0..inside.len() {
        for b in a + 1..inside.len() {
            if !vsets[a].is_disjoint(&vsets[b]) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let nodes_at = |x: usize| -> Vec<usize> {
        match hubs.iter().position(|&h| h == x) {
            Some(k) => vec![inside.len() + k],
            None => (0..inside.len()).filter(|&a| vsets[a].contains(&x)).collect(),
        }
    };
    for &e in &bridges {
        let (u, v) = g.edge(e);
        if !heavy.contains(&u) || !heavy.contains(&v) {
            continue;
        }
        for a in nodes_at(u) {
            for b in nodes_at(v) {
                if a != b {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
    }
    ContactGraph { faces: inside, hubs, adj }
}

fn face_index(faces: &[Cycle], c: &Cycle) -> Option<usize> {
    let s = c.edge_set();
    faces.iter().position(|f| f.edge_set() == s)
}

/// Conditions readable from the graph alone.
fn intrinsic_violation(g: &Skeleton, m: &HeavyCycleMatch) -> Option<Violation> {
    match m.kind {
        HeavyKind::OneLoop => {
            if m.heavy_genus > 3 {
                Some(Violation::HeavyGenus(m.heavy_genus))
            } else if m.g2.genus() > 3 {
                Some(Violation::SideGenus(m.g2.genus()))
            } else if g.genus() == 6
                && m.g2.genus() == 2
                && m.g2.as_skeleton().is_some_and(|s| !s.cut_edges().is_empty())
            {
                Some(Violation::SplitInSide)
            } else {
                None
            }
        }
        HeavyKind::TwoLoops => (m.heavy_genus > 3).then_some(Violation::HeavyGenus(m.heavy_genus)),
        HeavyKind::DoubleTwoLoops => (m.heavy_genus != 4).then_some(Violation::HeavyGenus(m.heavy_genus)),
        HeavyKind::Plain => None,
    }
}

/// Conditions that depend on the embedding; `None` also when the match's
/// cycles are not bounded faces of it.
fn embedded_violation(g: &Skeleton, faces: &[Cycle], m: &HeavyCycleMatch) -> Option<Violation> {
    let idx: Vec<usize> = m.cycles.iter().map(|c| face_index(faces, c)).collect::<Option<_>>()?;
    let heavy: BTreeSet<usize> = m.heavy_vertices.iter().copied().collect();
    let k = contact_graph(g, faces, &heavy, &[m.e1, m.e2]);
    match m.kind {
        HeavyKind::OneLoop | HeavyKind::TwoLoops => {
            if !k.is_path() {
                Some(Violation::NotChain)
            } else if k.adj[k.node_of_face(idx[0])?].len() > 1 {
                Some(Violation::NotTerminal)
            } else {
                None
            }
        }
        HeavyKind::DoubleTwoLoops => {
            let sets: Vec<BTreeSet<usize>> =
                k.faces.iter().map(|&i| faces[i].vertices.iter().copied().collect()).collect();
            let triple = heavy.iter().any(|v| sets.iter().filter(|s| s.contains(v)).count() >= 3);
            if k.faces.len() == 4 && k.hubs.is_empty() && k.is_complete() {
                Some(Violation::CompleteContact)
            } else if !triple {
                Some(Violation::NoTripleVertex)
            } else {
                None
            }
        }
        HeavyKind::Plain => None,
    }
}

fn violation_in(g: &Skeleton, e: &CompatibleEmbedding, m: &HeavyCycleMatch) -> Option<Violation> {
    intrinsic_violation(g, m).or_else(|| embedded_violation(g, &e.bounded, m))
}

fn obstruction(m: &HeavyCycleMatch, v: Violation) -> Obstruction {
    Obstruction {
        kind: m.kind.obstruction().expect("plain matches carry no obstruction"),
        witness: Witness::Heavy { matched: Box::new(m.clone()), violation: v },
    }
}

/// Per-match verdict: the intrinsic conditions, or else the embedded ones
/// failing in every compatible embedding where the match's cycles are
/// bounded faces (and at least one such embedding exists).
fn per_match(g: &Skeleton, m: &HeavyCycleMatch) -> Option<Obstruction> {
    if let Some(v) = intrinsic_violation(g, m) {
        return Some(obstruction(m, v));
    }
    let mut first = None;
    for e in super::compatible_embeddings(g) {
        if m.cycles.iter().any(|c| face_index(&e.bounded, c).is_none()) {
            continue;
        }
        {
            let v = embedded_violation(g, &e.bounded, m)?;
            first.get_or_insert(v);
        }
    }
    first.map(|v| obstruction(m, v))
}

pub fn heavy_one_loop_obstructed(g: &Skeleton, m: &HeavyCycleMatch) -> Result<Option<Obstruction>, MatchError> {
    if m.kind != HeavyKind::OneLoop {
        return Err(MatchError::NotOneLoopMatch);
    }
    Ok(per_match(g, m))
}

pub fn heavy_two_loops_obstructed(g: &Skeleton, m: &HeavyCycleMatch) -> Result<Option<Obstruction>, MatchError> {
    if m.kind != HeavyKind::TwoLoops {
        return Err(MatchError::NotTwoLoopsMatch);
    }
    Ok(per_match(g, m))
}

pub fn double_heavy_two_loops_obstructed(
    g: &Skeleton,
    m: &HeavyCycleMatch,
) -> Result<Option<Obstruction>, MatchError> {
    if m.kind != HeavyKind::DoubleTwoLoops {
        return Err(MatchError::NotDoubleHeavyMatch);
    }
    Ok(per_match(g, m))
}

/// Matches of `kind` whose cycles are bounded faces of `e`.
pub fn face_matches(g: &Skeleton, e: &CompatibleEmbedding, kind: HeavyKind) -> Vec<HeavyCycleMatch> {
    let bridges: BTreeSet<usize> = g.cut_edges().into_iter().collect();
    let f = &e.bounded;
    let mut out = Vec::new();
    if kind == HeavyKind::DoubleTwoLoops {
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                out.extend(double_heavy_on(g, &f[i], &f[j], &bridges));
            }
        }
    } else {
        for c in f {
            out.extend(heavy_on_cycle(g, c, &bridges).into_iter().filter(|m| m.kind == kind));
        }
    }
    out
}

/// The item for `kind` fires when compatible embeddings exist and each one
/// has a match of that kind among its faces violating a condition.
pub fn heavy_item(g: &Skeleton, embeddings: &[CompatibleEmbedding], kind: HeavyKind) -> Option<Obstruction> {
    let mut first = None;
    for e in embeddings {
        let hit = face_matches(g, e, kind).into_iter().find_map(|m| violation_in(g, e, &m).map(|v| (m, v)));
        match hit {
            None => return None,
            Some((m, v)) => {
                first.get_or_insert_with(|| obstruction(&m, v));
            }
        }
    }
    first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::tests::{dumbbell, k4};
    use crate::obstruction::compatible_embeddings;

    fn sk(g: &Graph) -> &Skeleton {
        g.as_skeleton().unwrap()
    }

    #[test]
    fn no_heavy_cycles_without_third_part() {
        assert!(detect_heavy_cycle(&dumbbell()).is_empty());
        assert!(detect_double_heavy(&k4()).is_empty());
    }

    #[test]
    fn fig10_one_loop_match() {
        let g = fixtures::fig10_skeleton();
        let ms: Vec<_> = detect_heavy_cycle(sk(&g)).into_iter().filter(|m| m.kind == HeavyKind::OneLoop).collect();
        assert!(!ms.is_empty());
        assert!(ms.iter().any(|m| m.g2.genus() == 2 && m.g2.as_skeleton().unwrap().cut_edges().is_empty()));
        for m in &ms {
            assert_eq!(heavy_one_loop_obstructed(sk(&g), m), Ok(None));
        }
    }

    #[test]
    fn fig1_double_heavy_match() {
        let g = fixtures::fig1_skeleton();
        let ms = detect_double_heavy(sk(&g));
        assert!(!ms.is_empty());
        for m in &ms {
            assert_eq!(m.heavy_genus, 4);
            assert_eq!(double_heavy_two_loops_obstructed(sk(&g), m), Ok(None));
        }
    }

    #[test]
    fn fig2_items() {
        let expect = [
            ('a', HeavyKind::OneLoop, Violation::NotChain),
            ('b', HeavyKind::OneLoop, Violation::NotTerminal),
            ('c', HeavyKind::OneLoop, Violation::SplitInSide),
            ('d', HeavyKind::OneLoop, Violation::SplitInSide),
        ];
        for (key, kind, violation) in expect {
            let g = fixtures::fig2_graph(key);
            let es = compatible_embeddings(sk(&g));
            assert!(!es.is_empty(), "{key}");
            let o = heavy_item(sk(&g), &es, kind).unwrap_or_else(|| panic!("{key}"));
            match o.witness {
                Witness::Heavy { violation: v, .. } => assert_eq!(v, violation, "{key}"),
                _ => unreachable!(),
            }
        }
        let expect = [('e', Violation::NoTripleVertex), ('f', Violation::CompleteContact), ('h', Violation::NoTripleVertex)];
        for (key, violation) in expect {
            let g = fixtures::fig2_graph(key);
            let es = compatible_embeddings(sk(&g));
            let o = heavy_item(sk(&g), &es, HeavyKind::DoubleTwoLoops).unwrap_or_else(|| panic!("{key}"));
            match o.witness {
                Witness::Heavy { violation: v, .. } => assert_eq!(v, violation, "{key}"),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn contact_graph_shapes() {
        let path = ContactGraph { faces: vec![0, 1, 2], hubs: vec![], adj: vec![[1].into(), [0, 2].into(), [1].into()] };
        assert!(path.is_path() && !path.is_complete());
        let tri = ContactGraph { faces: vec![0, 1, 2], hubs: vec![], adj: vec![[1, 2].into(), [0, 2].into(), [0, 1].into()] };
        assert!(!tri.is_path() && tri.is_complete());
    }
}
