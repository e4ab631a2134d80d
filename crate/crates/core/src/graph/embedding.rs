//! Planar embeddings as rotation systems.
//!
//! Dart `2e` runs along edge `e` from its lower endpoint to its upper one,
//! dart `2e + 1` runs back. A trivalent vertex has exactly two cyclic orders
//! of its darts, so a graph on `n` vertices has `2^n` rotation systems; an
//! embedding is planar iff `V - E + F = 2`. Graphs here have at most a few
//! dozen vertices, so exhaustive search is affordable.

use std::collections::BTreeSet;

use super::Skeleton;

/// A face of an embedding, as its closed boundary walk.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    /// `darts[i]` leaves `vertices[i]` along edge `edges[i]`.
    pub darts: Vec<usize>,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Face {
    /// The boundary walk visits no vertex twice.
    pub fn is_simple(&self) -> bool {
        let s: BTreeSet<_> = self.vertices.iter().collect();
        s.len() == self.vertices.len()
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.edges.iter().copied().collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    /// Some edge appears twice on the walk.
    pub fn repeats_edge(&self) -> bool {
        self.edge_set().len() != self.edges.len()
    }
}

/// A planar rotation system with its traced faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// Darts leaving each vertex, in cyclic order.
    pub rotation: Vec<Vec<usize>>,
    pub faces: Vec<Face>,
}

fn tail(g: &Skeleton, d: usize) -> usize {
    let (u, v) = g.edge(d / 2);
    if d.is_multiple_of(2) {
        u
    } else {
        v
    }
}

fn darts_at(g: &Skeleton) -> Vec<Vec<usize>> {
    let mut at = vec![Vec::new(); g.vertex_count()];
    for d in 0..2 * g.edge_count() {
        at[tail(g, d)].push(d);
    }
    at
}

fn trace(g: &Skeleton, rotation: &[Vec<usize>]) -> Vec<Face> {
    let nd = 2 * g.edge_count();
    let mut sigma = vec![0; nd];
    for darts in rotation {
        for (i, &d) in darts.iter().enumerate() {
            sigma[d] = darts[(i + 1) % darts.len()];
        }
    }
    let mut seen = vec![false; nd];
    let mut faces = Vec::new();
    for start in 0..nd {
        if seen[start] {
            continue;
        }
        let mut face = Face { darts: Vec::new(), vertices: Vec::new(), edges: Vec::new() };
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            face.darts.push(d);
            face.vertices.push(tail(g, d));
            face.edges.push(d / 2);
            d = sigma[d ^ 1];
        }
        faces.push(face);
    }
    faces
}

impl Embedding {
    /// Iterates over all planar rotation systems up to mirror image, calling
    /// `f` on each; stops early when `f` returns `false`.
    pub fn for_each_planar(g: &Skeleton, mut f: impl FnMut(Embedding) -> bool) {
        let n = g.vertex_count();
        let at = darts_at(g);
        if n == 0 {
            return;
        }
        let target = 2 + g.edge_count() - n;
        // Vertex 0 keeps its listed order; mirror images are skipped.
        for mask in 0u64..(1u64 << (n - 1)) {
            let rotation: Vec<Vec<usize>> = (0..n)
                .map(|v| {
                    let mut d = at[v].clone();
                    if v > 0 && (mask >> (v - 1)) & 1 == 1 {
                        d.swap(1, 2);
                    }
                    d
                })
                .collect();
            let faces = trace(g, &rotation);
            if faces.len() == target && !f(Embedding { rotation, faces }) {
                return;
            }
        }
    }

    /// All planar embeddings up to mirror image, deduplicated by their face
    /// boundaries.
    pub fn all_planar(g: &Skeleton) -> Vec<Embedding> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        Self::for_each_planar(g, |e| {
            let mut sig: Vec<Vec<usize>> = e
                .faces
                .iter()
                .map(|f| {
                    let mut s = f.edges.clone();
                    s.sort();
                    s
                })
                .collect();
            sig.sort();
            if seen.insert(sig) {
                out.push(e);
            }
            true
        });
        out
    }

    pub fn first_planar(g: &Skeleton) -> Option<Embedding> {
        let mut found = None;
        Self::for_each_planar(g, |e| {
            found = Some(e);
            false
        });
        found
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::*;

    #[test]
    fn face_counts() {
        let e = Embedding::first_planar(&k4()).unwrap();
        assert_eq!(e.faces.len(), 4);
        assert!(e.faces.iter().all(|f| f.edges.len() == 3 && f.is_simple()));
        let d = Embedding::first_planar(&dumbbell()).unwrap();
        assert_eq!(d.faces.len(), 3);
        assert_eq!(d.faces.iter().filter(|f| f.repeats_edge()).count(), 1);
        assert!(Embedding::first_planar(&k33()).is_none());
    }

    #[test]
    fn k4_has_one_embedding() {
        assert_eq!(Embedding::all_planar(&k4()).len(), 1);
    }
}
