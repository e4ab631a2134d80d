//! Random heavy cycles with one loop at large genus.
//!
//! A 4-cycle `c0 c1 c2 c3` carries a bridge at `c0` to a loop and a bridge
//! at `c1` to a random piece `G2` of genus at least two, while `c2` and `c3`
//! both attach to a random piece `R`. The heavy component is the cycle with
//! `R`, of genus `genus(R) + 2`; the total genus is
//! `genus(G2) + genus(R) + 3`.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;

use super::compatible_embeddings;
use crate::graph::{enumerate_trivalent_planar, Graph, Skeleton};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryGraph {
    pub graph: Skeleton,
    /// The heavy cycle `c0 c1 c2 c3`.
    pub cycle: [usize; 4],
    /// Bridge from `c0` to the loop.
    pub loop_bridge: usize,
    /// Bridge from `c1` to `G2`.
    pub side_bridge: usize,
    pub side_genus: usize,
    pub rest_genus: usize,
}

/// Appends a copy of `piece` to `edges` with `ports` new vertices of degree
/// two on one of its edges; returns the ports.
fn insert_piece<R: Rng>(edges: &mut Vec<(usize, usize)>, n: &mut usize, piece: &Graph, ports: usize, rng: &mut R) -> Vec<usize> {
    let base = *n;
    let mut own: Vec<(usize, usize)> = match piece {
        Graph::Circle => {
            *n += ports;
            let out: Vec<usize> = (base..base + ports).collect();
            if ports == 1 {
                edges.push((base, base));
            } else {
                edges.push((base, base + 1));
                edges.push((base, base + 1));
            }
            return out;
        }
        Graph::Skeleton(s) => s.edges().iter().map(|&(u, v)| (u + base, v + base)).collect(),
    };
    *n += piece.as_skeleton().map_or(0, Skeleton::vertex_count);
    let k = rng.gen_range(0..own.len());
    let (u, v) = own.swap_remove(k);
    let new: Vec<usize> = (*n..*n + ports).collect();
    *n += ports;
    let mut prev = u;
    for &x in &new {
        own.push((prev.min(x), prev.max(x)));
        prev = x;
    }
    own.push((prev.min(v), prev.max(v)));
    edges.extend(own);
    new
}

/// Up to `count` pairwise non-isomorphic graphs of the family with total
/// genus in `8..=10`, each planar with a compatible embedding.
pub fn heavy_one_loop_family<R: Rng>(rng: &mut R, count: usize) -> Vec<CorollaryGraph> {
    let mut lists: HashMap<usize, Vec<Skeleton>> = HashMap::new();
    let mut piece = |genus: usize, rng: &mut R| -> Graph {
        if genus == 1 {
            return Graph::Circle;
        }
        let l = lists.entry(genus).or_insert_with(|| enumerate_trivalent_planar(genus).expect("genus in range"));
        Graph::Skeleton(l[rng.gen_range(0..l.len())].clone())
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let total = rng.gen_range(8..=10);
        let side_genus = rng.gen_range(2..=5usize);
        let Some(rest_genus) = (total - 3usize).checked_sub(side_genus).filter(|r| (1..=4).contains(r)) else {
            continue;
        };
        let g2 = piece(side_genus, rng);
        let rest = piece(rest_genus, rng);
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (0, 3)];
        let mut n = 4;
        let lp = insert_piece(&mut edges, &mut n, &Graph::Circle, 1, rng);
        let loop_bridge = edges.len();
        edges.push((0, lp[0]));
        let sp = insert_piece(&mut edges, &mut n, &g2, 1, rng);
        let side_bridge = edges.len();
        edges.push((1, sp[0]));
        let rp = insert_piece(&mut edges, &mut n, &rest, 2, rng);
        edges.push((2, rp[0]));
        edges.push((3, rp[1]));
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        let Ok(graph) = Skeleton::new(n, edges) else { continue };
        debug_assert_eq!(graph.genus(), total);
        if !graph.is_planar() || !seen.insert(graph.certificate()) {
            continue;
        }
        if compatible_embeddings(&graph).is_empty() {
            continue;
        }
        out.push(CorollaryGraph { graph, cycle: [0, 1, 2, 3], loop_bridge, side_bridge, side_genus, rest_genus });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fam = heavy_one_loop_family(&mut rng, 5);
        assert_eq!(fam.len(), 5);
        for c in &fam {
            let g = &c.graph;
            assert!((8..=10).contains(&g.genus()));
            assert!(g.is_cut_edge(c.loop_bridge) && g.is_cut_edge(c.side_bridge));
            assert_eq!(g.genus(), c.side_genus + c.rest_genus + 3);
        }
    }
}
