//! Exhaustive generation of connected trivalent multigraphs by genus.
//!
//! Every connected trivalent graph of genus `g >= 3` arises from one of genus
//! `g - 1` by either joining two points subdividing edges (possibly the same
//! edge) with a new edge, or hanging a new loop off a point subdividing an
//! edge: undo the first by deleting any edge that is neither a loop nor a
//! bridge, and the second by deleting a pendant loop when every non-loop
//! edge is a bridge. Deleting an edge keeps a planar graph planar, so the
//! planar family can be filtered level by level.

use std::collections::BTreeMap;

use super::{canonical_form, GraphError, Skeleton};

pub const MAX_GENERATED_GENUS: usize = 6;

fn genus_two() -> Vec<Skeleton> {
    vec![
        Skeleton::raw(2, [(0, 1), (0, 1), (0, 1)]),
        Skeleton::raw(2, [(0, 0), (0, 1), (1, 1)]),
    ]
}

/// Children of `g` one genus up.
fn augment(g: &Skeleton) -> Vec<Skeleton> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut out = Vec::new();
    let (x, y) = (n, n + 1);
    for e1 in 0..m {
        for e2 in e1..m {
            let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m + 3);
            for (e, &(a, b)) in g.edges().iter().enumerate() {
                if e == e1 && e == e2 {
                    edges.extend([(a, x), (x, y), (y, b)]);
                } else if e == e1 {
                    edges.extend([(a, x), (x, b)]);
                } else if e == e2 {
                    edges.extend([(a, y), (y, b)]);
                } else {
                    edges.push((a, b));
                }
            }
            edges.push((x, y));
            out.push(Skeleton::raw(n + 2, edges));
        }
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m + 3);
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if e == e1 {
                edges.extend([(a, x), (x, b)]);
            } else {
                edges.push((a, b));
            }
        }
        edges.extend([(x, y), (y, y)]);
        out.push(Skeleton::raw(n + 2, edges));
    }
    out
}

/// Canonically relabeled representative.
fn canonical(g: &Skeleton) -> (String, Skeleton) {
    let cf = canonical_form(g);
    let mut s = g.permuted(&cf.labeling);
    let mut e = s.edges().to_vec();
    e.sort();
    s = Skeleton::raw(s.vertex_count(), e);
    (cf.certificate, s)
}

fn generate(genus: usize, planar_only: bool) -> Result<Vec<Skeleton>, GraphError> {
    if !(2..=MAX_GENERATED_GENUS).contains(&genus) {
        return Err(GraphError::OutOfRange(genus));
    }
    let mut level: BTreeMap<String, Skeleton> = genus_two().iter().map(canonical).collect();
    for _ in 2..genus {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for c in augment(g) {
                let (cert, s) = canonical(&c);
                if next.contains_key(&cert) || (planar_only && !s.is_planar()) {
                    continue;
                }
                next.insert(cert, s);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// All connected trivalent planar multigraphs of the given genus, one per
/// isomorphism class, canonically labeled and sorted by certificate.
pub fn enumerate_trivalent_planar(genus: usize) -> Result<Vec<Skeleton>, GraphError> {
    generate(genus, true)
}

/// As [`enumerate_trivalent_planar`] without the planarity filter.
pub fn enumerate_trivalent_graphs(genus: usize) -> Result<Vec<Skeleton>, GraphError> {
    generate(genus, false)
}

/// Independent generator: backtracking over edge multisets on `2g - 2`
/// labeled vertices, with untouched vertices introduced in order.
pub fn enumerate_trivalent_planar_backtracking(genus: usize) -> Result<Vec<Skeleton>, GraphError> {
    if !(2..=MAX_GENERATED_GENUS).contains(&genus) {
        return Err(GraphError::OutOfRange(genus));
    }
    let n = 2 * genus - 2;
    let mut found = BTreeMap::new();
    let mut rem = vec![3usize; n];
    let mut edges = Vec::new();
    backtrack(n, &mut rem, &mut edges, 0, &mut found);
    Ok(found.into_values().collect())
}

fn backtrack(
    n: usize,
    rem: &mut [usize],
    edges: &mut Vec<(usize, usize)>,
    min_partner: usize,
    found: &mut BTreeMap<String, Skeleton>,
) {
    let Some(v) = (0..n).find(|&v| rem[v] > 0) else {
        let g = Skeleton::raw(n, edges.iter().copied());
        if g.is_connected() {
            let (cert, s) = canonical(&g);
            if !found.contains_key(&cert) && s.is_planar() {
                found.insert(cert, s);
            }
        }
        return;
    };
    // Partners of v are chosen in nondecreasing order, so each multiset of
    // edges at v is tried once; `min_partner` carries the last choice.
    let start = min_partner.max(v);
    let first_untouched = (v + 1..n).find(|&w| rem[w] == 3);
    for w in start..n {
        if w == v {
            if rem[v] < 2 {
                continue;
            }
        } else if rem[w] == 0 || (rem[w] == 3 && Some(w) != first_untouched) {
            continue;
        }
        if w == v {
            rem[v] -= 2;
        } else {
            rem[v] -= 1;
            rem[w] -= 1;
        }
        edges.push((v, w));
        let next_min = if rem[v] > 0 { w } else { 0 };
        backtrack(n, rem, edges, next_min, found);
        edges.pop();
        if w == v {
            rem[v] += 2;
        } else {
            rem[v] += 1;
            rem[w] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::*;

    #[test]
    fn genus_two_has_two() {
        let g = enumerate_trivalent_planar(2).unwrap();
        assert_eq!(g.len(), 2);
        let certs: Vec<_> = g.iter().map(|s| s.certificate()).collect();
        assert!(certs.contains(&theta().certificate()));
        assert!(certs.contains(&dumbbell().certificate()));
    }

    #[test]
    fn genus_three_contains_k4_and_star() {
        let certs: Vec<_> = enumerate_trivalent_planar(3).unwrap().iter().map(|s| s.certificate()).collect();
        assert!(certs.contains(&k4().certificate()));
        assert!(certs.contains(&triple_loop_star().certificate()));
    }

    #[test]
    fn generators_agree_up_to_genus_four() {
        for g in 2..=4 {
            let a: Vec<_> = enumerate_trivalent_planar(g).unwrap().iter().map(|s| s.certificate()).collect();
            let b: Vec<_> =
                enumerate_trivalent_planar_backtracking(g).unwrap().iter().map(|s| s.certificate()).collect();
            assert_eq!(a, b, "genus {g}");
        }
    }

    #[test]
    fn matches_known_counts_without_planarity() {
        // Connected cubic multigraphs with loops on 2, 4, 6, 8 vertices.
        for (g, want) in [(2, 2), (3, 5), (4, 17), (5, 71)] {
            assert_eq!(enumerate_trivalent_graphs(g).unwrap().len(), want, "genus {g}");
        }
    }

    #[test]
    fn out_of_range() {
        assert_eq!(enumerate_trivalent_planar(1), Err(GraphError::OutOfRange(1)));
        assert_eq!(enumerate_trivalent_planar(7), Err(GraphError::OutOfRange(7)));
    }
}
