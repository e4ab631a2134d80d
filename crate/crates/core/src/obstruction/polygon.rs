//! Checks of a heavy or double heavy match against a triangulation that
//! realizes it.
//!
//! The match is read through the skeleton's provenance: each cycle is the
//! cycle around an interior point `z`, each skeleton vertex is a triangle,
//! and each bridge crosses a split edge of the triangle at its endpoint.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::{HeavyCycleMatch, HeavyKind};
use crate::graph::Graph;
use crate::lattice::LatticePoint;
use crate::skeleton::{skeletonize, ProvenancedSkeleton};
use crate::triangulation::{Triangle, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonReport {
    pub checks: Vec<Check>,
}

impl PolygonReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, pass, detail: detail.into() });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("match does not map to the triangulation")]
    MatchDoesNotMapToTriangulation,
}

use ValidationError::MatchDoesNotMapToTriangulation as NoMap;

type Seg = (LatticePoint, LatticePoint);

fn sides(t: &Triangle) -> [Seg; 3] {
    [(t.a, t.b), (t.b, t.c), (t.a, t.c)]
}

fn norm(s: Seg) -> Seg {
    if s.0 <= s.1 {
        s
    } else {
        (s.1, s.0)
    }
}

fn common_side(a: &Triangle, b: &Triangle) -> Option<Seg> {
    let sb = sides(b).map(norm);
    sides(a).into_iter().map(norm).find(|s| sb.contains(s))
}

fn other(s: Seg, p: LatticePoint) -> Option<LatticePoint> {
    if s.0 == p {
        Some(s.1)
    } else if s.1 == p {
        Some(s.0)
    } else {
        None
    }
}

/// Interior point whose cycle has exactly the given edges.
fn point_of(ps: &ProvenancedSkeleton, edges: &BTreeSet<usize>) -> Option<LatticePoint> {
    ps.cycle_map.iter().find(|(_, es)| es.iter().copied().collect::<BTreeSet<_>>() == *edges).map(|(z, _)| *z)
}

/// The split edge crossed by bridge `e` next to the triangle `t`.
fn split_at(ps: &ProvenancedSkeleton, e: usize, t: &Triangle) -> Option<Seg> {
    let own = sides(t).map(norm);
    ps.edge_segments.get(e)?.iter().map(|&s| norm(s)).find(|s| own.contains(s))
}

/// Restriction of `t` to the closed side of the split `s` containing `z`.
fn side_with(t: &Triangulation, s: Seg, z: LatticePoint) -> Option<(Triangulation, Triangulation)> {
    let split = t.split_edge_of(s.0, s.1);
    let (l, r) = t.decompose_along(&split).ok()?;
    if l.polygon().contains(z) {
        Some((l, r))
    } else {
        Some((r, l))
    }
}

/// Validates the realization-side conclusions for `m`, a match found on the
/// skeleton of `t` itself (same vertex and edge labels as [`skeletonize`]).
pub fn validate_polygon_level(
    t: &Triangulation,
    skeleton: &Graph,
    m: &HeavyCycleMatch,
) -> Result<PolygonReport, ValidationError> {
    let ps = skeletonize(t).map_err(|_| NoMap)?;
    if ps.graph != *skeleton {
        return Err(NoMap);
    }
    let g = ps.graph.as_skeleton().ok_or(NoMap)?;
    let tri = |v: usize| ps.vertex_triangles.get(v).map(|&k| t.triangle(k));
    let zs: Vec<LatticePoint> =
        m.cycles.iter().map(|c| point_of(&ps, &c.edge_set())).collect::<Option<_>>().ok_or(NoMap)?;
    let (t1, t2) = (tri(m.v1).ok_or(NoMap)?, tri(m.v2).ok_or(NoMap)?);
    let s1 = split_at(&ps, m.e1, &t1).ok_or(NoMap)?;
    let s2 = split_at(&ps, m.e2, &t2).ok_or(NoMap)?;
    let mut r = PolygonReport { checks: Vec::new() };
    let p = t.polygon();

    let w = if m.kind == HeavyKind::DoubleTwoLoops {
        let tv = tri(m.pivot.ok_or(NoMap)?).ok_or(NoMap)?;
        let a = common_side(&tv, &t1).filter(|s| other(*s, zs[0]).is_some());
        let b = common_side(&tv, &t2).filter(|s| other(*s, zs[1]).is_some());
        let w1 = a.and_then(|s| other(s, zs[0]));
        let w2 = b.and_then(|s| other(s, zs[1]));
        r.push("T and T1 share an edge through z1", a.is_some(), format!("{a:?}"));
        r.push("T and T2 share an edge through z2", b.is_some(), format!("{b:?}"));
        r.push("both shared edges end at the same w", w1.is_some() && w1 == w2, format!("{w1:?} {w2:?}"));
        let w = w1.filter(|_| w1 == w2);
        let shared = w.is_some_and(|w| t1.vertices().contains(&w) && t2.vertices().contains(&w));
        r.push("w is a vertex of T1 and T2", shared, format!("{w:?}"));
        w
    } else {
        let c = common_side(&t1, &t2).filter(|s| other(*s, zs[0]).is_some());
        r.push("T1 and T2 share an edge through z", c.is_some(), format!("{c:?}"));
        c.and_then(|s| other(s, zs[0]))
    };
    let meet = w.is_some_and(|w| other(s1, w).is_some() && other(s2, w).is_some());
    r.push("split edges meet at w", meet, format!("{s1:?} {s2:?}"));
    r.push("w on the boundary", w.is_some_and(|w| p.is_boundary_point(w)), format!("{w:?}"));

    let (after1, _) = side_with(t, s1, zs[0]).ok_or(NoMap)?;
    let (heavy, side2) = side_with(&after1, s2, zs[0]).ok_or(NoMap)?;
    let hp = heavy.polygon();
    let hg = hp.genus();
    r.push("heavy component genus", hg == m.heavy_genus, format!("{hg}"));
    match m.kind {
        HeavyKind::OneLoop | HeavyKind::TwoLoops => {
            r.push("heavy component hyperelliptic", hp.is_hyperelliptic(), format!("{:?}", hp.interior_lattice_points()));
            r.push("at most three interior points", hg <= 3, format!("{hg}"));
            if m.kind == HeavyKind::OneLoop && g.genus() == 6 && m.g2.genus() == 2 {
                let splits = side2.split_edges().into_iter().filter(|s| s.is_nontrivial()).count();
                r.push("no nontrivial split across e2", splits == 0, format!("{splits}"));
            }
        }
        HeavyKind::DoubleTwoLoops => {
            if g.genus() == 6 {
                let hull = hp.interior_hull();
                r.push("interior hull is a unit parallelogram", hull.is_unit_parallelogram(), format!("{hull:?}"));
                let cycles: Vec<BTreeSet<usize>> = hp
                    .interior_lattice_points()
                    .iter()
                    .filter_map(|z| ps.cycle_map.get(z))
                    .map(|es| es.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect())
                    .collect();
                let triple = (0..g.vertex_count()).find(|v| cycles.iter().filter(|c| c.contains(v)).count() >= 3);
                r.push("three cycles share a vertex", triple.is_some(), format!("{triple:?}"));
            }
        }
        HeavyKind::Plain => {}
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::obstruction::{detect_double_heavy, detect_heavy_cycle};

    #[test]
    fn fig1_double_heavy_checks_pass() {
        let t = fixtures::fig1_triangulation();
        let ps = skeletonize(&t).unwrap();
        let ms = detect_double_heavy(ps.graph.as_skeleton().unwrap());
        assert!(!ms.is_empty());
        for m in &ms {
            let r = validate_polygon_level(&t, &ps.graph, m).unwrap();
            assert!(r.all_pass(), "{r:#?}");
            assert!(r.get("interior hull is a unit parallelogram").unwrap().pass);
        }
    }

    #[test]
    fn fig10_one_loop_checks_pass() {
        let t = fixtures::fig10_triangulation();
        let ps = skeletonize(&t).unwrap();
        let ms: Vec<_> = detect_heavy_cycle(ps.graph.as_skeleton().unwrap())
            .into_iter()
            .filter(|m| m.kind == HeavyKind::OneLoop)
            .collect();
        // Matches on a non-face cycle have no interior point to map to.
        let mut mapped = 0;
        for m in &ms {
            let Ok(r) = validate_polygon_level(&t, &ps.graph, m) else {
                assert!(!ps.cycle_map.values().any(|es| es.iter().copied().collect::<BTreeSet<_>>() == m.cycles[0].edge_set()));
                continue;
            };
            mapped += 1;
            assert!(r.all_pass(), "{r:#?}");
            assert_eq!(r.get("heavy component genus").unwrap().detail, "3");
            assert!(r.get("no nontrivial split across e2").unwrap().pass);
        }
        assert!(mapped > 0);
    }

    #[test]
    fn mismatched_pair_rejected() {
        let t = fixtures::fig1_triangulation();
        let ps = skeletonize(&fixtures::fig10_triangulation()).unwrap();
        let m = detect_heavy_cycle(ps.graph.as_skeleton().unwrap()).remove(0);
        assert_eq!(validate_polygon_level(&t, &ps.graph, &m), Err(NoMap));
    }
}
