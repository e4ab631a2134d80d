//! Ground truth by enumeration: which graphs occur as skeletons of
//! (regular) unimodular triangulations of a polygon corpus, and checks of
//! structural facts on every triangulation seen.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::graph::{Graph, Skeleton};
use crate::lattice::LatticePolygon;
use crate::obstruction::{
    detect_double_heavy, detect_heavy_cycle, validate_polygon_level, HeavyCycleMatch, HeavyKind, PolygonReport,
};
use crate::regularity::is_regular;
use crate::skeleton::{skeletonize, ProvenancedSkeleton};
use crate::triangulation::{enumerate_triangulations, Triangle, Triangulation, TriangulationError, DEFAULT_POINT_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CensusRecord {
    pub polygon_normal_form: String,
    pub triangulation: String,
    pub regular: bool,
    pub skeleton_certificate: String,
}

impl CensusRecord {
    /// `polygonNF<TAB>triangulation<TAB>regular<TAB>skeletonCert`.
    pub fn to_line(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.polygon_normal_form, self.triangulation, self.regular, self.skeleton_certificate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    /// Keep only regular triangulations.
    pub regular_only: bool,
    pub point_limit: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { regular_only: true, point_limit: DEFAULT_POINT_LIMIT }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub records: BTreeSet<CensusRecord>,
    /// Polygons over the point limit, by normal form.
    pub skipped: Vec<(String, TriangulationError)>,
}

impl Census {
    pub fn certificates(&self) -> BTreeSet<String> {
        self.records.iter().map(|r| r.skeleton_certificate.clone()).collect()
    }
}

fn triangulations_of(p: &LatticePolygon, limit: usize) -> Result<Vec<Triangulation>, TriangulationError> {
    Ok(enumerate_triangulations(p, limit)?.collect())
}

/// Every triangulation of every polygon, skeletonized. Genus-zero polygons
/// contribute nothing.
pub fn census(polygons: &[LatticePolygon], opts: CensusOptions) -> Census {
    let per: Vec<Result<Vec<CensusRecord>, (String, TriangulationError)>> = polygons
        .par_iter()
        .filter(|p| p.genus() > 0)
        .map(|p| {
            let nf = p.normal_form().serialize();
            let ts = triangulations_of(p, opts.point_limit).map_err(|e| (nf.clone(), e))?;
            Ok(ts
                .par_iter()
                .filter_map(|t| {
                    let regular = is_regular(t).is_some();
                    if opts.regular_only && !regular {
                        return None;
                    }
                    let s = skeletonize(t).expect("positive genus");
                    Some(CensusRecord {
                        polygon_normal_form: nf.clone(),
                        triangulation: t.canonical_serialization(),
                        regular,
                        skeleton_certificate: s.graph.certificate(),
                    })
                })
                .collect())
        })
        .collect();
    let mut c = Census::default();
    for r in per {
        match r {
            Ok(rs) => c.records.extend(rs),
            Err(e) => c.skipped.push(e),
        }
    }
    c.skipped.sort_by(|a, b| a.0.cmp(&b.0));
    c
}

/// Skeleton certificates realized over the corpus, each with the first
/// triangulation found. Regularity is only decided for triangulations
/// whose skeleton is not yet known to be realized.
pub fn realized_certificates(
    polygons: &[LatticePolygon],
    opts: CensusOptions,
) -> BTreeMap<String, (LatticePolygon, Triangulation)> {
    let mut out: BTreeMap<String, (LatticePolygon, Triangulation)> = BTreeMap::new();
    for p in polygons.iter().filter(|p| p.genus() > 0) {
        let Ok(ts) = triangulations_of(p, opts.point_limit) else { continue };
        let mut by_cert: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let certs: Vec<String> = ts.par_iter().map(|t| skeletonize(t).expect("positive genus").graph.certificate()).collect();
        for (i, c) in certs.into_iter().enumerate() {
            by_cert.entry(c).or_default().push(i);
        }
        let found: Vec<(String, usize)> = by_cert
            .into_par_iter()
            .filter(|(c, _)| !out.contains_key(c))
            .filter_map(|(c, idx)| {
                let hit = if opts.regular_only { idx.into_iter().find(|&i| is_regular(&ts[i]).is_some()) } else { idx.first().copied() };
                hit.map(|i| (c, i))
            })
            .collect();
        for (c, i) in found {
            out.insert(c, (p.clone(), ts[i].clone()));
        }
    }
    out
}

/// The first triangulation over `polygons` (in order) whose skeleton is
/// isomorphic to `g`; polygons of another genus are skipped.
pub fn find_witness(g: &Graph, polygons: &[LatticePolygon], opts: CensusOptions) -> Option<(LatticePolygon, Triangulation)> {
    let cert = g.certificate();
    for p in polygons.iter().filter(|p| p.genus() == g.genus()) {
        let Ok(stream) = enumerate_triangulations(p, opts.point_limit) else { continue };
        for t in stream {
            if skeletonize(&t).expect("positive genus").graph.certificate() != cert {
                continue;
            }
            if !opts.regular_only || is_regular(&t).is_some() {
                return Some((p.clone(), t));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbzReport {
    /// Triangles meeting the hypotheses.
    pub checked: usize,
    pub violations: Vec<Triangle>,
}

/// For every triangle `(a, b, z)` with `z` interior and `a`, `b` boundary
/// points that are not vertices of the polygon: `a` and `b` share an edge
/// of the polygon or `a + b - z` lies in it.
pub fn check_abz(t: &Triangulation) -> AbzReport {
    let p = t.polygon();
    let mut r = AbzReport::default();
    for tri in t.triangles() {
        let v = tri.vertices();
        for k in 0..3 {
            let (z, a, b) = (v[k], v[(k + 1) % 3], v[(k + 2) % 3]);
            if !p.is_interior_point(z) {
                continue;
            }
            let qualifies = [a, b].iter().all(|&x| p.is_boundary_point(x) && !p.is_vertex(x));
            if !qualifies {
                continue;
            }
            r.checked += 1;
            if !p.on_common_edge(a, b) && !p.contains(a.add(b).sub(z)) {
                r.violations.push(tri);
            }
        }
    }
    r
}

/// Every heavy match with one or two loops and every double heavy match
/// whose cycles are cycles around interior points, with its realization
/// checks.
pub fn check_structural_conditions(t: &Triangulation, ps: &ProvenancedSkeleton) -> Vec<(HeavyCycleMatch, PolygonReport)> {
    let Some(g) = ps.graph.as_skeleton() else { return Vec::new() };
    let faces: BTreeSet<BTreeSet<usize>> = ps.cycle_map.values().map(|es| es.iter().copied().collect()).collect();
    let on_faces = |m: &HeavyCycleMatch| m.cycles.iter().all(|c| faces.contains(&c.edge_set()));
    structural_matches(g)
        .into_iter()
        .filter(|m| on_faces(m))
        .map(|m| {
            let r = validate_polygon_level(t, &ps.graph, &m).expect("face matches map to the triangulation");
            (m, r)
        })
        .collect()
}

fn structural_matches(g: &Skeleton) -> Vec<HeavyCycleMatch> {
    let mut ms: Vec<HeavyCycleMatch> = detect_heavy_cycle(g).into_iter().filter(|m| m.kind != HeavyKind::Plain).collect();
    ms.extend(detect_double_heavy(g));
    ms
}
