//! Full (unimodular) triangulations of lattice polygons.
//!
//! A [`Triangulation`] stores its triangles as sorted triples of indices into
//! the polygon's lexicographically sorted lattice points, so sorting the
//! triple list gives a canonical value: two triangulations are equal iff
//! their triple lists are equal.

mod enumerate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{convex_hull, orient, segments_cross, LatticePoint, LatticePolygon};

pub use enumerate::{
    count_triangulations, enumerate_triangulations, enumerate_triangulations_backtracking,
    placing_triangulation, FlipStream, DEFAULT_POINT_LIMIT,
};

/// A lattice triangle, vertices kept in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    pub a: LatticePoint,
    pub b: LatticePoint,
    pub c: LatticePoint,
}

impl Triangle {
    pub fn new(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Self {
        let mut v = [a, b, c];
        v.sort();
        Self { a: v[0], b: v[1], c: v[2] }
    }

    pub fn vertices(&self) -> [LatticePoint; 3] {
        [self.a, self.b, self.c]
    }

    pub fn doubled_area(&self) -> i64 {
        orient(self.a, self.b, self.c).abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.doubled_area() == 1
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("triangle {0} is not unimodular")]
    NotUnimodular(Triangle),
    #[error("triangles do not tile the polygon: {0}")]
    NotATiling(String),
    #[error("triangles {0} and {1} do not meet face to face")]
    NotFaceToFace(Triangle, Triangle),
    #[error("lattice point {0} is not a vertex of the triangulation")]
    MissingLatticeVertex(LatticePoint),
    #[error("polygon has {points} lattice points, above the limit of {limit}")]
    LimitExceeded { points: usize, limit: usize },
    #[error("segment is not a split edge of the triangulation")]
    NotASplitEdge,
}

/// The one or two triangles incident to a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeFaces {
    pub first: usize,
    pub second: Option<usize>,
}

/// A validated full triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    polygon: LatticePolygon,
    tris: Vec<[usize; 3]>,
    edges: BTreeMap<(usize, usize), EdgeFaces>,
}

/// A segment of a triangulation with both endpoints on the boundary, and the
/// number of interior points strictly on each side. `left` is the side to
/// the left of the directed segment `p -> q` with `p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitEdge {
    pub segment: (LatticePoint, LatticePoint),
    pub left_genus: usize,
    pub right_genus: usize,
}

impl SplitEdge {
    pub fn is_nontrivial(&self) -> bool {
        self.left_genus >= 1 && self.right_genus >= 1
    }
}

/// Dual graph of a triangulation: one node per triangle, one arc per
/// interior segment, one ray per boundary segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: Vec<Triangle>,
    /// `(t1, t2, segment)` with `t1 < t2`.
    pub arcs: Vec<(usize, usize, (LatticePoint, LatticePoint))>,
    /// `(t, boundary segment)`.
    pub rays: Vec<(usize, (LatticePoint, LatticePoint))>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

fn build_edges(tris: &[[usize; 3]]) -> Result<BTreeMap<(usize, usize), EdgeFaces>, usize> {
    let mut edges: BTreeMap<(usize, usize), EdgeFaces> = BTreeMap::new();
    for (t, &[a, b, c]) in tris.iter().enumerate() {
        for (i, j) in [(a, b), (b, c), (a, c)] {
            match edges.get_mut(&(i, j)) {
                None => {
                    edges.insert((i, j), EdgeFaces { first: t, second: None });
                }
                Some(f) if f.second.is_none() => f.second = Some(t),
                Some(_) => return Err(t),
            }
        }
    }
    Ok(edges)
}

impl Triangulation {
    /// Checks that `triangles` is a full triangulation of `polygon`.
    ///
    /// Errors are reported in a fixed order: non-unimodular triangles, vertices
    /// outside the polygon or an area mismatch, properly crossing edges,
    /// overlaps along shared segments, and finally unused lattice points.
    pub fn validate(polygon: LatticePolygon, triangles: &[Triangle]) -> Result<Self, TriangulationError> {
        for t in triangles {
            if !t.is_unimodular() {
                return Err(TriangulationError::NotUnimodular(*t));
            }
        }
        let pts = polygon.lattice_points();
        let mut tris = Vec::with_capacity(triangles.len());
        for t in triangles {
            let mut idx = [0; 3];
            for (slot, p) in idx.iter_mut().zip(t.vertices()) {
                *slot = pts.binary_search(&p).map_err(|_| {
                    TriangulationError::NotATiling(format!("vertex {p} lies outside the polygon"))
                })?;
            }
            tris.push(idx);
        }
        let area: i64 = triangles.len() as i64;
        if area != polygon.doubled_area() {
            return Err(TriangulationError::NotATiling(format!(
                "total doubled area {area} differs from polygon doubled area {}",
                polygon.doubled_area()
            )));
        }
        for (i, s) in triangles.iter().enumerate() {
            for t in &triangles[i + 1..] {
                let crossing = sides(s).iter().any(|&(a, b)| {
                    sides(t).iter().any(|&(c, d)| segments_cross(a, b, c, d))
                });
                if crossing {
                    return Err(TriangulationError::NotFaceToFace(*s, *t));
                }
            }
        }
        tris.sort();
        if tris.windows(2).any(|w| w[0] == w[1]) {
            return Err(TriangulationError::NotATiling("duplicate triangle".into()));
        }
        let edges = build_edges(&tris)
            .map_err(|_| TriangulationError::NotATiling("segment shared by three triangles".into()))?;
        for (&(i, j), f) in &edges {
            let (p, q) = (pts[i], pts[j]);
            let boundary = polygon.on_common_edge(p, q);
            match (boundary, f.second) {
                (true, Some(_)) => {
                    return Err(TriangulationError::NotATiling(format!(
                        "boundary segment {p}-{q} has two triangles"
                    )))
                }
                (false, None) => {
                    return Err(TriangulationError::NotATiling(format!(
                        "interior segment {p}-{q} has one triangle"
                    )))
                }
                (false, Some(s)) => {
                    let o1 = orient(p, q, pts[third(&tris[f.first], i, j)]);
                    let o2 = orient(p, q, pts[third(&tris[s], i, j)]);
                    if o1.signum() == o2.signum() {
                        return Err(TriangulationError::NotATiling(format!(
                            "triangles on {p}-{q} overlap"
                        )));
                    }
                }
                (true, None) => {}
            }
        }
        let mut used = vec![false; pts.len()];
        for t in &tris {
            for &v in t {
                used[v] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(TriangulationError::MissingLatticeVertex(pts[i]));
        }
        Ok(Self { polygon, tris, edges })
    }

    /// Builds a triangulation from sorted index triples already known to be
    /// valid (used by the enumerators).
    pub(crate) fn from_indices(polygon: LatticePolygon, mut tris: Vec<[usize; 3]>) -> Self {
        for t in &mut tris {
            t.sort();
        }
        tris.sort();
        let edges = build_edges(&tris).expect("enumerated triangulation is a simplicial complex");
        let t = Self { polygon, tris, edges };
        debug_assert!(Self::validate(t.polygon.clone(), &t.triangles()).is_ok());
        t
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    pub fn points(&self) -> &[LatticePoint] {
        self.polygon.lattice_points()
    }

    pub fn point_index(&self, p: LatticePoint) -> Option<usize> {
        self.points().binary_search(&p).ok()
    }

    /// Sorted index triples into [`Self::points`].
    pub fn index_triangles(&self) -> &[[usize; 3]] {
        &self.tris
    }

    pub fn triangle(&self, t: usize) -> Triangle {
        let p = self.points();
        let [a, b, c] = self.tris[t];
        Triangle { a: p[a], b: p[b], c: p[c] }
    }

    pub fn triangles(&self) -> Vec<Triangle> {
        (0..self.tris.len()).map(|t| self.triangle(t)).collect()
    }

    pub fn len(&self) -> usize {
        self.tris.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tris.is_empty()
    }

    /// All segments, keyed by sorted point-index pairs.
    pub fn edges(&self) -> &BTreeMap<(usize, usize), EdgeFaces> {
        &self.edges
    }

    pub fn edge_faces(&self, i: usize, j: usize) -> Option<EdgeFaces> {
        self.edges.get(&key(i, j)).copied()
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = ((usize, usize), usize, usize)> + '_ {
        self.edges.iter().filter_map(|(&e, f)| f.second.map(|s| (e, f.first, s)))
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().filter(|(_, f)| f.second.is_none()).map(|(&e, f)| (e, f.first))
    }

    /// The vertex of triangle `t` opposite the segment `{i, j}`.
    pub fn opposite(&self, t: usize, i: usize, j: usize) -> usize {
        third(&self.tris[t], i, j)
    }

    /// `x1,y1,x2,y2,x3,y3` per triangle, sorted, joined by `;`.
    pub fn canonical_serialization(&self) -> String {
        self.triangles()
            .iter()
            .map(|t| format!("{},{},{},{},{},{}", t.a.x, t.a.y, t.b.x, t.b.y, t.c.x, t.c.y))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Replaces the diagonal `{i, j}` of a strictly convex quadrilateral by
    /// the other diagonal. `None` if the segment is on the boundary or the
    /// quadrilateral is not strictly convex.
    pub fn flip(&self, i: usize, j: usize) -> Option<Self> {
        let f = self.edge_faces(i, j)?;
        let s = f.second?;
        let (i, j) = key(i, j);
        let k = third(&self.tris[f.first], i, j);
        let l = third(&self.tris[s], i, j);
        let p = self.points();
        if !segments_cross(p[i], p[j], p[k], p[l]) {
            return None;
        }
        let mut tris: Vec<[usize; 3]> = self
            .tris
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != f.first && t != s)
            .map(|(_, &t)| t)
            .collect();
        tris.push([k, l, i]);
        tris.push([k, l, j]);
        Some(Self::from_indices(self.polygon.clone(), tris))
    }

    pub fn dual_graph(&self) -> DualGraph {
        let p = self.points();
        let nodes = self.triangles();
        let mut arcs = Vec::new();
        let mut rays = Vec::new();
        for (&(i, j), f) in &self.edges {
            match f.second {
                Some(s) => arcs.push((f.first.min(s), f.first.max(s), (p[i], p[j]))),
                None => rays.push((f.first, (p[i], p[j]))),
            }
        }
        DualGraph { nodes, arcs, rays }
    }

    /// Interior segments with both endpoints on the boundary.
    pub fn split_edges(&self) -> Vec<SplitEdge> {
        let p = self.points();
        self.interior_edges()
            .filter(|&((i, j), _, _)| {
                self.polygon.is_boundary_point(p[i]) && self.polygon.is_boundary_point(p[j])
            })
            .map(|((i, j), _, _)| self.split_edge_of(p[i], p[j]))
            .collect()
    }

    /// Side counts for a boundary-to-boundary segment, whether or not it is
    /// used by the triangulation.
    pub fn split_edge_of(&self, a: LatticePoint, b: LatticePoint) -> SplitEdge {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let mut left = 0;
        let mut right = 0;
        for &z in self.polygon.interior_lattice_points() {
            match orient(a, b, z).signum() {
                1 => left += 1,
                -1 => right += 1,
                _ => {}
            }
        }
        SplitEdge { segment: (a, b), left_genus: left, right_genus: right }
    }

    /// The triangulations induced on the closed left and right sides of `s`.
    pub fn decompose_along(&self, s: &SplitEdge) -> Result<(Self, Self), TriangulationError> {
        let (a, b) = s.segment;
        let (Some(i), Some(j)) = (self.point_index(a), self.point_index(b)) else {
            return Err(TriangulationError::NotASplitEdge);
        };
        let interior = self.edge_faces(i, j).is_some_and(|f| f.second.is_some());
        if !interior || !self.polygon.is_boundary_point(a) || !self.polygon.is_boundary_point(b) {
            return Err(TriangulationError::NotASplitEdge);
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let side = |sign: i64| -> Result<Self, TriangulationError> {
            let pts: Vec<_> =
                self.points().iter().copied().filter(|&x| orient(a, b, x) * sign >= 0).collect();
            let poly = convex_hull(&pts).map_err(|_| TriangulationError::NotASplitEdge)?;
            let tris: Vec<_> = self
                .triangles()
                .into_iter()
                .filter(|t| t.vertices().iter().all(|&v| orient(a, b, v) * sign >= 0))
                .collect();
            Self::validate(poly, &tris)
        };
        Ok((side(1)?, side(-1)?))
    }
}

fn sides(t: &Triangle) -> [(LatticePoint, LatticePoint); 3] {
    [(t.a, t.b), (t.b, t.c), (t.a, t.c)]
}

fn third(t: &[usize; 3], i: usize, j: usize) -> usize {
    *t.iter().find(|&&v| v != i && v != j).expect("segment belongs to triangle")
}
