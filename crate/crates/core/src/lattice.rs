//! Exact integer lattice geometry.
//!
//! Everything in this module works over `i64` coordinates; orientation tests
//! are exact determinants, so there is no tolerance anywhere. A
//! [`LatticePolygon`] caches its lattice points because every downstream
//! stage (triangulation, regularity, skeleton) indexes into them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate input: need at least three non-collinear points")]
    DegenerateInput,
    #[error("vertices are not in strictly convex counterclockwise position")]
    NotConvex,
}

/// A point of the integer lattice `Z^2`. Ordered lexicographically by `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Shorthand used heavily in tests and fixtures.
pub const fn pt(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

/// `det(u, v)` for two lattice vectors.
pub fn det(u: LatticePoint, v: LatticePoint) -> i64 {
    u.x * v.y - u.y * v.x
}

/// Twice the signed area of `(a, b, c)`; positive when counterclockwise.
pub fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    det(b.sub(a), c.sub(a))
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Number of lattice points on the closed segment `[a, b]`, minus one.
pub fn lattice_length(a: LatticePoint, b: LatticePoint) -> i64 {
    let d = b.sub(a);
    gcd(d.x.abs(), d.y.abs())
}

/// True when `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True when the open segments `(a, b)` and `(c, d)` cross in a single point
/// interior to both.
pub fn segments_cross(a: LatticePoint, b: LatticePoint, c: LatticePoint, d: LatticePoint) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// A convex lattice polygon, vertices counterclockwise in strictly convex
/// position, with its lattice points precomputed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
    points: Vec<LatticePoint>,
    interior: Vec<LatticePoint>,
    boundary: Vec<LatticePoint>,
}

impl LatticePolygon {
    /// Builds a polygon from its vertex cycle. The cycle may start anywhere but
    /// must be counterclockwise with no three consecutive vertices collinear.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::DegenerateInput);
        }
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if orient(a, b, c) <= 0 {
                return Err(GeometryError::NotConvex);
            }
        }
        // Local convexity everywhere plus a total turn of 2*pi: reject
        // star-shaped self-overlapping cycles by checking that every vertex sees
        // every edge from the left.
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            if vertices.iter().any(|&v| orient(a, b, v) < 0) {
                return Err(GeometryError::NotConvex);
            }
        }
        Ok(Self::from_checked(vertices))
    }

    fn from_checked(vertices: Vec<LatticePoint>) -> Self {
        let (xmin, xmax) = bounds(vertices.iter().map(|p| p.x));
        let (ymin, ymax) = bounds(vertices.iter().map(|p| p.y));
        let n = vertices.len();
        let mut points = Vec::new();
        let mut interior = Vec::new();
        let mut boundary = Vec::new();
        for x in xmin..=xmax {
            for y in ymin..=ymax {
                let p = pt(x, y);
                let mut strict = true;
                let mut inside = true;
                for i in 0..n {
                    let o = orient(vertices[i], vertices[(i + 1) % n], p);
                    if o < 0 {
                        inside = false;
                        break;
                    }
                    if o == 0 {
                        strict = false;
                    }
                }
                if inside {
                    points.push(p);
                    if strict {
                        interior.push(p);
                    } else {
                        boundary.push(p);
                    }
                }
            }
        }
        Self { vertices, points, interior, boundary }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Lattice points strictly inside, sorted.
    pub fn interior_lattice_points(&self) -> &[LatticePoint] {
        &self.interior
    }

    /// Lattice points on the boundary (including vertices), sorted.
    pub fn boundary_lattice_points(&self) -> &[LatticePoint] {
        &self.boundary
    }

    pub fn genus(&self) -> usize {
        self.interior.len()
    }

    /// Twice the Euclidean area (shoelace).
    pub fn doubled_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n).map(|i| det(self.vertices[i], self.vertices[(i + 1) % n])).sum()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| orient(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
    }

    pub fn is_vertex(&self, p: LatticePoint) -> bool {
        self.vertices.contains(&p)
    }

    pub fn is_boundary_point(&self, p: LatticePoint) -> bool {
        self.boundary.binary_search(&p).is_ok()
    }

    pub fn is_interior_point(&self, p: LatticePoint) -> bool {
        self.interior.binary_search(&p).is_ok()
    }

    /// Edges of the polygon as vertex pairs, counterclockwise.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// True when `a` and `b` lie on a common edge of the polygon.
    pub fn on_common_edge(&self, a: LatticePoint, b: LatticePoint) -> bool {
        self.edges().any(|(u, v)| on_segment(u, v, a) && on_segment(u, v, b))
    }

    /// All interior lattice points are collinear. Vacuous for genus <= 1.
    pub fn is_hyperelliptic(&self) -> bool {
        collinear(&self.interior)
    }

    /// Convex hull of the interior lattice points.
    pub fn interior_hull(&self) -> InteriorHull {
        InteriorHull::of(&self.interior)
    }

    /// Image under the map `p -> U p + t`.
    pub fn transform(&self, map: &UnimodularMap) -> Self {
        let mut vs: Vec<_> = self.vertices.iter().map(|&p| map.apply(p)).collect();
        if map.determinant() < 0 {
            vs.reverse();
        }
        Self::from_checked(vs)
    }

    pub fn translate(&self, t: LatticePoint) -> Self {
        self.transform(&UnimodularMap::translation(t))
    }

    /// Canonical representative of the orbit under affine unimodular maps.
    ///
    /// For each vertex and each traversal direction, the unique unimodular
    /// map sending the outgoing primitive edge direction to `(1, 0)` and the
    /// next edge direction to `(a, b)` with `0 <= a < b` is applied; the vertex
    /// list is then translated into the non-negative quadrant. The
    /// lexicographically least vertex list over all `2n` choices is the normal
    /// form, and it starts at the corresponding vertex.
    pub fn normal_form(&self) -> Self {
        let n = self.vertices.len();
        let mut best: Option<Vec<LatticePoint>> = None;
        for start in 0..n {
            for dir in [1usize, n - 1] {
                let seq: Vec<LatticePoint> =
                    (0..n).map(|k| self.vertices[(start + dir * k) % n]).collect();
                let cand = hermite_frame(&seq);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        Self::from_checked(best.expect("polygon has vertices"))
    }

    /// Compact serialization `x,y;x,y;...` of the vertex cycle.
    pub fn serialize(&self) -> String {
        self.vertices.iter().map(|p| format!("{},{}", p.x, p.y)).collect::<Vec<_>>().join(";")
    }
}

fn bounds(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Applies the Hermite frame of the first two edges of `seq` and translates
/// into the non-negative quadrant. Orientation of `seq` may be either way;
/// the output is re-oriented counterclockwise while keeping the first vertex.
fn hermite_frame(seq: &[LatticePoint]) -> Vec<LatticePoint> {
    let v0 = seq[0];
    let d1 = seq[1].sub(v0);
    let g = gcd(d1.x.abs(), d1.y.abs());
    let (px, py) = (d1.x / g, d1.y / g);
    // Bezout: s*px + t*py = 1, so [[s, t], [-py, px]] maps (px, py) to (1, 0).
    let (s, t) = bezout(px, py);
    let mut m = [[s, t], [-py, px]];
    let d2 = seq[2].sub(seq[1]);
    let mut img = apply_matrix(&m, d2);
    if img.y < 0 {
        // reflect y -> -y
        m[1] = [-m[1][0], -m[1][1]];
        img.y = -img.y;
    }
    // Shear x -> x - k*y to bring 0 <= a < b.
    let b = img.y;
    let k = img.x.div_euclid(b);
    m[0] = [m[0][0] - k * m[1][0], m[0][1] - k * m[1][1]];
    let mut out: Vec<LatticePoint> = seq.iter().map(|&p| apply_matrix(&m, p.sub(v0))).collect();
    let (xmin, _) = bounds(out.iter().map(|p| p.x));
    let (ymin, _) = bounds(out.iter().map(|p| p.y));
    for p in &mut out {
        *p = pt(p.x - xmin, p.y - ymin);
    }
    // After the frame the second edge turns left, so the sequence is already
    // counterclockwise.
    out
}

fn apply_matrix(m: &[[i64; 2]; 2], p: LatticePoint) -> LatticePoint {
    pt(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
}

fn bezout(a: i64, b: i64) -> (i64, i64) {
    // extended Euclid; a, b coprime
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_s, -old_t)
    } else {
        (old_s, old_t)
    }
}

fn collinear(points: &[LatticePoint]) -> bool {
    if points.len() <= 2 {
        return true;
    }
    let a = points[0];
    let Some(&b) = points.iter().find(|&&p| p != a) else {
        return true;
    };
    points.iter().all(|&p| orient(a, b, p) == 0)
}

/// Minimal convex polygon containing `points`.
///
/// Collinear boundary points are dropped from the vertex list; they still
/// show up among the polygon's boundary lattice points.
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolygon, GeometryError> {
    let hull = hull_vertices(points);
    if hull.len() < 3 {
        return Err(GeometryError::DegenerateInput);
    }
    Ok(LatticePolygon::from_checked(hull))
}

/// `(interior, boundary)` lattice point counts of the convex hull of
/// `points`, by Pick's theorem; `None` if the hull is not two-dimensional.
pub fn hull_point_counts(points: &[LatticePoint]) -> Option<(usize, usize)> {
    let h = hull_vertices(points);
    if h.len() < 3 {
        return None;
    }
    let n = h.len();
    let twice_area: i64 = (0..n).map(|i| det(h[i], h[(i + 1) % n])).sum();
    let boundary: i64 = (0..n).map(|i| lattice_length(h[i], h[(i + 1) % n])).sum();
    // 2A = 2i + b - 2
    Some((((twice_area - boundary + 2) / 2) as usize, boundary as usize))
}

fn hull_vertices(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Convex hull of a finite point set with the degenerate cases spelled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InteriorHull {
    Empty,
    Point(LatticePoint),
    Segment(LatticePoint, LatticePoint),
    Polygon(LatticePolygon),
}

impl InteriorHull {
    pub fn of(points: &[LatticePoint]) -> Self {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        match pts.len() {
            0 => Self::Empty,
            1 => Self::Point(pts[0]),
            _ if collinear(&pts) => Self::Segment(pts[0], *pts.last().unwrap()),
            _ => Self::Polygon(LatticePolygon::from_checked(hull_vertices(&pts))),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !matches!(self, Self::Polygon(_))
    }

    /// A lattice parallelogram of area one: vertices `a, b, c, d` with
    /// `b - a = c - d`, `|det(b - a, d - a)| = 1`, and no lattice points
    /// besides its four vertices.
    pub fn is_unit_parallelogram(&self) -> bool {
        let Self::Polygon(p) = self else {
            return false;
        };
        let v = p.vertices();
        if v.len() != 4 {
            return false;
        }
        let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
        b.sub(a) == c.sub(d) && det(b.sub(a), d.sub(a)).abs() == 1 && p.lattice_points().len() == 4
    }
}

/// The affine unimodular map `p -> M p + t` with `det M = +-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnimodularMap {
    pub matrix: [[i64; 2]; 2],
    pub shift: LatticePoint,
}

impl UnimodularMap {
    pub fn new(matrix: [[i64; 2]; 2], shift: LatticePoint) -> Option<Self> {
        let m = Self { matrix, shift };
        (m.determinant().abs() == 1).then_some(m)
    }

    pub fn translation(t: LatticePoint) -> Self {
        Self { matrix: [[1, 0], [0, 1]], shift: t }
    }

    pub fn determinant(&self) -> i64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        apply_matrix(&self.matrix, p).add(self.shift)
    }

    /// A random map built from a few elementary shears, swaps and sign flips.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, steps: usize) -> Self {
        let mut m = [[1i64, 0], [0, 1]];
        for _ in 0..steps {
            let e: [[i64; 2]; 2] = match rng.gen_range(0..4) {
                0 => [[1, rng.gen_range(-2..=2)], [0, 1]],
                1 => [[1, 0], [rng.gen_range(-2..=2), 1]],
                2 => [[0, 1], [1, 0]],
                _ => [[-1, 0], [0, 1]],
            };
            m = [
                [e[0][0] * m[0][0] + e[0][1] * m[1][0], e[0][0] * m[0][1] + e[0][1] * m[1][1]],
                [e[1][0] * m[0][0] + e[1][1] * m[1][0], e[1][0] * m[0][1] + e[1][1] * m[1][1]],
            ];
        }
        let shift = pt(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
        Self { matrix: m, shift }
    }
}

impl PartialOrd for LatticePolygon {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatticePolygon {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn unit() -> LatticePolygon {
        LatticePolygon::new(vec![pt(0, 0), pt(1, 0), pt(0, 1)]).unwrap()
    }

    fn fig1() -> LatticePolygon {
        convex_hull(&[
            pt(0, 0), pt(-1, -1), pt(-1, -2), pt(-2, -1), pt(-2, -2), pt(-3, -2),
            pt(-3, -3), pt(-4, -3), pt(-6, -4), pt(-6, -3), pt(-5, -3), pt(-3, -4),
        ])
        .unwrap()
    }

    #[test]
    fn hull_examples() {
        assert_eq!(unit().vertices(), &[pt(0, 0), pt(1, 0), pt(0, 1)]);
        let t = convex_hull(&[pt(0, 0), pt(2, 0), pt(1, 0), pt(0, 2)]).unwrap();
        assert_eq!(t.vertices(), &[pt(0, 0), pt(2, 0), pt(0, 2)]);
        assert!(t.is_boundary_point(pt(1, 0)));
        let mut v = fig1().vertices().to_vec();
        v.sort();
        let mut want = vec![pt(0, 0), pt(-1, -2), pt(-3, -4), pt(-6, -4), pt(-6, -3)];
        want.sort();
        assert_eq!(v, want);
    }

    #[test]
    fn hull_rejects_degenerate() {
        assert_eq!(convex_hull(&[pt(0, 0), pt(1, 1), pt(2, 2)]), Err(GeometryError::DegenerateInput));
        assert_eq!(convex_hull(&[pt(0, 0), pt(1, 1)]), Err(GeometryError::DegenerateInput));
        assert_eq!(
            LatticePolygon::new(vec![pt(0, 0), pt(0, 1), pt(1, 0)]),
            Err(GeometryError::NotConvex)
        );
    }

    #[test]
    fn interior_points_and_genus() {
        assert!(unit().interior_lattice_points().is_empty());
        let mut want = vec![pt(-1, -1), pt(-2, -2), pt(-3, -2), pt(-3, -3), pt(-4, -3), pt(-5, -3)];
        want.sort();
        assert_eq!(fig1().interior_lattice_points(), want.as_slice());
        let q = LatticePolygon::new(vec![pt(-2, -3), pt(0, -3), pt(2, 3), pt(-2, -1)]).unwrap();
        let mut want = vec![pt(1, 1), pt(0, 0), pt(0, -1), pt(0, -2), pt(-1, -1), pt(-1, -2)];
        want.sort();
        assert_eq!(q.interior_lattice_points(), want.as_slice());
        let t4 = LatticePolygon::new(vec![pt(0, 0), pt(4, 0), pt(0, 4)]).unwrap();
        assert_eq!(t4.genus(), 3);
        assert_eq!(fig1().genus(), 6);
    }

    #[test]
    fn hyperelliptic_and_interior_hull() {
        let rect = LatticePolygon::new(vec![pt(0, 0), pt(3, 0), pt(3, 2), pt(0, 2)]).unwrap();
        assert!(rect.is_hyperelliptic());
        assert_eq!(rect.interior_hull(), InteriorHull::Segment(pt(1, 1), pt(2, 1)));
        let t4 = LatticePolygon::new(vec![pt(0, 0), pt(4, 0), pt(0, 4)]).unwrap();
        assert!(!t4.is_hyperelliptic());
        match t4.interior_hull() {
            InteriorHull::Polygon(p) => assert_eq!(p.vertices(), &[pt(1, 1), pt(2, 1), pt(1, 2)]),
            other => panic!("{other:?}"),
        }
        assert!(unit().is_hyperelliptic());
        assert_eq!(unit().interior_hull(), InteriorHull::Empty);
    }

    #[test]
    fn unit_parallelogram() {
        let sheared = InteriorHull::of(&[pt(0, 0), pt(1, 0), pt(2, 1), pt(1, 1)]);
        assert!(sheared.is_unit_parallelogram());
        let heavy = InteriorHull::of(&[pt(-2, -2), pt(-3, -2), pt(-4, -3), pt(-3, -3)]);
        assert!(heavy.is_unit_parallelogram());
        assert!(!InteriorHull::Segment(pt(0, 0), pt(1, 0)).is_unit_parallelogram());
        assert!(!InteriorHull::of(&[pt(0, 0), pt(1, 0), pt(0, 1)]).is_unit_parallelogram());
        assert!(!InteriorHull::of(&[pt(0, 0), pt(2, 0), pt(2, 1), pt(0, 1)]).is_unit_parallelogram());
    }

    #[test]
    fn normal_form_examples() {
        let nf = unit().normal_form();
        assert_eq!(nf.normal_form(), nf);
        assert_eq!(nf.vertices(), &[pt(0, 0), pt(1, 0), pt(1, 1)]);
        let p = fig1();
        assert_eq!(p.translate(pt(7, 5)).normal_form(), p.normal_form());
    }

    #[test]
    fn normal_form_orbit_invariance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let polys = [
            fig1(),
            LatticePolygon::new(vec![pt(-2, -3), pt(0, -3), pt(2, 3), pt(-2, -1)]).unwrap(),
            LatticePolygon::new(vec![pt(0, 0), pt(3, 0), pt(3, 2), pt(0, 2)]).unwrap(),
            unit(),
        ];
        for p in &polys {
            let nf = p.normal_form();
            for _ in 0..150 {
                let m = UnimodularMap::random(&mut rng, 6);
                let q = p.transform(&m);
                assert_eq!(q.genus(), p.genus());
                assert_eq!(q.normal_form(), nf);
            }
        }
    }

    #[test]
    fn pick_holds() {
        for p in [fig1(), unit()] {
            let b = p.boundary_lattice_points().len() as i64;
            let i = p.genus() as i64;
            assert_eq!(p.doubled_area(), 2 * i + b - 2);
        }
    }
}
