use std::collections::{HashSet, VecDeque};

use super::{Triangulation, TriangulationError};
use crate::lattice::{orient, segments_cross, LatticePoint, LatticePolygon};

pub const DEFAULT_POINT_LIMIT: usize = 16;

/// Edge bitsets identify triangulations during traversal; 4 words cover
/// `23 * 22 / 2 = 253` point pairs.
const MAX_FLIP_POINTS: usize = 23;

type EdgeKey = [u64; 4];

fn check_limit(p: &LatticePolygon, limit: usize) -> Result<(), TriangulationError> {
    let n = p.lattice_points().len();
    if n > limit || n > MAX_FLIP_POINTS {
        return Err(TriangulationError::LimitExceeded { points: n, limit: limit.min(MAX_FLIP_POINTS) });
    }
    Ok(())
}

/// Placing triangulation: adds lattice points in lexicographic order, coning
/// each one over the visible boundary segments of the current hull.
///
/// Every lexicographic prefix of the lattice points of a convex polygon is
/// the lattice point set of its own hull, so each coned triangle has only
/// its three vertices as lattice points and is unimodular.
pub fn placing_triangulation(p: &LatticePolygon) -> Triangulation {
    let pts = p.lattice_points();
    let mut tris: Vec<[usize; 3]> = Vec::new();
    let mut k = 2;
    while orient(pts[0], pts[1], pts[k]) == 0 {
        k += 1;
    }
    // pts[0..k] are collinear in order along a line.
    for i in 0..k - 1 {
        tris.push([i, i + 1, k]);
    }
    let mut used: Vec<usize> = (0..=k).collect();
    for q in k + 1..pts.len() {
        let hull = boundary_cycle(pts, &used);
        let m = hull.len();
        for e in 0..m {
            let (a, b) = (hull[e], hull[(e + 1) % m]);
            if orient(pts[a], pts[b], pts[q]) < 0 {
                tris.push([a, b, q]);
            }
        }
        used.push(q);
    }
    Triangulation::from_indices(p.clone(), tris)
}

/// Counterclockwise cycle through every point of `idx` on the hull boundary,
/// collinear ones included.
fn boundary_cycle(pts: &[LatticePoint], idx: &[usize]) -> Vec<usize> {
    let mut s = idx.to_vec();
    s.sort();
    let mut lower: Vec<usize> = Vec::new();
    for &i in &s {
        while lower.len() >= 2 && orient(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[i]) < 0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in s.iter().rev() {
        while upper.len() >= 2 && orient(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[i]) < 0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Compact flip state: sorted index triples.
#[derive(Clone)]
struct State(Vec<[u8; 3]>);

impl State {
    fn of(t: &Triangulation) -> Self {
        Self(t.index_triangles().iter().map(|&[a, b, c]| [a as u8, b as u8, c as u8]).collect())
    }

    fn key(&self) -> EdgeKey {
        let mut k = [0u64; 4];
        for &[a, b, c] in &self.0 {
            for (i, j) in [(a, b), (b, c), (a, c)] {
                let bit = pair_index(i as usize, j as usize);
                k[bit / 64] |= 1 << (bit % 64);
            }
        }
        k
    }

    /// All states one strictly convex flip away.
    fn neighbors(&self, pts: &[LatticePoint], out: &mut Vec<State>) {
        let n = pts.len();
        // opp[i * n + j] = opposite vertices of segment i < j.
        let mut opp = vec![[u8::MAX; 2]; n * n];
        for &[a, b, c] in &self.0 {
            for (i, j, o) in [(a, b, c), (b, c, a), (a, c, b)] {
                let slot = &mut opp[i as usize * n + j as usize];
                if slot[0] == u8::MAX {
                    slot[0] = o;
                } else {
                    slot[1] = o;
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let [k, l] = opp[i * n + j];
                if l == u8::MAX {
                    continue;
                }
                if !segments_cross(pts[i], pts[j], pts[k as usize], pts[l as usize]) {
                    continue;
                }
                let (i8, j8) = (i as u8, j as u8);
                let mut tris: Vec<[u8; 3]> = self
                    .0
                    .iter()
                    .copied()
                    .filter(|t| !(t.contains(&i8) && t.contains(&j8)))
                    .collect();
                let mut t1 = [k, l, i8];
                let mut t2 = [k, l, j8];
                t1.sort();
                t2.sort();
                tris.push(t1);
                tris.push(t2);
                tris.sort();
                out.push(State(tris));
            }
        }
    }

    fn into_triangulation(self, p: &LatticePolygon) -> Triangulation {
        Triangulation::from_indices(
            p.clone(),
            self.0.into_iter().map(|[a, b, c]| [a as usize, b as usize, c as usize]).collect(),
        )
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

/// Breadth-first traversal of the flip graph, yielding each full
/// triangulation once. Lazy: consumers can stop early.
pub struct FlipStream {
    polygon: LatticePolygon,
    seen: HashSet<EdgeKey>,
    queue: VecDeque<State>,
    scratch: Vec<State>,
}

impl FlipStream {
    fn new(polygon: LatticePolygon) -> Self {
        let seed = State::of(&placing_triangulation(&polygon));
        let mut seen = HashSet::new();
        seen.insert(seed.key());
        Self { polygon, seen, queue: VecDeque::from([seed]), scratch: Vec::new() }
    }

    fn next_state(&mut self) -> Option<State> {
        let s = self.queue.pop_front()?;
        let mut scratch = std::mem::take(&mut self.scratch);
        s.neighbors(self.polygon.lattice_points(), &mut scratch);
        for t in scratch.drain(..) {
            if self.seen.insert(t.key()) {
                self.queue.push_back(t);
            }
        }
        self.scratch = scratch;
        Some(s)
    }
}

impl Iterator for FlipStream {
    type Item = Triangulation;

    fn next(&mut self) -> Option<Triangulation> {
        let s = self.next_state()?;
        Some(s.into_triangulation(&self.polygon))
    }
}

/// Every full triangulation of `p`, by flip-graph traversal from the placing
/// triangulation.
pub fn enumerate_triangulations(p: &LatticePolygon, limit: usize) -> Result<FlipStream, TriangulationError> {
    check_limit(p, limit)?;
    Ok(FlipStream::new(p.clone()))
}

/// Number of full triangulations, by flip-graph traversal.
pub fn count_triangulations(p: &LatticePolygon, limit: usize) -> Result<usize, TriangulationError> {
    let mut s = enumerate_triangulations(p, limit)?;
    let mut n = 0;
    while s.next_state().is_some() {
        n += 1;
    }
    Ok(n)
}

/// Every full triangulation of `p` by exhaustive backtracking.
///
/// The search keeps a front of directed segments that still need a triangle
/// on their left, always extends the least one, and tries every lattice
/// point forming a unimodular triangle with it. Each triangulation has a
/// unique triangle on the left of each front segment, so it is produced
/// exactly once.
pub fn enumerate_triangulations_backtracking(
    p: &LatticePolygon,
    limit: usize,
) -> Result<Vec<Triangulation>, TriangulationError> {
    let n = p.lattice_points().len();
    if n > limit {
        return Err(TriangulationError::LimitExceeded { points: n, limit });
    }
    let pts = p.lattice_points();
    let boundary = boundary_cycle(pts, &(0..n).collect::<Vec<_>>());
    let mut s = Search {
        pts,
        covered: vec![false; n * n],
        open: Vec::new(),
        segs: Vec::new(),
        tris: Vec::new(),
        out: Vec::new(),
        polygon: p,
    };
    let m = boundary.len();
    for e in 0..m {
        let (a, b) = (boundary[e], boundary[(e + 1) % m]);
        s.covered[b * n + a] = true;
        s.open.push((a, b));
        s.segs.push((a, b));
    }
    s.run();
    Ok(s.out)
}

struct Search<'a> {
    pts: &'a [LatticePoint],
    /// covered[u * n + v]: the left side of `u -> v` already has a triangle.
    covered: Vec<bool>,
    open: Vec<(usize, usize)>,
    segs: Vec<(usize, usize)>,
    tris: Vec<[usize; 3]>,
    out: Vec<Triangulation>,
    polygon: &'a LatticePolygon,
}

impl Search<'_> {
    fn run(&mut self) {
        let n = self.pts.len();
        let Some(pos) = (0..self.open.len()).min_by_key(|&i| self.open[i]) else {
            self.out.push(Triangulation::from_indices(self.polygon.clone(), self.tris.clone()));
            return;
        };
        let (u, v) = self.open.swap_remove(pos);
        for c in 0..n {
            if orient(self.pts[u], self.pts[v], self.pts[c]) != 1 {
                continue;
            }
            if self.covered[v * n + c] || self.covered[c * n + u] {
                continue;
            }
            let new_segs = [(v, c), (c, u)];
            let fresh: Vec<(usize, usize)> = new_segs
                .iter()
                .copied()
                .filter(|&(a, b)| !self.segs.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)))
                .collect();
            let crosses = fresh.iter().any(|&(a, b)| {
                self.segs.iter().any(|&(x, y)| {
                    segments_cross(self.pts[a], self.pts[b], self.pts[x], self.pts[y])
                })
            });
            if crosses {
                continue;
            }
            let open_len = self.open.len();
            let saved_open = self.open.clone();
            for (a, b) in [(u, v), (v, c), (c, u)] {
                self.covered[a * n + b] = true;
            }
            self.open.retain(|&(a, b)| !self.covered[a * n + b]);
            for (a, b) in new_segs {
                if !self.covered[b * n + a] {
                    self.open.push((b, a));
                }
            }
            let segs_len = self.segs.len();
            self.segs.extend(fresh);
            self.tris.push([u, v, c]);
            self.run();
            self.tris.pop();
            self.segs.truncate(segs_len);
            for (a, b) in [(u, v), (v, c), (c, u)] {
                self.covered[a * n + b] = false;
            }
            self.open = saved_open;
            debug_assert_eq!(self.open.len(), open_len);
        }
        self.open.push((u, v));
        let last = self.open.len() - 1;
        self.open.swap(pos.min(last), last);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    fn poly(v: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    #[test]
    fn unit_square_has_two() {
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(count_triangulations(&sq, 16).unwrap(), 2);
        assert_eq!(enumerate_triangulations_backtracking(&sq, 16).unwrap().len(), 2);
    }

    #[test]
    fn flip_and_backtracking_agree() {
        for v in [
            vec![(0, 0), (2, 0), (0, 2)],
            vec![(0, 0), (3, 0), (0, 3)],
            vec![(0, 0), (2, 0), (2, 1), (0, 1)],
            vec![(0, 0), (2, 0), (2, 2), (0, 2)],
            vec![(0, 0), (3, 0), (0, 1)],
        ] {
            let p = poly(&v);
            let mut a: Vec<String> =
                enumerate_triangulations(&p, 16).unwrap().map(|t| t.canonical_serialization()).collect();
            let mut b: Vec<String> = enumerate_triangulations_backtracking(&p, 16)
                .unwrap()
                .iter()
                .map(|t| t.canonical_serialization())
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{v:?}");
        }
    }

    #[test]
    fn placing_seed_is_valid() {
        let p = poly(&[(0, 0), (-6, -3), (-6, -4), (-3, -4), (-1, -2)]);
        let t = placing_triangulation(&p);
        assert_eq!(t.len() as i64, p.doubled_area());
        assert!(Triangulation::validate(p, &t.triangles()).is_ok());
    }

    #[test]
    fn limit_is_enforced() {
        let p = poly(&[(0, 0), (4, 0), (0, 4)]);
        assert!(matches!(
            enumerate_triangulations(&p, 10),
            Err(TriangulationError::LimitExceeded { points: 15, .. })
        ));
    }
}
