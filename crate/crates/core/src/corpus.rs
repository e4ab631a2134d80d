//! Lattice polygons up to unimodular equivalence.
//!
//! Every two-dimensional lattice polygon with `k + 1` lattice points arises
//! from one with `k` points by adding a single lattice point `p` such that
//! the hull gains no other lattice point: drop a vertex whose removal keeps
//! the rest two-dimensional. Polygons are grown this way from the unit
//! triangle and deduplicated by normal form.
//!
//! A polygon of genus `g >= 2` has at most `2g + 6` boundary points, and a
//! genus-one polygon at most nine. The bundled corpus is therefore
//! exhaustive at genus one to three; at genus four it holds every polygon
//! with at most twelve lattice points (see [`CORPUS_POINT_BOUNDS`]). At genus five and six it holds every
//! polygon with at most ten lattice points, the two fixture polygons, and for
//! each skeleton realized by a regular triangulation of a polygon with at
//! most fourteen lattice points the first polygon realizing it.

use std::collections::BTreeMap;
use std::path::Path;

use crate::io::{parse_polygons, write_polygon, FormatError};
use crate::lattice::{convex_hull, hull_point_counts, pt, LatticePoint, LatticePolygon};

/// Lattice-point bound of the generated part of the corpus, by genus.
pub const CORPUS_POINT_BOUNDS: [(usize, usize); 4] = [(1, 12), (2, 12), (3, 15), (4, 12)];

/// Largest lattice-point count of a polygon of genus `g >= 1`.
pub fn max_lattice_points(g: usize) -> usize {
    if g == 1 {
        10
    } else {
        3 * g + 6
    }
}

/// Corpus file names by genus.
pub const CORPUS_FILES: [(usize, &str); 6] = [
    (1, "genus1.poly"),
    (2, "genus2.poly"),
    (3, "genus3.poly"),
    (4, "genus4.poly"),
    (5, "genus5.poly"),
    (6, "genus6.poly"),
];

const BUNDLED: [(usize, &str); 6] = [
    (1, include_str!("../../../corpus/genus1.poly")),
    (2, include_str!("../../../corpus/genus2.poly")),
    (3, include_str!("../../../corpus/genus3.poly")),
    (4, include_str!("../../../corpus/genus4.poly")),
    (5, include_str!("../../../corpus/genus5.poly")),
    (6, include_str!("../../../corpus/genus6.poly")),
];

/// Growth candidates lie within this many units of the bounding box. The
/// hull has area below `max_points`, and it contains a unimodular triangle
/// of the old polygon together with `p`, which bounds the distance.
fn margin(max_points: usize) -> i64 {
    2 * max_points as i64
}

/// All polygons with at most `max_points` lattice points, in normal form,
/// sorted by genus, point count and serialization.
pub fn generate_polygons(max_points: usize) -> Vec<LatticePolygon> {
    generate_with_margin(max_points, margin(max_points))
}

fn generate_with_margin(max_points: usize, m: i64) -> Vec<LatticePolygon> {
    let mut level: BTreeMap<String, LatticePolygon> = BTreeMap::new();
    let unit = convex_hull(&[pt(0, 0), pt(1, 0), pt(0, 1)]).expect("unit triangle").normal_form();
    let mut all = Vec::new();
    if max_points >= 3 {
        level.insert(unit.serialize(), unit);
    }
    for k in 3..max_points {
        let mut next = BTreeMap::new();
        for p in level.values() {
            let pts = p.lattice_points();
            let (x0, x1) = (pts.iter().map(|q| q.x).min().unwrap(), pts.iter().map(|q| q.x).max().unwrap());
            let (y0, y1) = (pts.iter().map(|q| q.y).min().unwrap(), pts.iter().map(|q| q.y).max().unwrap());
            let mut cand: Vec<LatticePoint> = pts.to_vec();
            cand.push(pt(0, 0));
            for x in x0 - m..=x1 + m {
                for y in y0 - m..=y1 + m {
                    let q = pt(x, y);
                    if p.contains(q) {
                        continue;
                    }
                    *cand.last_mut().unwrap() = q;
                    match hull_point_counts(&cand) {
                        Some((i, b)) if i + b == k + 1 => {
                            let nf = convex_hull(&cand).expect("two-dimensional").normal_form();
                            next.entry(nf.serialize()).or_insert(nf);
                        }
                        _ => {}
                    }
                }
            }
        }
        all.extend(std::mem::replace(&mut level, next).into_values());
    }
    all.extend(level.into_values());
    sort_corpus(&mut all);
    all
}

fn sort_corpus(v: &mut [LatticePolygon]) {
    v.sort_by_cached_key(|p| (p.genus(), p.lattice_points().len(), p.serialize()));
}

/// Multi-stanza text for a list of polygons.
pub fn write_corpus(polys: &[LatticePolygon]) -> String {
    polys.iter().map(write_polygon).collect::<Vec<_>>().join("\n")
}

/// The bundled polygons of the given genus.
pub fn bundled(genus: usize) -> Vec<LatticePolygon> {
    BUNDLED
        .iter()
        .filter(|(g, _)| *g == genus)
        .flat_map(|(_, text)| parse_polygons(text).expect("bundled corpus parses"))
        .collect()
}

/// Polygons of the given genus from a corpus directory laid out like the
/// bundled one.
pub fn load_dir(dir: &Path, genus: usize) -> Result<Vec<LatticePolygon>, CorpusError> {
    let Some((_, name)) = CORPUS_FILES.iter().find(|(g, _)| *g == genus) else {
        return Ok(Vec::new());
    };
    let path = dir.join(name);
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(&path).map_err(|e| CorpusError::Io(path.display().to_string(), e.to_string()))?;
    parse_polygons(&text).map_err(|e| CorpusError::Format(path.display().to_string(), e))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("{0}: {1}")]
    Format(String, FormatError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        // Triangle, then unit square and the 2-triangle.
        let v = generate_polygons(4);
        assert_eq!(v.iter().filter(|p| p.lattice_points().len() == 3).count(), 1);
        assert_eq!(v.iter().filter(|p| p.lattice_points().len() == 4).count(), 3);
        assert!(v.iter().all(|p| p.normal_form() == *p));
    }

    #[test]
    fn margin_is_sufficient() {
        assert_eq!(generate_with_margin(9, margin(9)), generate_with_margin(9, 3 * 9));
    }

    #[test]
    fn genus_one_reflexive_polygons_present() {
        // The sixteen reflexive polygons are exactly the genus-one ones
        // with at most ten lattice points.
        let v: Vec<_> = generate_polygons(10).into_iter().filter(|p| p.genus() == 1).collect();
        assert_eq!(v.len(), 16);
    }

    #[test]
    fn boundary_bound_is_attained() {
        let gen = generate_polygons(13);
        for g in 1..=2 {
            let most = gen.iter().filter(|p| p.genus() == g).map(|p| p.lattice_points().len()).max();
            assert_eq!(most, Some(max_lattice_points(g)));
        }
    }

    #[test]
    fn bundled_corpus_matches_generator() {
        let gen = generate_polygons(15);
        for (g, bound) in CORPUS_POINT_BOUNDS {
            let want: Vec<_> = gen.iter().filter(|p| p.genus() == g && p.lattice_points().len() <= bound).cloned().collect();
            assert_eq!(bundled(g), want, "genus {g}");
        }
        for g in 5..=6 {
            assert!(!bundled(g).is_empty());
            assert!(bundled(g).iter().all(|p| p.genus() == g));
        }
    }
}
