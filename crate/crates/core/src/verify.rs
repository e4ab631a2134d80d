//! The acceptance suite: nine checks on the fixtures, the corpus and the
//! classifier, each reported as one pass or fail line.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{Classifier, Verdict};
use crate::corpus;
use crate::fixtures;
use crate::graph::{enumerate_trivalent_graphs, Graph};
use crate::io::{parse_graph, parse_triangulation};
use crate::lattice::LatticePolygon;
use crate::obstruction::{
    compatible_embeddings, detect_double_heavy, detect_heavy_cycle, detect_sprawling_node, heavy_item,
    heavy_one_loop_family, validate_polygon_level, Catalog, HeavyKind, ObstructionKind,
};
use crate::oracle::{check_abz, realized_certificates, CensusOptions};
use crate::regularity::{is_regular_with, lifting_system, Backend};
use crate::skeleton::skeletonize;
use crate::triangulation::{
    count_triangulations, enumerate_triangulations, enumerate_triangulations_backtracking, Triangulation,
    DEFAULT_POINT_LIMIT,
};

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        format!("criterion {} [{status}] {}: {} ({:.2?})", self.id, self.title, self.detail, self.elapsed)
    }
}

type Check = fn() -> Result<String, String>;

pub const CRITERIA: [(usize, &str, Option<u64>, Check); 9] = [
    (1, "fig1 pipeline", Some(5), fig1_pipeline),
    (2, "fig10 pipeline", Some(30), fig10_pipeline),
    (3, "fig2 rejections", Some(10), fig2_rejections),
    (4, "heavy one-loop family at genus 8 to 10", None, heavy_family),
    (5, "abz property up to genus 3", Some(600), abz_property),
    (6, "betti invariant up to genus 3", None, betti_invariant),
    (7, "enumerator and backend cross-checks", None, cross_checks),
    (8, "genus 3 classifier against census", None, genus_three),
    (9, "double heavy realization on fig1", None, fig1_double_heavy),
];

/// Runs one criterion; a time budget in seconds is part of the verdict.
pub fn run(id: usize) -> Option<CriterionReport> {
    let &(id, title, budget, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(b) = budget.filter(|&b| elapsed > Duration::from_secs(b)) {
        pass = false;
        detail = format!("{detail}; over the {b} s budget");
    }
    Some(CriterionReport { id, title, pass, detail, elapsed })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fig1_pipeline() -> Result<String, String> {
    let t = parse_triangulation(fixtures::FIG1_TRI).map_err(|e| e.to_string())?;
    let p = t.polygon();
    ensure(p.genus() == 6 && p.vertices().len() == 5, || format!("polygon genus {} with {} vertices", p.genus(), p.vertices().len()))?;
    ensure(t.triangles().iter().all(|x| x.is_unimodular()), || "non-unimodular triangle".into())?;
    let ps = skeletonize(&t).map_err(|e| e.to_string())?;
    let s = ps.graph.as_skeleton().ok_or("skeleton is a circle")?;
    ensure(s.genus() == 6 && s.is_planar(), || format!("skeleton genus {}", s.genus()))?;
    let want = parse_graph(fixtures::FIG1_GRAPH).map_err(|e| e.to_string())?;
    ensure(ps.graph.certificate() == want.certificate(), || "certificate differs from the bundled skeleton".into())?;
    let n = detect_double_heavy(s).iter().filter(|m| m.kind == HeavyKind::DoubleTwoLoops).count();
    ensure(n > 0, || "no double heavy cycle with two loops".into())?;
    Ok(format!("{} triangles, skeleton n={} genus 6, {n} double heavy two-loop matches", t.len(), s.vertex_count()))
}

fn fig10_pipeline() -> Result<String, String> {
    let t = parse_triangulation(fixtures::FIG10_TRI).map_err(|e| e.to_string())?;
    let ps = skeletonize(&t).map_err(|e| e.to_string())?;
    let s = ps.graph.as_skeleton().ok_or("skeleton is a circle")?;
    let hit = detect_heavy_cycle(s).into_iter().any(|m| {
        m.kind == HeavyKind::OneLoop && m.g2.genus() == 2 && m.g2.as_skeleton().is_some_and(|g| g.cut_edges().is_empty())
    });
    ensure(hit, || "no one-loop match with a bridgeless genus-2 side".into())?;
    let c = Classifier::new(Catalog::bundled(), vec![fixtures::fig10_polygon()], CensusOptions::default());
    let Verdict::Troplanar(Some(w)) = c.classify(&ps.graph).map_err(|e| e.to_string())? else {
        return Err("not classified troplanar with a witness".into());
    };
    let back = skeletonize(&w.triangulation).map_err(|e| e.to_string())?.graph.certificate();
    ensure(back == ps.graph.certificate(), || "witness does not round-trip".into())?;
    Ok("one-loop match with bridgeless genus-2 side; Troplanar with witness".into())
}

fn fig2_rejections() -> Result<String, String> {
    let c = Classifier::without_corpus(Catalog::bundled());
    let want = [
        ('a', ObstructionKind::HeavyOneLoop),
        ('b', ObstructionKind::HeavyOneLoop),
        ('c', ObstructionKind::HeavyOneLoop),
        ('d', ObstructionKind::HeavyOneLoop),
        ('e', ObstructionKind::DoubleHeavyTwoLoops),
        ('f', ObstructionKind::DoubleHeavyTwoLoops),
        ('g', ObstructionKind::EnveLoopCatalog),
        ('h', ObstructionKind::DoubleHeavyTwoLoops),
    ];
    let mut got = Vec::new();
    for (k, kind) in want {
        let (_, text) = fixtures::FIG2_GRAPHS.iter().find(|(c, _)| *c == k).ok_or("missing fixture")?;
        let g = parse_graph(text).map_err(|e| e.to_string())?;
        let v = c.classify(&g).map_err(|e| e.to_string())?;
        let found = v.obstruction().map(|o| o.kind);
        ensure(found == Some(kind), || format!("graph {k}: {v:?}"))?;
        got.push(format!("{k}:{}", kind.name()));
    }
    Ok(got.join(" "))
}

fn heavy_family() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let fam = heavy_one_loop_family(&mut rng, 20);
    let certs: BTreeSet<String> = fam.iter().map(|c| c.graph.certificate()).collect();
    ensure(fam.len() == 20 && certs.len() == 20, || format!("{} distinct graphs generated", certs.len()))?;
    let rejected = fam
        .par_iter()
        .filter(|c| heavy_item(&c.graph, &compatible_embeddings(&c.graph), HeavyKind::OneLoop).is_some())
        .count();
    let genera: BTreeSet<usize> = fam.iter().map(|c| c.graph.genus()).collect();
    ensure(rejected == 20, || format!("{rejected}/20 rejected"))?;
    Ok(format!("20/20 rejected, genera {genera:?}"))
}

/// Every bundled polygon of genus at most three with at most eleven points.
fn small_polygons() -> Vec<LatticePolygon> {
    (1..=3).flat_map(corpus::bundled).filter(|p| p.lattice_points().len() <= 11).collect()
}

fn all_triangulations(ps: &[LatticePolygon]) -> Result<Vec<Triangulation>, String> {
    let per: Result<Vec<Vec<Triangulation>>, String> = ps
        .par_iter()
        .map(|p| enumerate_triangulations(p, DEFAULT_POINT_LIMIT).map(|s| s.collect()).map_err(|e| e.to_string()))
        .collect();
    Ok(per?.into_iter().flatten().collect())
}

fn abz_property() -> Result<String, String> {
    let ts = all_triangulations(&small_polygons())?;
    let checked: usize = ts.par_iter().map(|t| check_abz(t).checked).sum();
    let bad = ts.par_iter().filter(|t| !check_abz(t).violations.is_empty()).count();
    ensure(bad == 0, || format!("{bad} triangulations violate"))?;
    Ok(format!("{} triangulations, {checked} qualifying triangles, 0 violations", ts.len()))
}

fn betti_invariant() -> Result<String, String> {
    let ts = all_triangulations(&small_polygons())?;
    let bad = ts
        .par_iter()
        .filter(|t| skeletonize(t).map_or(true, |s| s.graph.genus() != t.polygon().interior_lattice_points().len()))
        .count();
    ensure(bad == 0, || format!("{bad} mismatches"))?;
    Ok(format!("{} triangulations, betti number = interior points in all", ts.len()))
}

fn cross_checks() -> Result<String, String> {
    let polys: Vec<LatticePolygon> = (1..=6).flat_map(corpus::bundled).filter(|p| p.lattice_points().len() <= 10).collect();
    let mismatched: Vec<String> = polys
        .par_iter()
        .filter_map(|p| {
            let flip = count_triangulations(p, DEFAULT_POINT_LIMIT).ok()?;
            let bt = enumerate_triangulations_backtracking(p, DEFAULT_POINT_LIMIT).ok()?.len();
            (flip != bt).then(|| format!("{}: {flip} vs {bt}", p.serialize()))
        })
        .collect();
    ensure(mismatched.is_empty(), || format!("counts differ: {}", mismatched.join("; ")))?;
    let ts = all_triangulations(&small_polygons())?;
    let disagree = ts
        .par_iter()
        .filter(|t| {
            let fm = is_regular_with(t, Backend::FourierMotzkin);
            let sx = is_regular_with(t, Backend::Simplex);
            let sys = lifting_system(t);
            fm.is_some() != sx.is_some() || [fm, sx].iter().flatten().any(|h| !sys.is_satisfied_by(h))
        })
        .count();
    ensure(disagree == 0, || format!("{disagree} regularity disagreements"))?;
    Ok(format!("{} polygons counted both ways; {} regularity instances agree", polys.len(), ts.len()))
}

fn genus_three() -> Result<String, String> {
    let realized: BTreeSet<String> = realized_certificates(&corpus::bundled(3), CensusOptions::default()).into_keys().collect();
    let c = Classifier::bundled();
    let mut troplanar = BTreeSet::new();
    let candidates = enumerate_trivalent_graphs(3).map_err(|e| e.to_string())?;
    for s in &candidates {
        let g = Graph::Skeleton(s.clone());
        let cert = g.certificate();
        if !realized.contains(&cert) {
            ensure(detect_sprawling_node(s).is_some(), || format!("{cert} unrealized without a sprawling node"))?;
        }
        if c.classify(&g).map_err(|e| e.to_string())?.is_troplanar() {
            troplanar.insert(cert);
        }
    }
    ensure(troplanar == realized, || {
        format!("classifier {troplanar:?} vs census {realized:?}")
    })?;
    Ok(format!("{} candidates, {} realized, classifier agrees exactly", candidates.len(), realized.len()))
}

fn fig1_double_heavy() -> Result<String, String> {
    let t = fixtures::fig1_triangulation();
    let ps = skeletonize(&t).map_err(|e| e.to_string())?;
    let ms = detect_double_heavy(ps.graph.as_skeleton().ok_or("circle")?);
    ensure(!ms.is_empty(), || "no double heavy match".into())?;
    for m in &ms {
        let r = validate_polygon_level(&t, &ps.graph, m).map_err(|e| e.to_string())?;
        for name in ["interior hull is a unit parallelogram", "three cycles share a vertex"] {
            ensure(r.get(name).is_some_and(|c| c.pass), || format!("{name}: {:?}", r.get(name)))?;
        }
    }
    Ok(format!("{} matches: unit parallelogram, three cycles share a vertex", ms.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_criterion() {
        assert!(run(10).is_none());
    }

    #[test]
    fn report_line_shape() {
        let r = CriterionReport { id: 3, title: "x", pass: true, detail: "ok".into(), elapsed: Duration::ZERO };
        assert!(r.line().starts_with("criterion 3 [PASS] x: ok"));
    }
}
