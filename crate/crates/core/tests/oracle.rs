use std::collections::BTreeSet;

use rayon::prelude::*;

use troplanar::classify::{Classifier, Verdict};
use troplanar::corpus;
use troplanar::fixtures;
use troplanar::graph::{enumerate_trivalent_planar, Graph};
use troplanar::io::parse_polygon;
use troplanar::lattice::LatticePolygon;
use troplanar::obstruction::{detect_double_heavy, validate_polygon_level, HeavyKind};
use troplanar::oracle::{census, check_abz, check_structural_conditions, find_witness, realized_certificates, CensusOptions};
use troplanar::regularity::{is_regular_with, Backend};
use troplanar::skeleton::skeletonize;
use troplanar::triangulation::{enumerate_triangulations, Triangulation, DEFAULT_POINT_LIMIT};

const DOUBLE_HEAVY_SIDE_CHECKS: [&str; 6] = [
    "T and T1 share an edge through z1",
    "T and T2 share an edge through z2",
    "both shared edges end at the same w",
    "w is a vertex of T1 and T2",
    "split edges meet at w",
    "w on the boundary",
];

fn every_triangulation(polys: &[LatticePolygon]) -> Vec<Triangulation> {
    polys.par_iter().flat_map_iter(|p| enumerate_triangulations(p, DEFAULT_POINT_LIMIT).unwrap()).collect()
}

#[test]
fn census_is_deterministic() {
    let polys: Vec<_> = corpus::bundled(2).into_iter().take(20).collect();
    let a = census(&polys, CensusOptions::default());
    let b = census(&polys, CensusOptions::default());
    assert_eq!(a, b);
    let all = census(&polys, CensusOptions { regular_only: false, ..Default::default() });
    assert!(a.records.is_subset(&all.records));
    let nfs: BTreeSet<String> = polys.iter().map(|p| p.normal_form().serialize()).collect();
    for r in &all.records {
        assert!(nfs.contains(&r.polygon_normal_form));
        assert_eq!(r.to_line().split('\t').count(), 4);
    }
}

#[test]
fn fig1_census_contains_fig1_skeleton() {
    let c = realized_certificates(&[fixtures::fig1_polygon()], CensusOptions::default());
    assert!(c.contains_key(&fixtures::fig1_skeleton().certificate()));
}

#[test]
fn abz_holds_on_genus_four() {
    let ts = every_triangulation(&corpus::bundled(4));
    assert!(ts.par_iter().all(|t| check_abz(t).violations.is_empty()));
}

#[test]
fn genus_two_census_has_no_heavy_cycles() {
    for t in every_triangulation(&corpus::bundled(2)) {
        assert!(check_structural_conditions(&t, &skeletonize(&t).unwrap()).is_empty());
    }
}

/// Heavy-cycle checks hold on every triangulation of genus four and five,
/// and the double heavy realization conclusions on all but a known family.
#[test]
fn structural_checks_on_genus_four_and_five() {
    for genus in [4, 5] {
        let ts = every_triangulation(&corpus::bundled(genus));
        let reports: Vec<_> = ts
            .par_iter()
            .flat_map_iter(|t| check_structural_conditions(t, &skeletonize(t).unwrap()))
            .collect();
        assert!(!reports.is_empty());
        for (m, r) in &reports {
            let failing: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
            if m.kind == HeavyKind::DoubleTwoLoops {
                assert!(failing.iter().all(|n| DOUBLE_HEAVY_SIDE_CHECKS.contains(n)), "{failing:?}");
            } else {
                assert!(failing.is_empty(), "{:?} {failing:?}", m.kind);
            }
        }
    }
}

/// A regular triangulation where `T` and `T1` meet only at `z1`, with a
/// triangle on a polygon edge between them.
#[test]
fn double_heavy_triangles_need_not_share_an_edge() {
    let p = parse_polygon("polygon\nv 0 0\nv 1 0\nv 2 2\nv 3 7\nv 3 8\nv 0 1\n").unwrap();
    let want = "n10:0-1,0-2,0-3,1-2,1-3,2-4,3-6,4-5,4-7,5-6,5-7,6-8,7-9,8-8,9-9";
    let (_, t) = realized_certificates(&[p], CensusOptions::default()).remove(want).unwrap();
    assert!(is_regular_with(&t, Backend::FourierMotzkin).is_some());
    assert!(is_regular_with(&t, Backend::Simplex).is_some());
    let ps = skeletonize(&t).unwrap();
    let faces: BTreeSet<BTreeSet<usize>> = ps.cycle_map.values().map(|es| es.iter().copied().collect()).collect();
    let failing: Vec<_> = detect_double_heavy(ps.graph.as_skeleton().unwrap())
        .into_iter()
        .filter(|m| m.cycles.iter().all(|c| faces.contains(&c.edge_set())))
        .map(|m| validate_polygon_level(&t, &ps.graph, &m).unwrap())
        .filter(|r| !r.get("T and T1 share an edge through z1").unwrap().pass)
        .collect();
    assert!(!failing.is_empty());
    for r in failing {
        assert!(r.get("interior hull is a unit parallelogram").unwrap().pass);
        assert!(r.get("heavy component genus").unwrap().pass);
    }
}

/// Every bundled genus-six triangulation with at most twelve lattice points
/// has a unit-parallelogram heavy interior for each double heavy match.
#[test]
fn genus_six_parallelogram() {
    let polys: Vec<_> = corpus::bundled(6).into_iter().filter(|p| p.lattice_points().len() <= 12).collect();
    let ts = every_triangulation(&polys);
    let n: usize = ts
        .par_iter()
        .map(|t| {
            let rs = check_structural_conditions(t, &skeletonize(t).unwrap());
            for (m, r) in &rs {
                if m.kind == HeavyKind::DoubleTwoLoops {
                    assert!(r.get("interior hull is a unit parallelogram").unwrap().pass);
                }
            }
            rs.iter().filter(|(m, _)| m.kind == HeavyKind::DoubleTwoLoops).count()
        })
        .sum();
    assert!(n > 0);
}

#[test]
fn fig2_g_has_no_witness() {
    let g = fixtures::fig2_graph('g');
    assert!(find_witness(&g, &corpus::bundled(6), CensusOptions::default()).is_none());
}

/// Classifier and census agree on every planar graph of genus three to
/// five; at genus four the corpus is not exhaustive, so agreement there is
/// evidence rather than proof.
#[test]
fn classifier_matches_census() {
    let c = Classifier::bundled();
    for (genus, troplanar, obstructed) in [(3, 4, 1), (4, 13, 3), (5, 38, 29)] {
        let realized: BTreeSet<&String> = c.realized(genus).keys().collect();
        let gs: Vec<Graph> = enumerate_trivalent_planar(genus).unwrap().into_iter().map(Graph::Skeleton).collect();
        let vs = c.classify_all(&gs);
        let mut counts = (0, 0);
        for (g, v) in gs.iter().zip(vs) {
            match v.unwrap() {
                Verdict::Troplanar(Some(w)) => {
                    counts.0 += 1;
                    assert_eq!(skeletonize(&w.triangulation).unwrap().graph.certificate(), g.certificate());
                }
                Verdict::NotTroplanar(_) => {
                    counts.1 += 1;
                    assert!(!realized.contains(&g.certificate()));
                }
                v => panic!("genus {genus}: {v:?}"),
            }
        }
        println!("genus {genus}: {} troplanar, {} obstructed", counts.0, counts.1);
        assert_eq!(counts, (troplanar, obstructed), "genus {genus}");
        assert_eq!(realized.len(), troplanar);
    }
}
