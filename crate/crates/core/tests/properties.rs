use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use troplanar::corpus;
use troplanar::graph::{enumerate_trivalent_planar, Graph};
use troplanar::io::{parse_graph, parse_triangulation, write_graph, write_triangulation};
use troplanar::lattice::{orient, LatticePolygon, UnimodularMap};
use troplanar::regularity::{add_affine, is_regular, lifting_system};
use troplanar::skeleton::skeletonize;
use troplanar::triangulation::{placing_triangulation, Triangulation};

fn corpus_polygon(genus: usize, pick: usize) -> LatticePolygon {
    let v = corpus::bundled(genus);
    v[pick % v.len()].clone()
}

/// A random walk of flips from the placing triangulation.
fn random_triangulation(p: &LatticePolygon, seed: u64, steps: usize) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = placing_triangulation(p);
    for _ in 0..steps {
        let edges: Vec<(usize, usize)> = t.interior_edges().map(|(e, _, _)| e).collect();
        if let Some(&(i, j)) = edges.choose(&mut rng) {
            if let Some(f) = t.flip(i, j) {
                t = f;
            }
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_invariant(genus in 1usize..=4, pick in 0usize..200, seed in any::<u64>()) {
        let p = corpus_polygon(genus, pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = p.transform(&UnimodularMap::random(&mut rng, 6));
        prop_assert_eq!(q.normal_form(), p.normal_form());
        prop_assert_eq!(q.genus(), p.genus());
    }

    #[test]
    fn pick_formula(genus in 1usize..=6, pick in 0usize..200) {
        let p = corpus_polygon(genus, pick);
        let (i, b) = (p.interior_lattice_points().len() as i64, p.boundary_lattice_points().len() as i64);
        prop_assert_eq!(p.doubled_area(), 2 * i + b - 2);
    }

    #[test]
    fn skeleton_genus_is_interior_count(genus in 1usize..=6, pick in 0usize..200, seed in any::<u64>()) {
        let p = corpus_polygon(genus, pick);
        let t = random_triangulation(&p, seed, 40);
        let s = skeletonize(&t).unwrap();
        prop_assert_eq!(s.graph.genus(), genus);
        prop_assert!(s.graph.is_planar());
    }

    #[test]
    fn triangulation_round_trip(genus in 1usize..=4, pick in 0usize..200, seed in any::<u64>()) {
        let t = random_triangulation(&corpus_polygon(genus, pick), seed, 20);
        let back = parse_triangulation(&write_triangulation(&t)).unwrap();
        prop_assert_eq!(back.canonical_serialization(), t.canonical_serialization());
    }

    #[test]
    fn heights_are_affine_gauge_invariant(pick in 0usize..200, seed in any::<u64>(), a in -5i64..5, b in -5i64..5, c in -5i64..5) {
        let t = random_triangulation(&corpus_polygon(2, pick), seed, 20);
        if let Some(h) = is_regular(&t) {
            let sys = lifting_system(&t);
            prop_assert!(sys.is_satisfied_by(&h));
            let h2: Vec<BigRational> = add_affine(t.points(), &h, a, b, c);
            prop_assert!(sys.is_satisfied_by(&h2));
        }
    }

    #[test]
    fn certificate_ignores_labels(genus in 2usize..=5, pick in 0usize..500, seed in any::<u64>()) {
        let gs = enumerate_trivalent_planar(genus).unwrap();
        let g = &gs[pick % gs.len()];
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(g.permuted(&perm).certificate(), g.certificate());
        let gr = Graph::Skeleton(g.clone());
        prop_assert_eq!(parse_graph(&write_graph(&gr)).unwrap().certificate(), gr.certificate());
    }

    #[test]
    fn regular_heights_lift_convexly(pick in 0usize..200, seed in any::<u64>()) {
        let t = random_triangulation(&corpus_polygon(3, pick), seed, 30);
        if let Some(h) = is_regular(&t) {
            prop_assert!(strictly_convex_across_edges(&t, &h));
        }
    }
}

/// Across every interior edge the far vertex lies strictly above the affine
/// extension of the near triangle, by barycentric interpolation.
fn strictly_convex_across_edges(t: &Triangulation, h: &[BigRational]) -> bool {
    let p = t.points();
    let tris = t.index_triangles();
    t.interior_edges().all(|((i, j), t1, t2)| {
        let k = *tris[t1].iter().find(|&&v| v != i && v != j).unwrap();
        let d = *tris[t2].iter().find(|&&v| v != i && v != j).unwrap();
        let whole = BigRational::from_integer(orient(p[i], p[j], p[k]).into());
        let lam = |a: usize, b: usize, c: usize| BigRational::from_integer(orient(p[a], p[b], p[c]).into()) / &whole;
        let f = lam(d, j, k) * &h[i] + lam(i, d, k) * &h[j] + lam(i, j, d) * &h[k];
        h[d] > f
    })
}
