use troplanar::fixtures::*;
use troplanar::graph::Graph;
use troplanar::skeleton::skeletonize;

#[test]
fn fig1_pipeline() {
    let t = fig1_triangulation();
    assert_eq!(t.polygon().genus(), 6);
    assert_eq!(t.len(), 20);
    let d = t.dual_graph();
    assert_eq!(d.arcs.len(), 25);
    let s = skeletonize(&t).unwrap();
    let Graph::Skeleton(k) = &s.graph else { panic!() };
    assert_eq!((k.vertex_count(), k.edge_count(), k.genus()), (10, 15, 6));
    assert_eq!(s.graph.certificate(), fig1_skeleton().certificate());
    assert_eq!(t.split_edges().iter().filter(|e| e.is_nontrivial()).count(), 3);
}

#[test]
fn fig10_pipeline() {
    let t = fig10_triangulation();
    assert_eq!(t.polygon().genus(), 6);
    let s = skeletonize(&t).unwrap();
    assert_eq!(s.graph.certificate(), fig10_skeleton().certificate());
    assert_eq!(t.split_edges().iter().filter(|e| e.is_nontrivial()).count(), 2);
}
