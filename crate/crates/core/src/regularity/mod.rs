//! Regularity of full triangulations by exact linear feasibility.
//!
//! For an interior segment `{a, b}` with triangles `(a, b, c)` and
//! `(a, b, d)`, unimodularity makes the affine coordinates of `d` with
//! respect to `a, b, c` integers `(la, lb, -1)`. The fold condition "the
//! lift of `d` lies strictly above the plane through the lifts of `a, b, c`"
//! is then `h(d) + h(c) - la h(a) - lb h(b) >= 1`, after scaling.

mod exact;
mod fourier_motzkin;
mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::LatticePoint;
use crate::triangulation::Triangulation;
use fourier_motzkin::Outcome;

/// Which exact solver decides feasibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    FourierMotzkin,
    Simplex,
    /// Fourier–Motzkin for systems with at most [`AUTO_FM_VARIABLES`]
    /// unknowns, simplex otherwise.
    #[default]
    Auto,
}

pub const AUTO_FM_VARIABLES: usize = 6;

/// One fold inequality `sum coeff * h(point) >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldConstraint {
    pub segment: (usize, usize),
    pub terms: Vec<(usize, i64)>,
}

/// The fold inequalities of a triangulation, one per interior segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingSystem {
    pub points: usize,
    pub constraints: Vec<FoldConstraint>,
}

/// Heights on the lattice points, ordered as [`Triangulation::points`].
pub type Heights = Vec<BigRational>;

pub fn lifting_system(t: &Triangulation) -> LiftingSystem {
    let p = t.points();
    let mut constraints = Vec::new();
    for ((a, b), f, s) in t.interior_edges() {
        let c = t.opposite(f, a, b);
        let d = t.opposite(s, a, b);
        // d + c = la * a + lb * b with la + lb = 2.
        let w = p[d].add(p[c]).sub(p[b]).sub(p[b]);
        let dir = p[a].sub(p[b]);
        let la = if dir.x != 0 { w.x / dir.x } else { w.y / dir.y };
        let lb = 2 - la;
        debug_assert_eq!(p[a].x * la + p[b].x * lb, p[c].x + p[d].x);
        debug_assert_eq!(p[a].y * la + p[b].y * lb, p[c].y + p[d].y);
        constraints.push(FoldConstraint { segment: (a, b), terms: vec![(d, 1), (c, 1), (a, -la), (b, -lb)] });
    }
    LiftingSystem { points: p.len(), constraints }
}

impl LiftingSystem {
    /// Residual `sum coeff * h - 1` of each constraint.
    pub fn slacks(&self, h: &[BigRational]) -> Vec<BigRational> {
        self.constraints
            .iter()
            .map(|c| {
                let mut s = -BigRational::one();
                for &(i, k) in &c.terms {
                    s += BigRational::from_integer(BigInt::from(k)) * &h[i];
                }
                s
            })
            .collect()
    }

    pub fn is_satisfied_by(&self, h: &[BigRational]) -> bool {
        h.len() == self.points && self.slacks(h).iter().all(|s| *s >= BigRational::zero())
    }
}

/// Regular iff some heights satisfy every fold inequality; the returned
/// heights have been checked by substitution.
pub fn is_regular(t: &Triangulation) -> Option<Heights> {
    is_regular_with(t, Backend::Auto)
}

pub fn is_regular_with(t: &Triangulation, backend: Backend) -> Option<Heights> {
    let sys = lifting_system(t);
    let h = solve(&sys, gauge(t), backend)?;
    assert!(sys.is_satisfied_by(&h), "solver returned heights violating a fold inequality");
    Some(h)
}

/// The vertices of the first triangle, pinned to height zero.
fn gauge(t: &Triangulation) -> [usize; 3] {
    t.index_triangles().first().copied().unwrap_or([0, 0, 0])
}

fn solve(sys: &LiftingSystem, pinned: [usize; 3], backend: Backend) -> Option<Heights> {
    let free: Vec<usize> = (0..sys.points).filter(|i| !pinned.contains(i)).collect();
    let mut col = vec![usize::MAX; sys.points];
    for (k, &i) in free.iter().enumerate() {
        col[i] = k;
    }
    let nv = free.len();
    let rows: Vec<(Vec<i64>, i64)> = sys
        .constraints
        .iter()
        .map(|c| {
            let mut r = vec![0i64; nv];
            for &(i, k) in &c.terms {
                if col[i] != usize::MAX {
                    r[col[i]] += k;
                }
            }
            (r, 1)
        })
        .collect();
    let use_fm = match backend {
        Backend::FourierMotzkin => true,
        Backend::Simplex => false,
        Backend::Auto => nv <= AUTO_FM_VARIABLES,
    };
    let outcome = if use_fm {
        fourier_motzkin::solve::<i128>(nv, &rows)
            .or_else(|_| fourier_motzkin::solve::<BigInt>(nv, &rows))
    } else {
        simplex::solve::<i128>(nv, &rows).or_else(|_| simplex::solve::<BigInt>(nv, &rows))
    }
    .expect("big integer arithmetic cannot overflow");
    match outcome {
        Outcome::Infeasible => None,
        Outcome::Feasible(x) => {
            let mut h = vec![BigRational::zero(); sys.points];
            for (k, &i) in free.iter().enumerate() {
                h[i] = x[k].clone();
            }
            Some(h)
        }
    }
}

/// Adds the affine function `alpha x + beta y + gamma` to every height.
pub fn add_affine(points: &[LatticePoint], h: &[BigRational], alpha: i64, beta: i64, gamma: i64) -> Heights {
    points
        .iter()
        .zip(h)
        .map(|(p, v)| v + BigRational::from_integer(BigInt::from(alpha * p.x + beta * p.y + gamma)))
        .collect()
}

/// `p/q` text for a height, `p` alone when integral.
pub fn format_height(h: &BigRational) -> String {
    if h.is_integer() {
        h.numer().to_string()
    } else {
        format!("{}/{}", h.numer(), h.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{pt, LatticePolygon};
    use crate::triangulation::enumerate_triangulations;

    fn poly(v: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    #[test]
    fn unit_square_both_regular() {
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        for t in enumerate_triangulations(&sq, 16).unwrap() {
            for b in [Backend::FourierMotzkin, Backend::Simplex] {
                assert!(is_regular_with(&t, b).is_some());
            }
        }
    }

    #[test]
    fn backends_agree_and_gauge_invariance() {
        for v in [vec![(0, 0), (3, 0), (0, 3)], vec![(0, 0), (2, 0), (2, 2), (0, 2)]] {
            let p = poly(&v);
            for t in enumerate_triangulations(&p, 16).unwrap() {
                let fm = is_regular_with(&t, Backend::FourierMotzkin);
                let sx = is_regular_with(&t, Backend::Simplex);
                assert_eq!(fm.is_some(), sx.is_some(), "{}", t.canonical_serialization());
                if let Some(h) = sx {
                    let sys = lifting_system(&t);
                    assert!(sys.is_satisfied_by(&add_affine(t.points(), &h, 3, -7, 5)));
                }
            }
        }
    }

    #[test]
    fn format() {
        assert_eq!(format_height(&BigRational::new(BigInt::from(3), BigInt::from(6))), "1/2");
        assert_eq!(format_height(&BigRational::from_integer(BigInt::from(-4))), "-4");
    }
}
