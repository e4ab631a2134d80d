//! Fourier–Motzkin elimination for `A x >= b` over the rationals.
//!
//! Each derived row remembers which original rows it combines. After `k`
//! eliminations a row built from more than `k + 1` originals is redundant
//! (Chernikov's rule) and is dropped; together with gcd normalization and
//! deduplication this keeps the systems from lifting small enough.

use std::collections::HashMap;
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::Zero;

use super::exact::{Exact, Overflow};

#[derive(Debug, Clone)]
struct Row<T> {
    coeffs: Vec<T>,
    rhs: T,
    origin: Vec<u64>,
}

fn origin_len(o: &[u64]) -> usize {
    o.iter().map(|w| w.count_ones() as usize).sum()
}

fn normalize<T: Exact>(r: &mut Row<T>) {
    let mut g = r.rhs.abs();
    for c in &r.coeffs {
        g = g.gcd(c);
    }
    if !g.is_zero() && g != T::from_i64(1) {
        for c in &mut r.coeffs {
            *c = c.div_exact(&g);
        }
        r.rhs = r.rhs.div_exact(&g);
    }
}

pub(crate) enum Outcome {
    Feasible(Vec<BigRational>),
    Infeasible,
}

/// Solves `rows . x >= rhs` for `nv` variables. Returns a witness if
/// feasible.
pub(crate) fn solve<T: Exact + Hash>(
    nv: usize,
    input: &[(Vec<i64>, i64)],
) -> Result<Outcome, Overflow> {
    let words = input.len().div_ceil(64).max(1);
    let mut rows: Vec<Row<T>> = input
        .iter()
        .enumerate()
        .map(|(i, (c, b))| {
            let mut origin = vec![0u64; words];
            origin[i / 64] |= 1 << (i % 64);
            Row { coeffs: c.iter().map(|&v| T::from_i64(v)).collect(), rhs: T::from_i64(*b), origin }
        })
        .collect();
    let mut remaining: Vec<usize> = (0..nv).collect();
    // For back-substitution: (variable, rows mentioning it before elimination).
    let mut stages: Vec<(usize, Vec<Row<T>>)> = Vec::new();
    let mut eliminated = 0;
    while !remaining.is_empty() {
        // Cheapest variable: fewest new rows.
        let (pos, &x) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &x)| {
                let p = rows.iter().filter(|r| r.coeffs[x].signum() > 0).count();
                let n = rows.iter().filter(|r| r.coeffs[x].signum() < 0).count();
                (p * n) as isize - (p + n) as isize
            })
            .unwrap();
        remaining.swap_remove(pos);
        eliminated += 1;
        let (mut pos_rows, mut neg_rows, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.coeffs[x].signum() {
                1 => pos_rows.push(r),
                -1 => neg_rows.push(r),
                _ => rest.push(r),
            }
        }
        let mut next: HashMap<Vec<T>, Row<T>> = HashMap::new();
        let push = |r: Row<T>, next: &mut HashMap<Vec<T>, Row<T>>| match next.get_mut(&r.coeffs) {
            Some(old) if old.rhs >= r.rhs => {}
            Some(old) => *old = r,
            None => {
                next.insert(r.coeffs.clone(), r);
            }
        };
        for r in rest {
            push(r, &mut next);
        }
        for p in &pos_rows {
            for q in &neg_rows {
                let origin: Vec<u64> = p.origin.iter().zip(&q.origin).map(|(a, b)| a | b).collect();
                if origin_len(&origin) > eliminated + 1 {
                    continue;
                }
                let (a, b) = (q.coeffs[x].abs(), p.coeffs[x].clone());
                let mut coeffs = Vec::with_capacity(nv);
                for j in 0..nv {
                    coeffs.push(p.coeffs[j].mul(&a)?.add(&q.coeffs[j].mul(&b)?)?);
                }
                let rhs = p.rhs.mul(&a)?.add(&q.rhs.mul(&b)?)?;
                let mut r = Row { coeffs, rhs, origin };
                normalize(&mut r);
                if r.coeffs.iter().all(Exact::is_zero) {
                    if r.rhs.signum() > 0 {
                        return Ok(Outcome::Infeasible);
                    }
                    continue;
                }
                push(r, &mut next);
            }
        }
        let mut stage = pos_rows;
        stage.extend(neg_rows);
        stages.push((x, stage));
        rows = next.into_values().collect();
        if rows.iter().any(|r| r.coeffs.iter().all(Exact::is_zero) && r.rhs.signum() > 0) {
            return Ok(Outcome::Infeasible);
        }
    }
    // Back-substitute in reverse elimination order.
    let mut value: Vec<BigRational> = vec![BigRational::zero(); nv];
    for (x, stage) in stages.iter().rev() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in stage {
            let mut rest = BigRational::zero();
            for (j, c) in r.coeffs.iter().enumerate() {
                if j != *x && !Exact::is_zero(c) {
                    rest += BigRational::from_integer(c.to_big()) * &value[j];
                }
            }
            let c = BigRational::from_integer(r.coeffs[*x].to_big());
            let bound = (BigRational::from_integer(r.rhs.to_big()) - rest) / &c;
            if r.coeffs[*x].signum() > 0 {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        value[*x] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => BigRational::zero(),
        };
    }
    Ok(Outcome::Feasible(value))
}
