//! Phase-one simplex for `A x >= b` with `b >= 0`, on a fraction-free
//! integer tableau.
//!
//! Columns: `u` (nv), `v` (nv) with `x = u - v`, surplus `s` (m), artificial
//! `a` (m); rows `A u - A v - s + a = b`. The tableau holds integers `T` with
//! true entries `T / d`, where `d` is the previous pivot; integer pivoting
//! keeps every division exact. Bland's rule guarantees termination.

use num_rational::BigRational;
use num_traits::Zero;

use super::exact::{Exact, Overflow};
use super::fourier_motzkin::Outcome;

pub(crate) fn solve<T: Exact>(nv: usize, input: &[(Vec<i64>, i64)]) -> Result<Outcome, Overflow> {
    let m = input.len();
    if m == 0 {
        return Ok(Outcome::Feasible(vec![BigRational::zero(); nv]));
    }
    let cols = 2 * nv + 2 * m;
    let rhs = cols;
    let width = cols + 1;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for (i, (c, b)) in input.iter().enumerate() {
        debug_assert!(*b >= 0);
        let mut row = vec![T::zero(); width];
        for j in 0..nv {
            row[j] = T::from_i64(c[j]);
            row[nv + j] = T::from_i64(-c[j]);
        }
        row[2 * nv + i] = T::from_i64(-1);
        row[2 * nv + m + i] = T::from_i64(1);
        row[rhs] = T::from_i64(*b);
        t.push(row);
    }
    // Objective: minimize the sum of artificials, expressed in nonbasic terms.
    let mut obj = vec![T::zero(); width];
    for row in &t {
        for j in 0..2 * nv + m {
            obj[j] = obj[j].sub(&row[j])?;
        }
        obj[rhs] = obj[rhs].sub(&row[rhs])?;
    }
    t.push(obj);
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * nv + m + i).collect();
    let mut d = T::from_i64(1);
    loop {
        let Some(enter) = (0..cols).find(|&j| t[m][j].signum() < 0) else { break };
        // Ratio test, ties to the smallest basic variable.
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][enter].signum() <= 0 {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(k) => {
                    let lhs = t[i][rhs].mul(&t[k][enter])?;
                    let rhs_k = t[k][rhs].mul(&t[i][enter])?;
                    if lhs < rhs_k || (lhs == rhs_k && basis[i] < basis[k]) {
                        Some(i)
                    } else {
                        Some(k)
                    }
                }
            };
        }
        let r = leave.expect("phase-one objective is bounded below");
        let p = t[r][enter].clone();
        for i in 0..=m {
            if i == r {
                continue;
            }
            let f = t[i][enter].clone();
            for j in 0..width {
                let v = p.mul(&t[i][j])?.sub(&f.mul(&t[r][j])?)?;
                t[i][j] = v.div_exact(&d);
            }
        }
        // Non-pivot entries of row r keep their numerators; only the
        // denominator changes.
        d = p;
        basis[r] = enter;
    }
    if !t[m][rhs].is_zero() {
        return Ok(Outcome::Infeasible);
    }
    let mut x = vec![BigRational::zero(); nv];
    let den = d.to_big();
    for (i, &b) in basis.iter().enumerate() {
        let val = BigRational::new(t[i][rhs].to_big(), den.clone());
        if b < nv {
            x[b] += val;
        } else if b < 2 * nv {
            x[b - nv] -= val;
        }
    }
    Ok(Outcome::Feasible(x))
}
